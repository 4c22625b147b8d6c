import numpy as np
import pytest

from bgg.complexes import EComplex, ExtMatrix, FreeEModule
from bgg.errors import StartTooSmallError, WindowInsufficientError
from bgg.exterior import ExtElement
from bgg.fields import RationalField, default_field
from bgg.tate import tate_from_differential, tate_from_presentation
from bgg.zoo import bott_line_bundle, line_bundle, point_module

F = default_field()


def honest_recheck(T):
    """Re-verify acyclicity/minimality with a fresh rank cache (no seeds)."""
    cx = EComplex(T.field, T.v, T.complex.terms, T.complex.diffs)
    assert cx.dd_is_zero()
    assert cx.is_minimal()
    assert cx.check_acyclic() == {}


@pytest.mark.parametrize("v,d", [(1, 0), (1, 2), (2, 0), (2, -1), (3, 1)])
def test_line_bundle_tables_match_bott(v, d):
    lo, hi = -d - v - 2, -d + 3
    T = tate_from_presentation(line_bundle(v, F, d), (lo, hi))
    tab = T.table()
    for i in range(v + 1):
        for n in range(lo - v - 1, hi + 2):
            if tab.known(i, n):
                assert tab.h(i, n) == bott_line_bundle(v, d, i, n), (i, n)
    assert tab.regularity() == -d
    honest_recheck(T)


def test_point_module_table():
    T = tate_from_presentation(point_module(2, F), (-4, 3))
    for p in range(-4, 4):
        assert dict(T.twists(p)) == {p: 1}   # T^p = ω_E(p)
    tab = T.table()
    assert all(tab.h(0, n) == 1 for n in range(-4, 4))
    assert all(tab.h(i, n) == 0 for i in (1, 2) for n in range(-4, 2))
    # column sums are constantly 1 (χ ≡ 1, single row)
    assert all(tab.euler(n) == 1 for n in range(-4, 2))
    honest_recheck(T)


def test_point_from_differential_matches_presentation():
    # d: ω_E(0) --e_0--> ω_E(1) over v=2 completes to the point window
    v = 2
    src = FreeEModule(v, (-v - 1,))
    tgt = FreeEModule(v, (-v - 2,))
    d = ExtMatrix(F, src, tgt, {(0, 0): ExtElement.gen(v, F, 0)})
    T = tate_from_differential(d, left=3, right=2)
    Tp = tate_from_presentation(point_module(2, F), (-3, 3))
    for p in range(-3, 4):
        assert T.twists(p) == Tp.twists(p)
    honest_recheck(T)


def test_start_independence_explicit():
    pres = line_bundle(2, F, -1)
    T1 = tate_from_presentation(pres, (-4, 3), start=2)
    T2 = tate_from_presentation(pres, (-4, 3), start=5)
    for p in range(-4, 3):
        assert T1.twists(p) == T2.twists(p)


def test_start_too_small_is_reported():
    # the point module strand is not exact at positions < 0
    with pytest.raises(StartTooSmallError):
        tate_from_presentation(point_module(2, F), (-3, 3), start=-2)


def test_purity_beyond_regularity():
    T = tate_from_presentation(line_bundle(2, F, -2), (-3, 5))
    reg = T.table().regularity()
    assert reg == 2
    for p in range(reg, T.hi + 1):
        tw = T.twists(p)
        assert set(tw) == {p}


def test_dual_reflection_and_involution():
    T = tate_from_presentation(line_bundle(2, F, 0), (-4, 4))
    D = T.dual()
    t, td = T.table(), D.table()
    for i in range(3):
        for n in range(-8, 6):
            if t.known(i, n) and td.known(2 - i, -n - 3):
                assert t.h(i, n) == td.h(2 - i, -n - 3)
    DD = D.dual()
    for p in range(T.lo, T.hi + 1):
        assert DD.twists(p) == T.twists(p)
    honest_recheck(D)


def test_unknown_cells_are_none_not_zero():
    T = tate_from_presentation(line_bundle(2, F, 0), (-3, 2))
    tab = T.table()
    assert tab.h(0, 3) is None
    assert tab.h(2, -7) is None
    assert tab.h(0, 2) == 6


def test_regularity_insufficient_window():
    # a window entirely left of the regularity has no clean column
    T = tate_from_presentation(line_bundle(2, F, -4), (-2, 3))
    with pytest.raises(WindowInsufficientError):
        T.table().regularity()


def test_rational_field_agrees_with_prime():
    q = RationalField()
    Tq = tate_from_presentation(point_module(2, q), (-2, 2))
    Tp = tate_from_presentation(point_module(2, F), (-2, 2))
    for p in range(-2, 3):
        assert Tq.twists(p) == Tp.twists(p)
