import numpy as np
import pytest

from bgg import linalg
from bgg.complexes import EComplex, ExtMatrix, FreeEModule
from bgg.errors import InputError, MathPreconditionError, SupportMeetsCenterError
from bgg.exterior import ExtElement
from bgg.fields import default_field
from bgg.geometry import (SubspaceSpec, certify_sheaf, fiber_rank,
                          hom_annihilator, local_pd, probe_degeneracy, project)
from bgg.tate import tate_from_differential, tate_from_presentation
from bgg.zoo import (bott_line_bundle, horrocks_mumford, line_bundle,
                     point_module, two_point_scheme)

F = default_field()


@pytest.fixture(scope="module")
def o1_window():
    return tate_from_presentation(line_bundle(2, F, 1), (-4, 3))


@pytest.fixture(scope="module")
def point_window():
    return tate_from_presentation(point_module(2, F), (-3, 3))


@pytest.fixture(scope="module")
def hm_window():
    d0, _ = horrocks_mumford(F)
    return tate_from_differential(d0, left=2, right=2)


def test_line_bundle_fibers_are_one(o1_window):
    rng = np.random.default_rng(11)
    for _ in range(6):
        pt = SubspaceSpec.random_point(F, 2, rng)
        assert fiber_rank(o1_window, pt, 0) == 1
        assert local_pd(o1_window, pt, 0) == 0


def test_fiber_probe_position_independence(o1_window, point_window):
    pt = SubspaceSpec.point(F, 2, [1, 2, 3])
    for a in (-2, -1, 0, 1):
        assert fiber_rank(o1_window, pt, a) == 1
    on = SubspaceSpec.point(F, 2, [1, 0, 0])
    for a in (-1, 0, 1):
        assert fiber_rank(point_window, on, a) == 1
        assert local_pd(point_window, on, a) == 2


def test_point_sheaf_fibers(point_window):
    on = SubspaceSpec.point(F, 2, [1, 0, 0])
    off = SubspaceSpec.point(F, 2, [0, 1, 1])
    assert fiber_rank(point_window, on) == 1
    assert local_pd(point_window, on) == 2    # Koszul length = Auslander-Buchsbaum
    assert fiber_rank(point_window, off) == 0
    assert local_pd(point_window, off) == 0


def test_hm_fiber_rank(hm_window):
    pt = SubspaceSpec.point(F, 4, [1, 0, 0, 0, 0])
    assert fiber_rank(hm_window, pt, 0) == 2
    assert local_pd(hm_window, pt, 0) == 0


def test_full_space_sub_is_identity(point_window):
    cx = hom_annihilator(point_window, SubspaceSpec(F, 2, []))
    assert cx is point_window.complex


def test_restriction_consistency_prop_6_4():
    # restrict O(d) on P^2 to the line {x_0 = 0}: the homology bigrades of
    # the annihilator complex reproduce the table of O_{P^1}(d)
    for d in (0, 1, -2):
        T = tate_from_presentation(line_bundle(2, F, d), (-d - 5, -d + 4))
        sub = SubspaceSpec(F, 2, [[0, 1, 0], [0, 0, 1]])
        cx = hom_annihilator(T, sub)
        for p in (0, 1):
            for q in range(-3 - d, 4 - d):
                s = p + q
                if not (cx.lo < s < cx.hi):
                    continue
                assert cx.homology_dim(s, -q) == bott_line_bundle(1, d, p, q), (p, q)


def _slow_annihilator_homology(T, sub, s, m):
    """Direct degreewise annihilator computation (no coordinate change):
    the subspace ann(θ's) in each term, with the restricted differentials."""
    f = T.field

    def ann_basis(p, m):
        term = T.term(p)
        if term.dim(m) == 0:
            return linalg.zeros(f, 0, 0), []
        stacked = []
        for theta in sub.thetas:
            A = linalg.zeros(f, term.dim(m + 1), term.dim(m))
            for alpha, c in enumerate(theta):
                if f.is_zero(c):
                    continue
                act = term.act(f, alpha, m)
                A = (A + act * c) % f.p
            stacked.append(A)
        S = np.concatenate(stacked, axis=0)
        return linalg.kernel_basis(f, S)

    Ks, coords_s = ann_basis(s, m)
    dim = Ks.shape[0]
    if dim == 0:
        return 0
    # outgoing rank
    D = T.differential(s).realize(m)
    img = linalg.mat_mul(f, Ks, D.T)
    r_out = linalg.rank(f, img)
    # incoming rank: image of ann at s-1 inside ann at s, as vectors
    Kin, _ = ann_basis(s - 1, m)
    if Kin.shape[0]:
        Din = T.differential(s - 1).realize(m)
        img_in = linalg.mat_mul(f, Kin, Din.T)
        r_in = linalg.rank(f, img_in)
    else:
        r_in = 0
    return dim - r_out - r_in


def test_fast_annihilator_matches_direct(point_window, hm_window):
    rng = np.random.default_rng(5)
    for T, d in ((point_window, 1), (point_window, 2), (hm_window, 1), (hm_window, 4)):
        sub = SubspaceSpec.random(F, T.v, d, rng)
        cx = hom_annihilator(T, sub)
        for s in range(T.lo + 1, T.hi):
            for m in cx.terms[s].support():
                assert cx.homology_dim(s, m) == \
                    _slow_annihilator_homology(T, sub, s, m), (s, m)


def test_probe_degeneracy_hm(hm_window):
    sub = SubspaceSpec.random(F, 4, 4, np.random.default_rng(9))
    rep = probe_degeneracy(hm_window, sub, a=0, samples=8,
                           rng=np.random.default_rng(10))
    assert rep.pure and rep.rank == 2
    assert all(pd == 0 for pd in rep.pds)
    assert "codim >= 4" in rep.verdict()


def test_probe_detects_nonpure(point_window):
    # U_0 whose projective span passes through the support point (1:0:0):
    # the basis-direction sample at e_0 hits the point and shows pd = 2
    sub = SubspaceSpec(F, 2, [[1, 0, 0], [0, 1, 0]])
    rep = probe_degeneracy(point_window, sub, a=0, samples=6,
                           rng=np.random.default_rng(3))
    assert not rep.pure
    assert 2 in rep.pds


def test_probe_codim_zero_samples_points(o1_window):
    rep = probe_degeneracy(o1_window, SubspaceSpec(F, 2, []), a=0, samples=5,
                           rng=np.random.default_rng(4))
    assert rep.pure and rep.rank == 1


def test_certify_hm():
    d0, dm1 = horrocks_mumford(F)
    v = certify_sheaf(dm1, d0, a=0, l=4, samples=6, rng=np.random.default_rng(0))
    assert v.ok and v.rank == 2 and v.torsion_free
    assert all(p == (2, 0) for p in v.sample_profiles)


def test_certify_rejects_non_complex():
    v = 2
    A, B, C = (FreeEModule(v, (g,)) for g in (2, 1, 0))
    d1 = ExtMatrix(F, A, B, {(0, 0): ExtElement.gen(v, F, 0)})
    d2 = ExtMatrix(F, B, C, {(0, 0): ExtElement.gen(v, F, 1)})
    with pytest.raises(InputError):
        certify_sheaf(d1, d2, a=0, l=1)


def test_certify_rejects_middle_homology():
    # zero maps around a nonzero middle term: middle exactness fails
    v = 2
    A, B, C = FreeEModule(v, ()), FreeEModule(v, (0,)), FreeEModule(v, ())
    d1 = ExtMatrix.zero(F, A, B)
    d2 = ExtMatrix.zero(F, B, C)
    with pytest.raises(MathPreconditionError):
        certify_sheaf(d1, d2, a=0, l=1)


def test_project_two_points_to_p1():
    T = tate_from_presentation(two_point_scheme(F), (-3, 4))
    P = project(T, SubspaceSpec(F, 2, [[0, 0, 1]]))
    assert P.v == 1
    tab = P.table()
    assert all(tab.h(0, n) == 2 for n in range(-3, 4))
    assert all(tab.h(1, n) == 0 for n in range(-4, 3))


def test_project_point_from_p3():
    T = tate_from_presentation(point_module(3, F), (-3, 3))
    P = project(T, SubspaceSpec(F, 3, [[0, 0, 0, 1]]))
    assert P.v == 2
    tab = P.table()
    assert all(tab.h(0, n) == 1 for n in range(-3, 3))


def test_project_rejects_center_in_support():
    T = tate_from_presentation(line_bundle(2, F, 0), (-3, 3))
    with pytest.raises(SupportMeetsCenterError):
        project(T, SubspaceSpec(F, 2, [[0, 0, 1]]))


def test_project_commutes_with_dual_on_tables():
    # projecting and dualizing commute up to the relative twist by the
    # codimension d of the center (dualizing sheaves O(-v-1) vs O(-u-1))
    T = tate_from_presentation(two_point_scheme(F), (-4, 4))
    sub = SubspaceSpec(F, 2, [[0, 0, 1]])
    d = sub.codim
    A = project(T, sub).dual()
    B = project(T.dual(), sub)
    assert (A.lo, A.hi) == (B.lo, B.hi)
    for p in range(A.lo, A.hi + 1):
        assert {b - d: m for b, m in A.twists(p).items()} == dict(B.twists(p))
