"""Built-in constructions and independent oracles: the Horrocks-Mumford
differentials, line bundles, point and curve modules, twisted differentials
Ω^p(p) via Koszul truncation, and the closed-form cohomology oracles
(Bott/Serre line-bundle formula, Schur-bundle formula with the Weyl
dimension product)."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .complexes import ExtMatrix, FreeEModule
from .errors import InputError
from .exterior import ExtElement
from .symmetric import SPolynomial, SPresentation


def _wedge2(v, field, i, j):
    """e_i ∧ e_j as an ExtElement (i, j distinct)."""
    return ExtElement.gen(v, field, i).wedge(ExtElement.gen(v, field, j))


def horrocks_mumford(field):
    """The two quadratic differentials of the Horrocks-Mumford window on P^4:

        ω_E(-4)^5 --d^{-1}--> ω_E(-2)^2 --d^0--> ω_E^5,

    with d^0 the 5x2 matrix of cyclic wedge pairs and d^{-1} its companion
    (d^0 ∘ d^{-1} = 0).  Returns (d0, dm1)."""
    v = 4
    w = lambda i, j: _wedge2(v, field, i, j)
    src0 = FreeEModule(v, (-3, -3))            # ω_E(-2)^2
    tgt0 = FreeEModule(v, (-5,) * 5)           # ω_E(0)^5
    rows0 = [(w(0, 1), w(2, 4)),
             (w(1, 2), w(3, 0)),
             (w(2, 3), w(4, 1)),
             (w(3, 4), w(0, 2)),
             (w(4, 0), w(1, 3))]
    d0 = ExtMatrix(field, src0, tgt0,
                   {(i, j): rows0[i][j] for i in range(5) for j in range(2)})
    srcm = FreeEModule(v, (-1,) * 5)           # ω_E(-4)^5
    colsm = [(w(2, 4), w(1, 0)),
             (w(3, 0), w(2, 1)),
             (w(4, 1), w(3, 2)),
             (w(0, 2), w(4, 3)),
             (w(1, 3), w(0, 4))]
    dm1 = ExtMatrix(field, srcm, src0,
                    {(i, j): colsm[j][i] for i in range(2) for j in range(5)})
    return d0, dm1


def line_bundle(v, field, d) -> SPresentation:
    """O(d) on P^v presented as the free module S(d)."""
    return SPresentation(v, field, gens=[-d], rels=[], matrix=[[]])


def point_module(v, field) -> SPresentation:
    """The coordinate point V(x_1,..,x_v): S/(x_1..x_v)."""
    mat = [[SPolynomial.variable(v, field, i) for i in range(1, v + 1)]]
    return SPresentation(v, field, gens=[0], rels=[1] * v, matrix=mat)


def two_point_scheme(field) -> SPresentation:
    """Two reduced points (1:0:0), (0:1:0) in P^2: S/(x_2, x_0 x_1)."""
    v = 2
    x = lambda i: SPolynomial.variable(v, field, i)
    return SPresentation(v, field, gens=[0], rels=[1, 2],
                         matrix=[[x(2), x(0).mul(x(1))]])


def twisted_cubic(field) -> SPresentation:
    """Coordinate ring of the twisted cubic in P^3 (three 2x2 minors)."""
    v = 3
    f = field

    def minor(a, b, c, d):
        xa = SPolynomial.variable(v, f, a).mul(SPolynomial.variable(v, f, b))
        xc = SPolynomial.variable(v, f, c).mul(SPolynomial.variable(v, f, d))
        neg = SPolynomial(v, f, 2, {e: f.neg(cc) for e, cc in xc.terms.items()})
        return xa + neg

    return SPresentation(v, f, gens=[0], rels=[2, 2, 2],
                         matrix=[[minor(0, 2, 1, 1), minor(1, 3, 2, 2),
                                  minor(0, 3, 1, 2)]])


def twisted_differentials(v, field, p) -> SPresentation:
    """Ω^p(p) on P^v via the Koszul truncation: the image module
    coker(Λ^{p+2}W ⊗ S(-2) -> Λ^{p+1}W ⊗ S(-1)), whose sheafification is
    ker(Λ^p W ⊗ O -> Λ^{p-1}W ⊗ O(1))."""
    if not (0 <= p <= v):
        raise InputError(f"need 0 <= p <= v, got p={p}")
    gens_sets = list(combinations(range(v + 1), p + 1))
    rels_sets = list(combinations(range(v + 1), p + 2))
    gidx = {s: i for i, s in enumerate(gens_sets)}
    matrix = [[SPolynomial.zero(v, field, 1) for _ in rels_sets]
              for _ in gens_sets]
    for jc, B in enumerate(rels_sets):
        for pos, j in enumerate(B):
            A = tuple(x for x in B if x != j)
            ent = SPolynomial.variable(v, field, j)
            if pos % 2:
                ent = SPolynomial(v, field, 1,
                                  {e: field.neg(c) for e, c in ent.terms.items()})
            matrix[gidx[A]][jc] = ent
    return SPresentation(v, field, gens=[1] * len(gens_sets),
                         rels=[2] * len(rels_sets), matrix=matrix)


def bott_line_bundle(v, d, i, n):
    """Closed-form h^i O(d)(n) on P^v: C(d+n+v, v) at i=0 for d+n >= 0,
    C(-d-n-1, v) at i=v for d+n <= -v-1, zero otherwise."""
    from math import comb
    t = d + n
    if i == 0 and t >= 0:
        return comb(t + v, v)
    if i == v and t <= -v - 1:
        return comb(-t - 1, v)
    return 0


def weyl_dim(mu) -> int:
    """Dimension of the irreducible GL(W)-module with weakly decreasing
    weight μ = (μ_0..μ_v): Π_{i<j} (μ_i - μ_j + j - i)/(j - i)."""
    n = len(mu)
    out = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            out *= Fraction(mu[i] - mu[j] + j - i, j - i)
    assert out.denominator == 1
    return int(out)


def schur_oracle(v, lam, a):
    """For the Schur bundle with label λ_1 >= .. >= λ_v, the a-th diagonal of
    its cohomology table has exactly one nonzero cell: returns (r, dim) with
    r the cohomological index and dim the value, i.e.
    h^r(a - r) = dim and h^i(a - i) = 0 for i != r.

    r is fixed by λ_r > a >= λ_{r+1} (with λ_0 = +inf, λ_{v+1} = -inf) and
    the value is the Weyl dimension of (λ_1-1,..,λ_r-1, a, λ_{r+1},..,λ_v).
    """
    lam = list(lam)
    if len(lam) != v or any(lam[k] < lam[k + 1] for k in range(v - 1)):
        raise InputError("need a weakly decreasing partition of length v")
    ext = [None] + lam + [None]   # λ_0 = +inf, λ_{v+1} = -inf
    r = None
    for k in range(v + 1):
        upper = ext[k]
        lower = ext[k + 1]
        if (upper is None or upper > a) and (lower is None or a >= lower):
            r = k
            break
    assert r is not None
    mu = [x - 1 for x in lam[:r]] + [a] + lam[r:]
    return r, weyl_dim(mu)


_BUILTINS_DOC = """Builtin names: point{v}, O{v}(d), omega{v}(p), twopoint2, cubic3."""


def builtin_presentation(name: str, field) -> SPresentation:
    """Parse a builtin presentation name (see _BUILTINS_DOC)."""
    name = name.strip()
    try:
        if name.startswith("point"):
            return point_module(int(name[5:]), field)
        if name == "twopoint2":
            return two_point_scheme(field)
        if name == "cubic3":
            return twisted_cubic(field)
        if name.startswith("O") and "(" in name and name.endswith(")"):
            v = int(name[1:name.index("(")])
            d = int(name[name.index("(") + 1:-1])
            return line_bundle(v, field, d)
        if name.startswith("omega") and "(" in name and name.endswith(")"):
            v = int(name[5:name.index("(")])
            p = int(name[name.index("(") + 1:-1])
            return twisted_differentials(v, field, p)
    except (ValueError, InputError) as e:
        raise InputError(f"bad builtin {name!r}: {e}") from e
    raise InputError(f"unknown builtin {name!r}. {_BUILTINS_DOC}")
