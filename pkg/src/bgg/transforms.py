"""Truncation functors on Tate windows and their symmetric-side outputs:
rigid complexes with differentials, Beilinson and Walter term shapes, graded
Betti numbers, and the two exact Hilbert-polynomial formulas.

Shapes carry terms only; rigid complexes carry differentials because their
source (the kernel of one Tate differential) is finite dimensional.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from . import linalg
from .errors import InputError, MathPreconditionError, WindowInsufficientError
from .fields import RationalField
from .symmetric import GradedModule, SPolynomial, s_monomials
from .tate import TateWindow, strand_complex


def binom_poly(n: int, k: int) -> int:
    """C(n+..) as the degree-k polynomial value: product of k consecutive
    integers ending at n, over k! (exact, valid for negative n)."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= n - i
    q, r = divmod(num, factorial(k))
    assert r == 0
    return q


def chi_o(v: int, m: int) -> int:
    """Euler characteristic of O(m) on P^v as a polynomial value: C(m+v, v)."""
    return binom_poly(m + v, v)


class HilbertPolynomial:
    """Exact integer coefficients c_j in the binomial basis
    χ(n) = Σ_{j=0}^{v} c_j · C(n+v-j, v-j)."""

    def __init__(self, v, coeffs):
        self.v = v
        self.coeffs = tuple(coeffs)
        if len(self.coeffs) != v + 1:
            raise InputError("coefficient count must be v+1")

    @classmethod
    def from_values(cls, v, values):
        """Interpolate from exact values at n = 0..v."""
        if len(values) != v + 1:
            raise InputError("need v+1 sample values")
        q = RationalField()
        A = linalg.zeros(q, v + 1, v + 2)
        for r in range(v + 1):
            for j in range(v + 1):
                A[r, j] = Fraction(binom_poly(r + v - j, v - j))
            A[r, v + 1] = Fraction(values[r])
        R, piv = linalg.rref(q, A)
        if piv != list(range(v + 1)):
            raise InputError("interpolation matrix is singular")
        coeffs = []
        for j in range(v + 1):
            c = R[j, v + 1]
            if c.denominator != 1:
                raise InputError("non-integer binomial-basis coefficient")
            coeffs.append(int(c))
        return cls(v, coeffs)

    def __call__(self, n: int) -> int:
        return sum(c * binom_poly(n + self.v - j, self.v - j)
                   for j, c in enumerate(self.coeffs))

    def __eq__(self, other):
        return (isinstance(other, HilbertPolynomial) and self.v == other.v
                and self.coeffs == other.coeffs)

    def __repr__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            k = self.v - j
            term = f"C(n+{k},{k})" if k > 0 else "1"
            if c == 1:
                parts.append(term)
            elif c == -1:
                parts.append(f"-{term}")
            else:
                parts.append(f"{c}*{term}")
        if not parts:
            return "0"
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def to_json(self):
        return {"v": self.v, "binomial_coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["v"], obj["binomial_coeffs"])


def hilbert_from_kernel(T: TateWindow, p: int) -> HilbertPolynomial:
    """χ(n) = Σ_q (-1)^{q+p} dim(ker d^p)_q · χ_O(q+n), from the kernel of
    any one differential of the window."""
    if not (T.lo <= p < T.hi):
        raise WindowInsufficientError(f"no differential at position {p}")
    dims = T.kernel(p).dims()
    v = T.v
    vals = [sum((-1) ** ((q + p) % 2) * dm * chi_o(v, q + n)
                for q, dm in dims.items()) for n in range(v + 1)]
    return HilbertPolynomial.from_values(v, vals)


def hilbert_from_coranks(T: TateWindow, n: int) -> int:
    """χ(n) = Σ_p (-1)^{p+n} · (multiplicity of ω_E(n) in T^p); the twist-n
    strand must lie inside the window."""
    v = T.v
    if not (T.lo <= n and n + v <= T.hi):
        raise WindowInsufficientError(
            f"twist-{n} strand needs positions [{n},{n + v}] inside "
            f"[{T.lo},{T.hi}]")
    tot = 0
    for p in range(n, n + v + 1):
        tot += (-1) ** ((p + n) % 2) * T.twists(p).get(n, 0)
    return tot


class SComplexShape:
    """Per position p, the multiset {S-twist q: rank} of a free S-complex."""

    def __init__(self, positions):
        self.positions = {p: {q: r for q, r in qs.items() if r}
                          for p, qs in positions.items()}
        self.positions = {p: qs for p, qs in self.positions.items() if qs}

    def rank(self, p, q):
        return self.positions.get(p, {}).get(q, 0)

    def position_range(self):
        if not self.positions:
            return None
        return min(self.positions), max(self.positions)

    def total_rank(self):
        return sum(r for qs in self.positions.values() for r in qs.values())

    def euler(self, v, m):
        """Σ_p (-1)^p Σ_q rank·χ_O(m-q)."""
        return sum((-1) ** (p % 2) * r * chi_o(v, m - q)
                   for p, qs in self.positions.items() for q, r in qs.items())

    def to_json(self):
        return {"positions": {str(p): {str(q): r for q, r in sorted(qs.items())}
                              for p, qs in sorted(self.positions.items())}}

    @classmethod
    def from_json(cls, obj):
        return cls({int(p): {int(q): r for q, r in qs.items()}
                    for p, qs in obj["positions"].items()})

    def __eq__(self, other):
        return isinstance(other, SComplexShape) and self.positions == other.positions

    def pretty(self):
        if not self.positions:
            return "0"
        lines = []
        for p in sorted(self.positions):
            body = " + ".join(f"S(-{q})^{r}" if q >= 0 else f"S({-q})^{r}"
                              for q, r in sorted(self.positions[p].items()))
            lines.append(f"P^{p:>3} = {body}")
        return "\n".join(lines)


class RigidComplex:
    """The finite linear free S-complex transformed from one kernel: term at
    position c is S(c-n) ⊗ (ker d^n)_{c-n}, with the Koszul differential
    s⊗m -> Σ_α s·x_α ⊗ e_α·m."""

    def __init__(self, v, n, ranks, diffs):
        self.v = v
        self.n = n
        self.ranks = ranks            # position -> rank
        self.diffs = diffs            # position -> matrix of SPolynomial
        self.positions = sorted(ranks)

    def twist(self, c):
        return self.n - c   # term is S(-(n-c))^rank

    def shape(self) -> SComplexShape:
        return SComplexShape({c: {self.twist(c): r} for c, r in self.ranks.items()})

    def dd_is_zero(self):
        for c in self.positions:
            if c in self.diffs and c + 1 in self.diffs:
                A, B = self.diffs[c + 1], self.diffs[c]
                for i in range(len(A)):
                    for j in range(len(B[0]) if B else 0):
                        acc = None
                        for k in range(len(B)):
                            t = A[i][k].mul(B[k][j])
                            acc = t if acc is None else acc + t
                        if acc is not None and not acc.is_zero():
                            return False
        return True

    def euler(self, m):
        return sum((-1) ** (c % 2) * r * chi_o(self.v, m + c - self.n)
                   for c, r in self.ranks.items())


def rigid_complex(T: TateWindow, n: int) -> RigidComplex:
    if not (T.lo < n < T.hi):
        raise WindowInsufficientError(f"position {n} not interior to window")
    K = T.kernel(n)
    f, v = T.field, T.v
    dims = K.dims()
    ranks = {n + q: dm for q, dm in dims.items()}
    diffs = {}
    for q in sorted(dims):
        if q + 1 not in dims:
            continue
        acts = [K.action_coords(alpha, q) for alpha in range(v + 1)]
        rows, cols = dims[q + 1], dims[q]
        mat = [[None] * cols for _ in range(rows)]
        for i in range(rows):
            for j in range(cols):
                terms = {}
                for alpha in range(v + 1):
                    c = acts[alpha][i, j]
                    if not f.is_zero(c):
                        e = [0] * (v + 1)
                        e[alpha] = 1
                        terms[tuple(e)] = c
                mat[i][j] = SPolynomial(v, f, 1, terms)
        diffs[n + q] = mat
    return RigidComplex(v, n, ranks, diffs)


def _truncated_homology(T: TateWindow, keep, s, m, cache):
    """Homology at position s, degree m of the subcomplex keeping generators
    selected by keep(position, twist) -> bool."""
    f = T.field

    def keep_idx(p):
        term = T.term(p)
        return [j for j, g in enumerate(term.gens)
                if keep(p, -g - (T.v + 1))]

    def rank_at(p):
        key = (p, m)
        if key not in cache:
            if p < T.lo or p >= T.hi:
                cache[key] = 0
            else:
                d = T.differential(p)
                sub = d.submatrix(keep_idx(p + 1), keep_idx(p))
                if sub.source.dim(m) == 0 or sub.target.dim(m) == 0:
                    cache[key] = 0
                else:
                    cache[key] = linalg.rank(f, sub.realize(m))
        return cache[key]

    dim = T.term(s).drop(keep_idx(s)).dim(m)
    return dim - rank_at(s) - rank_at(s - 1)


def _spread(T: TateWindow) -> int:
    sp = 0
    for p in range(T.lo, T.hi + 1):
        for a in T.twists(p):
            sp = max(sp, p - a)
    return sp


def beilinson_shape(T: TateWindow, r: int) -> SComplexShape:
    """Term shape of the Beilinson representative: keep twists >= r, then
    rank(p, q) = dim H^{p+q}(b^{>=r} T)_{-q} for q in [r, r+v]."""
    v = T.v
    if not T.is_sheaf_shaped():
        raise MathPreconditionError("beilinson shape needs a sheaf-shaped window")
    sp = _spread(T)
    if not (T.lo <= r - 1 and r + sp + 1 <= T.hi):
        raise WindowInsufficientError(
            f"beilinson at r={r} needs positions [{r - 1},{r + sp + 1}] inside "
            f"[{T.lo},{T.hi}]")
    cache = {}
    keep = lambda p, a: a >= r
    out = {}
    for q in range(r, r + v + 1):
        for s in range(r, r + sp + 1):
            h = _truncated_homology(T, keep, s, -q, cache)
            if h:
                out.setdefault(s - q, {})[q] = h
    return SComplexShape(out)


def walter_shape(T: TateWindow, r: int, lpd: int, weights=None) -> SComplexShape:
    """Term shape of the Walter complex for 0 <= r <= v-1-lpd: keep the
    cofiltration layers i = p - twist <= r; rank(p, q) = H^{p+q}(w_{<=r}T)_{-q},
    confined to positions [r+1-v, r].

    For r = 0 on a window built from a presentation, the bounded linear
    strand of the presented module is used directly (no window limits); this
    is the minimal free resolution of that module.
    """
    v = T.v
    if r == 0 and T.provenance.get("kind") == "presentation" and "pres" in T.provenance:
        return _module_resolution_shape(T, weights)
    if not (0 <= r <= v - 1 - lpd):
        raise MathPreconditionError(
            f"walter needs 0 <= r <= v-1-lpd = {v - 1 - lpd}")
    keep = lambda p, a: p - a <= r
    if weights is None:
        q_lo, q_hi = T.lo + v + 2, T.hi - r - 1
        if q_lo > q_hi:
            raise WindowInsufficientError("window too small for any Walter weight")
        weights = range(q_lo, q_hi + 1)
    cache = {}
    out = {}
    for q in weights:
        if not (T.lo <= q - v - 2 and q + r + 1 <= T.hi):
            raise WindowInsufficientError(
                f"walter weight {q} needs positions [{q - v - 2},{q + r + 1}]")
        for s in range(q - v - 1, q + r + 1):
            h = _truncated_homology(T, keep, s, -q, cache)
            if h:
                p = s - q
                if not (r + 1 - v <= p <= r):
                    raise MathPreconditionError(
                        f"homology outside the Walter band at (p={p}, q={q})")
                out.setdefault(p, {})[q] = h
    return SComplexShape(out)


def _module_resolution_shape(T: TateWindow, weights=None) -> SComplexShape:
    """Betti shape of the presented module M via strandwise homology of the
    bounded linear strand G(M): β_{j,q} = dim H^{q-j}(G(M))_{-q}."""
    pres = T.provenance["pres"]
    gm = GradedModule(pres)
    v = gm.v
    if weights is None:
        q_lo = pres.min_gen_degree()
        q_hi = (T.start if T.start is not None else max(pres.gens)) + v + 1
        weights = range(q_lo, q_hi + 1)
    out = {}
    for q in weights:
        cx = strand_complex(gm, q - v - 1, q + 1)
        for s in range(q - v - 1, q + 1):
            h = cx.homology_dim(s, -q)
            if h:
                out.setdefault(s - q, {})[q] = h
    return SComplexShape(out)


def betti_numbers(T: TateWindow, weights=None):
    """Graded Betti numbers β_{j,q} (syzygy order j >= 0, weight q) of the
    module of twisted global sections, as the strand homology
    H^{q-j}(w_{<=0} T)_{-q}.

    On presentation-built windows this resolves the presented module (exact,
    window-free).  On differential-built windows the section module's strand
    is cut from the window, which requires h^0 to vanish at the window floor.
    """
    if T.provenance.get("kind") == "presentation" and "pres" in T.provenance:
        shape = _module_resolution_shape(T, weights)
    else:
        tab = T.table()
        floor_cells = [tab.h(0, n) for n in range(tab.pos_lo, tab.pos_lo + 2)]
        if any(c is None or c != 0 for c in floor_cells):
            raise WindowInsufficientError(
                "h^0 does not visibly vanish at the window floor; Betti "
                "numbers of the section module are not certified")
        shape = walter_shape(T, 0, lpd=T.v - 1, weights=weights)
    return {(-p, q): r for p, qs in shape.positions.items() for q, r in qs.items()}


def betti_pretty(betti):
    """Standard Betti-table layout: rows d = q - j, columns j."""
    if not betti:
        return "0"
    jmax = max(j for j, _ in betti)
    dvals = sorted({q - j for j, q in betti})
    width = max(len(str(r)) for r in betti.values()) + 2
    lines = ["    " + "".join(str(j).rjust(width) for j in range(jmax + 1))]
    for d in dvals:
        row = str(d).rjust(3) + ":"
        for j in range(jmax + 1):
            r = betti.get((j, j + d), 0)
            row += ("." if r == 0 else str(r)).rjust(width)
        lines.append(row)
    return "\n".join(lines)
