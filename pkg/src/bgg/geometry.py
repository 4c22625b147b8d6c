"""Local and relative analysis through the annihilator functor
Hom_E(Λ(U*), -): fiber ranks and local projective dimensions at points,
degeneracy-locus probing, sheaf certification for a three-term complex, and
projection of Tate windows to smaller projective spaces.

For a codimension-d subspace U of W given by the annihilator forms
θ_1..θ_d in V, a linear change of coordinates makes the θ's the trailing
basis vectors; the annihilator subcomplex of a window of cofree modules is
then again cofree over the smaller algebra Λ(U*), with the same twists, and
its differentials are the old entries with trailing coordinates dropped.
That identification is certified against a direct degreewise annihilator
computation in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .complexes import EComplex, ExtMatrix, FreeEModule, kernel_module
from .errors import (InputError, MathPreconditionError,
                     SupportMeetsCenterError, WindowInsufficientError)
from .exterior import ExtElement
from .tate import TateWindow


class SubspaceSpec:
    """Codimension-d subspace U ⊆ W given by d independent annihilator
    forms θ_1..θ_d in V.  For d = 1 this is the point of P(W) whose
    homogeneous coordinates are the coefficients of θ."""

    def __init__(self, field, v, thetas):
        self.field = field
        self.v = v
        self.thetas = [[field(c) for c in t] for t in thetas]
        for t in self.thetas:
            if len(t) != v + 1:
                raise InputError("annihilator form has wrong length")
        if self.thetas:
            A = linalg.from_rows(field, self.thetas, v + 1)
            if linalg.rank(field, A) != len(self.thetas):
                raise InputError("annihilator forms are dependent")

    @classmethod
    def point(cls, field, v, coords):
        return cls(field, v, [coords])

    @property
    def codim(self):
        return len(self.thetas)

    def contains_sample(self, rng):
        """A random codimension-1 U' ⊇ U: a random nonzero combination of
        the annihilator forms."""
        f = self.field
        while True:
            cs = [f.random(rng) for _ in self.thetas]
            t = [f.zero] * (self.v + 1)
            for c, th in zip(cs, self.thetas):
                for k in range(self.v + 1):
                    t[k] = f.add(t[k], f.mul(c, th[k]))
            if any(not f.is_zero(x) for x in t):
                return SubspaceSpec(self.field, self.v, [t])

    @classmethod
    def random_point(cls, field, v, rng):
        while True:
            t = [field.random(rng) for _ in range(v + 1)]
            if any(not field.is_zero(x) for x in t):
                return cls(field, v, [t])

    @classmethod
    def random(cls, field, v, d, rng):
        while True:
            rows = [[field.random(rng) for _ in range(v + 1)] for _ in range(d)]
            A = linalg.from_rows(field, rows, v + 1)
            if linalg.rank(field, A) == d:
                return cls(field, v, rows)


def _substitution(sub: SubspaceSpec):
    """Images of e_0..e_v under the coordinate change putting the θ's last.

    Returns (images, v_new, kill_mask): images[γ] is a degree-1 element over
    the ORIGINAL v whose trailing d coordinates span the θ directions.
    """
    f, v, d = sub.field, sub.v, sub.codim
    A = linalg.from_rows(f, sub.thetas, v + 1)
    _, piv = linalg.rref(f, A)
    others = [i for i in range(v + 1) if i not in set(piv)]
    # columns of B: new basis f_0..f_{v-d}, θ_1..θ_d
    cols = [[f.one if i == j else f.zero for i in range(v + 1)] for j in others]
    cols += [t for t in sub.thetas]
    B = linalg.zeros(f, v + 1, v + 1)
    for j, colv in enumerate(cols):
        for i in range(v + 1):
            B[i, j] = colv[i]
    # solve B X = I for X = B^{-1}
    aug = np.concatenate([B, linalg.zeros(f, v + 1, v + 1)], axis=1)
    for i in range(v + 1):
        aug[i, v + 1 + i] = f.one
    R, pivots = linalg.rref(f, aug)
    if pivots != list(range(v + 1)):
        raise InputError("degenerate coordinate change")
    Binv = R[:, v + 1:]
    images = [ExtElement.linear(v, f, [Binv[k, g] for k in range(v + 1)])
              for g in range(v + 1)]
    kill_mask = ((1 << d) - 1) << (v + 1 - d)
    return images, v - d, kill_mask


def _reduce_matrix(mat: ExtMatrix, images, v_new, kill_mask, d) -> ExtMatrix:
    f = mat.field
    src = FreeEModule(v_new, tuple(g + d for g in mat.source.gens))
    tgt = FreeEModule(v_new, tuple(g + d for g in mat.target.gens))
    ents = {}
    for (i, j), ent in mat.entries.items():
        sub_ent = ent.substitute(images)
        sign = -1 if (d * ent.degree) % 2 else 1
        red = sub_ent.drop_masked(kill_mask, v_new=v_new, sign=sign)
        if not red.is_zero():
            ents[(i, j)] = red
    return ExtMatrix(f, src, tgt, ents)


def hom_annihilator(T: TateWindow, sub: SubspaceSpec) -> EComplex:
    """The complex Hom_E(Λ(U*), T) over the smaller exterior algebra, on the
    same positions.  Generally not acyclic; its homology carries restriction
    and Tor data."""
    if sub.codim == 0:
        return T.complex
    images, v_new, kill = _substitution(sub)
    d = sub.codim
    terms = {p: FreeEModule(v_new, tuple(g + d for g in T.term(p).gens))
             for p in range(T.lo, T.hi + 1)}
    diffs = {p: _reduce_matrix(T.differential(p), images, v_new, kill, d)
             for p in range(T.lo, T.hi)}
    return EComplex(T.field, v_new, terms, diffs)


def _hom_homology(T, sub, a, degrees):
    """Homology dimensions of Hom_E(Λ(U*), T) at position a in the listed
    internal degrees; needs positions a-1, a, a+1 in the window."""
    if not (T.lo < a < T.hi):
        raise WindowInsufficientError(
            f"needs positions [{a - 1},{a + 1}] inside [{T.lo},{T.hi}]")
    images, v_new, kill = _substitution(sub)
    d = sub.codim
    d_out = _reduce_matrix(T.differential(a), images, v_new, kill, d)
    d_in = _reduce_matrix(T.differential(a - 1), images, v_new, kill, d)
    f = T.field
    out = {}
    for m in degrees:
        dim = d_out.source.dim(m)
        r1 = linalg.rank(f, d_out.realize(m)) if dim else 0
        r0 = linalg.rank(f, d_in.realize(m)) if dim else 0
        out[m] = dim - r1 - r0
    return out


def fiber_rank(T: TateWindow, point: SubspaceSpec, a: int = 0) -> int:
    """Rank of the fiber at the point: dim H^a Hom(Λ(U*), T)_{-a}."""
    if point.codim != 1:
        raise InputError("fiber_rank needs a point (codimension 1)")
    return _hom_homology(T, point, a, [-a])[-a]


def local_pd(T: TateWindow, point: SubspaceSpec, a: int = 0) -> int:
    """Projective dimension of the stalk at the point: the largest l with
    H^a Hom(Λ(U*), T)_{-l-a} nonzero (0 when the stalk is free or zero)."""
    if point.codim != 1:
        raise InputError("local_pd needs a point (codimension 1)")
    hom = _hom_homology(T, point, a, [-l - a for l in range(T.v + 1)])
    best = 0
    for l in range(T.v + 1):
        if hom[-l - a]:
            best = l
    return best


def _point_profile(T, theta_sub, a):
    hom = _hom_homology(T, theta_sub, a, [-l - a for l in range(T.v + 1)])
    rank = hom[-a]
    pd = max((l for l in range(T.v + 1) if hom[-l - a]), default=0)
    pure = all(hom[-l - a] == 0 for l in range(1, T.v + 1))
    return rank, pd, pure


@dataclass
class ProbeReport:
    codim: int
    samples: int
    ranks: list
    pds: list
    pure: bool
    rank: int | None
    message: str = ""

    def verdict(self):
        if self.pure and self.rank is not None:
            return (f"probabilistic ({self.samples} samples): degeneracy "
                    f"codim >= {self.codim} with rank {self.rank}")
        return f"probabilistic ({self.samples} samples): {self.message}"


def _map_samples(fn, items, threads):
    """Order-preserving map, optionally on a thread pool; samples are drawn
    up front so results do not depend on the thread count."""
    if threads and threads > 1 and len(items) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def probe_degeneracy(T: TateWindow, sub: SubspaceSpec, a: int = 0,
                     samples: int = 20, rng=None, threads=None,
                     thetas=None) -> ProbeReport:
    """Sample codim-1 subspaces U ⊇ U_0 (or fully random points when U_0 is
    the whole space) and record the (rank, pd) profile of each fiber.

    The first samples walk the given annihilator basis directions (so a
    degeneracy sitting on a coordinate of U_0 is hit deterministically);
    an explicit list of forms in `thetas` replaces sampling entirely.
    """
    rng = rng or np.random.default_rng(0)
    f = T.field
    if thetas is not None:
        thetas = [SubspaceSpec(f, T.v, [t]) for t in thetas]
        samples = len(thetas)
    else:
        basis_first = [SubspaceSpec(f, T.v, [t]) for t in sub.thetas[:samples]]
        thetas = basis_first + [
            (sub.contains_sample(rng) if sub.codim
             else SubspaceSpec.random_point(f, T.v, rng))
            for _ in range(samples - len(basis_first))]
    profiles = _map_samples(lambda th: _point_profile(T, th, a), thetas, threads)
    ranks = [r for r, _, _ in profiles]
    pds = [pd for _, pd, _ in profiles]
    pures = [pure for _, _, pure in profiles]
    ok = bool(all(pures)) and len(set(ranks)) == 1
    return ProbeReport(
        codim=sub.codim, samples=samples, ranks=ranks, pds=pds,
        pure=ok, rank=ranks[0] if ok else None,
        message="" if ok else f"nonpure or nonconstant profile: ranks={ranks} pds={pds}")


@dataclass
class CertifyVerdict:
    ok: bool
    rank: int | None
    lpd_bound: int | None
    codim_bound: int | None
    torsion_free: bool
    samples: int
    sample_profiles: list = dc_field(default_factory=list)
    message: str = ""

    def text(self):
        if not self.ok:
            return f"not certified: {self.message}"
        extra = ", torsion free" if self.torsion_free else ""
        return (f"certifies (probabilistic, {self.samples} samples): coherent "
                f"sheaf, rank {self.rank}, lpd <= {self.lpd_bound}, degeneracy "
                f"codim >= {self.codim_bound}{extra}")


def certify_sheaf(d_in: ExtMatrix, d_out: ExtMatrix, a: int, l: int,
                  samples: int = 25, rng=None, threads=None) -> CertifyVerdict:
    """Randomized check that a three-term complex of cofree modules, exact in
    the middle, corresponds to a coherent sheaf of some rank r with local
    projective dimension <= l.

    Hypothesis (a): for random codim-1 U, the middle homology of
    Hom(Λ(U*), E) is confined to degrees [-a-l, -a]; (b) for U ranging over
    a fixed random codim-l subspace, the dimension at -a is a constant r and
    all others vanish.  If degree -a-l is also zero in every sample, the
    sheaf is reported torsion free (lpd < l).
    """
    rng = rng or np.random.default_rng(0)
    f, v = d_in.field, d_in.v
    if d_out.source != d_in.target:
        raise InputError("three-term complex terms do not match")
    if not d_out.compose(d_in).is_zero():
        raise InputError("d∘d != 0: not a complex")
    mid = d_in.target
    for m in mid.support():
        km = mid.dim(m) - linalg.rank(f, d_out.realize(m)) \
            - linalg.rank(f, d_in.realize(m))
        if km:
            raise MathPreconditionError(
                f"complex not exact in the middle (degree {m}: homology {km})")

    cx = EComplex(f, v, {a - 1: d_in.source, a: mid, a + 1: d_out.target},
                  {a - 1: d_in, a: d_out})
    T = TateWindow(f, v, cx, {"kind": "three-term"})

    def middle_profile(theta):
        degs = list(range(-a - v - 1, -a + v + 2))
        return _hom_homology(T, theta, a, degs)

    thetas_a = [SubspaceSpec.random_point(f, v, rng) for _ in range(samples)]
    profiles = _map_samples(middle_profile, thetas_a, threads)
    saw_rank_degree = False
    for hom in profiles:
        bad = [m for m, h in hom.items() if h and not (-a - l <= m <= -a)]
        if bad:
            return CertifyVerdict(False, None, None, None, False, samples,
                                  message=f"homology outside [-a-l,-a] at degrees {bad}")
        if hom.get(-a, 0):
            saw_rank_degree = True
    torsion_free = all(h.get(-a - l, 0) == 0 for h in profiles)

    u0 = SubspaceSpec.random(f, v, l, rng)
    thetas_b = [u0.contains_sample(rng) for _ in range(samples)]
    profiles_b = _map_samples(middle_profile, thetas_b, threads)
    rank = None
    sample_profiles = []
    for hom in profiles_b:
        r = hom.get(-a, 0)
        others = [m for m, h in hom.items() if h and m != -a]
        sample_profiles.append((r, max(((-m - a) for m, h in hom.items() if h),
                                       default=0)))
        if others:
            return CertifyVerdict(False, None, None, None, False, samples,
                                  message=f"nonzero homology at degrees {others} over U_0")
        if rank is None:
            rank = r
        elif rank != r:
            return CertifyVerdict(False, None, None, None, False, samples,
                                  message=f"rank jumps over U_0: {rank} vs {r}")
    if not saw_rank_degree:
        return CertifyVerdict(False, None, None, None, False, samples,
                              message="no sample witnessed homology at -a (rank 0?)")
    return CertifyVerdict(True, rank, l, l, torsion_free, samples,
                          sample_profiles=sample_profiles)


def project(T: TateWindow, sub: SubspaceSpec) -> TateWindow:
    """Tate window of the pushforward along P(W) --> P(U): the annihilator
    complex must be acyclic on the interior (the support of the sheaf must
    miss the center of projection)."""
    if sub.codim == 0:
        return T
    if sub.codim > T.v:
        raise InputError("projection target must be a positive-dimensional space")
    cx = hom_annihilator(T, sub)
    report = cx.check_acyclic()
    if report:
        raise SupportMeetsCenterError(
            f"support meets center: homology at {report}")
    if not cx.is_minimal():
        raise MathPreconditionError("projected complex is not minimal")
    return TateWindow(T.field, cx.v, cx, {"kind": "projection", "codim": sub.codim,
                                          "of": T.provenance})
