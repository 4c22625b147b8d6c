"""Graded free modules over E = Λ(V), degree-0 maps between them, their
degreewise realization as field matrices, kernels, minimal generators, and
the minimal resolution engine (leftward free, rightward cofree via duals).

Conventions, frozen here and certified by the test suite:
  * a generator of degree g spans an E(-g) summand living in degrees
    [g, g+v+1]; the cofree module ω_E(a) is stored as a free module with one
    generator of degree -a-(v+1);
  * maps act on column vectors of generator coordinates; a matrix entry
    m_ij (degree g_src[j] - g_tgt[i]) sends x·s_j to (x ∧ m_ij)·t_i, so
    composition is (ψ∘φ)_kj = Σ_i φ_ij ∧ ψ_ki;
  * the dual of a map is the transposed matrix with entries scaled by
    (-1)^{d(v+1-d)} (d = entry degree) and generator degrees g -> -g-(v+1);
    dual∘dual is the identity and dualization is contravariantly functorial.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import InputError
from .exterior import ExtElement, monomial_index, monomials, popcount, wedge_sign


class FreeEModule:
    """Finite free (equivalently cofree) graded E-module ⊕_j E(-g_j)."""

    __slots__ = ("v", "gens", "_basis_cache")

    def __init__(self, v, gens):
        self.v = v
        self.gens = tuple(int(g) for g in gens)
        self._basis_cache = {}

    @property
    def rank(self):
        return len(self.gens)

    def twists(self) -> Counter:
        """Multiset of cofree twists: E(-g) = ω_E(a) with a = -g-(v+1)."""
        return Counter(-g - (self.v + 1) for g in self.gens)

    def support(self):
        if not self.gens:
            return range(0)
        return range(min(self.gens), max(self.gens) + self.v + 2)

    def basis(self, m):
        """Basis of the degree-m piece: (gen index, monomial mask), gen-major."""
        if m in self._basis_cache:
            return self._basis_cache[m]
        out = []
        for j, g in enumerate(self.gens):
            out.extend((j, x) for x in monomials(self.v, m - g))
        self._basis_cache[m] = out
        return out

    def basis_index(self, m):
        return {bx: k for k, bx in enumerate(self.basis(m))}

    def dim(self, m):
        return len(self.basis(m))

    def total_dim(self):
        return self.rank * (1 << (self.v + 1))

    def act(self, field, alpha, m):
        """Matrix of left multiplication by e_alpha from degree m to m+1."""
        src = self.basis(m)
        tgt_idx = self.basis_index(m + 1)
        A = linalg.zeros(field, len(tgt_idx), len(src))
        bit = 1 << alpha
        for c, (j, x) in enumerate(src):
            if x & bit:
                continue
            s = wedge_sign(bit, x)
            A[tgt_idx[(j, bit | x)], c] = field.one if s > 0 else field.neg(field.one)
        return A

    def dual(self):
        return FreeEModule(self.v, tuple(-g - (self.v + 1) for g in self.gens))

    def drop(self, keep):
        return FreeEModule(self.v, tuple(self.gens[j] for j in keep))

    def __eq__(self, other):
        return isinstance(other, FreeEModule) and self.v == other.v and self.gens == other.gens

    def __repr__(self):
        t = self.twists()
        return " + ".join(f"w({a})^{m}" for a, m in sorted(t.items())) or "0"


class ExtMatrix:
    """Degree-0 map of free left E-modules; sparse dict (i, j) -> ExtElement."""

    __slots__ = ("v", "field", "source", "target", "entries")

    def __init__(self, field, source: FreeEModule, target: FreeEModule, entries):
        self.v = source.v
        if target.v != self.v:
            raise InputError("mixed exterior algebras")
        self.field = field
        self.source = source
        self.target = target
        self.entries = {}
        for (i, j), ent in entries.items():
            if ent is None or ent.is_zero():
                continue
            if ent.degree != source.gens[j] - target.gens[i]:
                raise InputError(
                    f"entry ({i},{j}) degree {ent.degree} != "
                    f"{source.gens[j]} - {target.gens[i]}")
            self.entries[(i, j)] = ent

    @classmethod
    def zero(cls, field, source, target):
        return cls(field, source, target, {})

    def is_zero(self):
        return not self.entries

    def is_minimal(self):
        """No invertible (nonzero scalar) entries."""
        return all(ent.degree >= 1 for ent in self.entries.values())

    def unit_entry(self):
        for (i, j), ent in self.entries.items():
            if ent.degree == 0 and not ent.is_zero():
                return i, j, ent.terms[0]
        return None

    def realize(self, m):
        """Field matrix of the map in internal degree m."""
        f = self.field
        src = self.source.basis(m)
        tgt_idx = self.target.basis_index(m)
        A = linalg.zeros(f, len(tgt_idx), len(src))
        by_col = {}
        for (i, j), ent in self.entries.items():
            by_col.setdefault(j, []).append((i, ent))
        for c, (j, x) in enumerate(src):
            for i, ent in by_col.get(j, ()):
                for me, ce in ent.terms.items():
                    s = wedge_sign(x, me)
                    if s == 0:
                        continue
                    r = tgt_idx[(i, x | me)]
                    A[r, c] = f.add(A[r, c], ce if s > 0 else f.neg(ce))
        return A

    def compose(self, other: "ExtMatrix") -> "ExtMatrix":
        """self ∘ other."""
        if other.target != self.source:
            raise InputError("composition shape mismatch")
        f = self.field
        out = {}
        by_row = {}
        for (k, i), ent in self.entries.items():
            by_row.setdefault(i, []).append((k, ent))
        for (i, j), phi in other.entries.items():
            for k, psi in by_row.get(i, ()):
                w = phi.wedge(psi)
                if w.is_zero():
                    continue
                cur = out.get((k, j))
                out[(k, j)] = w if cur is None else cur + w
        return ExtMatrix(f, other.source, self.target, out)

    def dual(self) -> "ExtMatrix":
        f, v = self.field, self.v
        src, tgt = self.target.dual(), self.source.dual()
        out = {}
        for (i, j), ent in self.entries.items():
            d = ent.degree
            if (d * (v + 1 - d)) % 2:
                ent = ent.scale(f.neg(f.one))
            out[(j, i)] = ent
        return ExtMatrix(f, src, tgt, out)

    def submatrix(self, keep_rows, keep_cols):
        rmap = {i: k for k, i in enumerate(keep_rows)}
        cmap = {j: k for k, j in enumerate(keep_cols)}
        ents = {(rmap[i], cmap[j]): ent for (i, j), ent in self.entries.items()
                if i in rmap and j in cmap}
        return ExtMatrix(self.field, self.source.drop(keep_cols),
                         self.target.drop(keep_rows), ents)


class FiniteEModule:
    """Graded submodule of a free module, with degreewise bases.

    bases[m] = (K, coord_cols): rows of K span the piece inside the ambient
    coordinates of degree m, and K[:, coord_cols] is the identity, so
    coordinates in this basis are read off at coord_cols.
    """

    def __init__(self, field, ambient: FreeEModule, bases):
        self.field = field
        self.ambient = ambient
        self.v = ambient.v
        self.bases = {m: kb for m, kb in bases.items() if kb[0].shape[0] > 0}

    def dims(self):
        return {m: kb[0].shape[0] for m, kb in self.bases.items()}

    def dim(self, m):
        return self.bases[m][0].shape[0] if m in self.bases else 0

    def total_dim(self):
        return sum(self.dims().values())

    def coords(self, m, vectors):
        """Coordinates of rows (known to lie in the piece) in the basis."""
        return vectors[:, self.bases[m][1]]

    def action_coords(self, alpha, m):
        """Matrix of e_alpha: piece_m -> piece_{m+1} in the chosen bases
        (shape dim_{m+1} x dim_m)."""
        f = self.field
        if self.dim(m) == 0 or self.dim(m + 1) == 0:
            return linalg.zeros(f, self.dim(m + 1), self.dim(m))
        act = self.ambient.act(f, alpha, m)
        rows = linalg.mat_mul(f, self.bases[m][0], act.T)
        return self.coords(m + 1, rows).T.copy()

    def min_generators(self):
        """Bases of piece_m / Σ_α e_α piece_{m-1}, bottom degree up; returns
        a list of (degree, ambient row vector)."""
        f = self.field
        out = []
        for m in sorted(self.bases):
            K, _ = self.bases[m]
            stacked = []
            if m - 1 in self.bases:
                prev = self.bases[m - 1][0]
                for alpha in range(self.v + 1):
                    act = self.ambient.act(f, alpha, m - 1)
                    stacked.append(linalg.mat_mul(f, prev, act.T))
            if stacked:
                S = np.concatenate(stacked, axis=0)
                Sc = self.coords(m, S)
                _, piv = linalg.rref(f, Sc)
                free = [k for k in range(K.shape[0]) if k not in set(piv)]
            else:
                free = list(range(K.shape[0]))
            out.extend((m, K[k]) for k in free)
        return out


def kernel_module(mat: ExtMatrix) -> FiniteEModule:
    """Degreewise kernel of a map of free modules."""
    f = mat.field
    bases = {}
    for m in mat.source.support():
        if mat.source.dim(m) == 0:
            continue
        A = mat.realize(m)
        K, free = linalg.kernel_basis(f, A)
        if K.shape[0]:
            bases[m] = (K, free)
    return FiniteEModule(f, mat.source, bases)


def cover(K: FiniteEModule):
    """Minimal free cover P ↠ K; returns (P, M) with M: P -> K.ambient the
    composite with the inclusion (an ExtMatrix)."""
    f = K.field
    gens = K.min_generators()
    P = FreeEModule(K.v, tuple(m for m, _ in gens))
    ents = {}
    amb = K.ambient
    for j, (m, w) in enumerate(gens):
        basis = amb.basis(m)
        by_gen = {}
        for k, (i, x) in enumerate(basis):
            c = w[k]
            if f.is_zero(c):
                continue
            by_gen.setdefault(i, {})[x] = c
        for i, terms in by_gen.items():
            ents[(i, j)] = ExtElement(K.v, f, m - amb.gens[i], terms)
    return P, ExtMatrix(f, P, amb, ents)


def min_free_resolution(K: FiniteEModule, steps: int):
    """Minimal free resolution P^{-steps} -> ... -> P^{-1} ↠ K.

    Returns a list [(P_1, M_1), (P_2, M_2), ...] where M_1: P_1 -> K.ambient
    covers K and M_k: P_k -> P_{k-1} for k >= 2.  Each cover is chosen on
    minimal generators, so the resolution is minimal by construction.
    """
    out = []
    cur = K
    for _ in range(steps):
        P, M = cover(cur)
        out.append((P, M))
        if len(out) == steps:
            break
        cur = kernel_module(M)
    return out


def min_cofree_resolution(mat: ExtMatrix, steps: int):
    """Minimal cofree (injective) resolution of coker(mat), built by
    dualizing, resolving the kernel of the dual, and dualizing back.

    Returns [(I_1, N_1), (I_2, N_2), ...] with N_1: mat.target -> I_1 and
    N_k: I_{k-1} -> I_k.
    """
    dk = kernel_module(mat.dual())
    res = min_free_resolution(dk, steps)
    return [(M.dual().target, M.dual()) for _, M in res]


class EComplex:
    """A window [lo, hi] of a complex of free E-modules.

    terms[p] for p in [lo, hi]; diffs[p]: terms[p] -> terms[p+1] for
    p in [lo, hi-1].
    """

    def __init__(self, field, v, terms, diffs):
        self.field = field
        self.v = v
        self.terms = dict(terms)
        self.diffs = dict(diffs)
        if not self.terms:
            raise InputError("empty complex window")
        self.lo = min(self.terms)
        self.hi = max(self.terms)
        for p in range(self.lo, self.hi + 1):
            if p not in self.terms:
                raise InputError(f"gap in complex window at {p}")
        for p, d in self.diffs.items():
            if d.source != self.terms[p] or d.target != self.terms[p + 1]:
                raise InputError(f"differential at {p} does not match terms")
        self._rank_cache = {}

    def window(self):
        return self.lo, self.hi

    def dd_is_zero(self):
        for p in range(self.lo, self.hi - 1):
            if p in self.diffs and p + 1 in self.diffs:
                if not self.diffs[p + 1].compose(self.diffs[p]).is_zero():
                    return False
        return True

    def is_minimal(self):
        return all(d.is_minimal() for d in self.diffs.values())

    def rank_at(self, p, m):
        """Rank of the realized differential d^p in degree m (cached)."""
        key = (p, m)
        if key not in self._rank_cache:
            d = self.diffs.get(p)
            if d is None or d.source.dim(m) == 0 or d.target.dim(m) == 0:
                self._rank_cache[key] = 0
            else:
                self._rank_cache[key] = linalg.rank(self.field, d.realize(m))
        return self._rank_cache[key]

    def set_rank(self, p, m, r):
        self._rank_cache[(p, m)] = r

    def homology_dim(self, p, m):
        if p not in self.terms:
            return 0
        return self.terms[p].dim(m) - self.rank_at(p, m) - self.rank_at(p - 1, m)

    def check_acyclic(self, positions=None):
        """Homology dimensions at interior positions; empty report = exact."""
        if positions is None:
            positions = range(self.lo + 1, self.hi)
        if not self.dd_is_zero():
            raise InputError("d∘d != 0: not a complex")
        report = {}
        for p in positions:
            if not (self.lo < p < self.hi):
                raise InputError(f"position {p} not interior to window")
            for m in self.terms[p].support():
                h = self.homology_dim(p, m)
                if h:
                    report[(p, m)] = h
        return report

    def prune(self):
        """Split off invertible scalar entries until none remain: the minimal
        model, homotopy equivalent to the input."""
        f = self.field
        terms = dict(self.terms)
        diffs = dict(self.diffs)
        while True:
            hit = None
            for p in sorted(diffs):
                u = diffs[p].unit_entry()
                if u:
                    hit = (p, *u)
                    break
            if hit is None:
                break
            p, i0, j0, c = hit
            d = diffs[p]
            cinv = f.inv(c)
            keep_cols = [j for j in range(d.source.rank) if j != j0]
            keep_rows = [i for i in range(d.target.rank) if i != i0]
            ents = {}
            col_j0 = {i: e for (i, j), e in d.entries.items() if j == j0}
            row_i0 = {j: e for (i, j), e in d.entries.items() if i == i0}
            for j in keep_cols:
                dij = row_i0.get(j)
                for i in keep_rows:
                    ent = d.entries.get((i, j))
                    if dij is not None and i in col_j0:
                        corr = dij.scale(cinv).wedge(col_j0[i])
                        ent = corr.scale(f.neg(f.one)) if ent is None else ent - corr
                    if ent is not None and not ent.is_zero():
                        ents[(i, j)] = ent
            rmap = {i: k for k, i in enumerate(keep_rows)}
            cmap = {j: k for k, j in enumerate(keep_cols)}
            new_src = d.source.drop(keep_cols)
            new_tgt = d.target.drop(keep_rows)
            diffs[p] = ExtMatrix(f, new_src, new_tgt,
                                 {(rmap[i], cmap[j]): e for (i, j), e in ents.items()})
            terms[p] = new_src
            terms[p + 1] = new_tgt
            if p - 1 in diffs:
                e = diffs[p - 1]
                diffs[p - 1] = ExtMatrix(
                    f, e.source, new_src,
                    {(cmap[i], j): ent for (i, j), ent in e.entries.items() if i != j0})
            if p + 1 in diffs:
                e = diffs[p + 1]
                diffs[p + 1] = ExtMatrix(
                    f, new_tgt, e.target,
                    {(i, rmap[j]): ent for (i, j), ent in e.entries.items() if j != i0})
        return EComplex(f, self.v, terms, diffs)

    def dual(self):
        """Termwise Hom into Λ^{v+1}W: positions reflect p -> -p-1."""
        terms = {-p - 1: T.dual() for p, T in self.terms.items()}
        diffs = {}
        for p, d in self.diffs.items():
            diffs[-p - 2] = d.dual()
        return EComplex(self.field, self.v, terms, diffs)

    def euler_profile(self):
        """Degreewise Euler characteristic n -> Σ_p (-1)^p dim (C^p)_n."""
        out = {}
        for p, T in self.terms.items():
            s = 1 if p % 2 == 0 else -1
            for m in T.support():
                out[m] = out.get(m, 0) + s * T.dim(m)
        return {m: x for m, x in out.items() if x}
