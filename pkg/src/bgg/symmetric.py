"""Graded pieces and multiplication maps of f.g. graded modules over the
polynomial ring S = k[x_0..x_v], given by a presentation matrix.

Everything is degreewise linear algebra on realization matrices; no Groebner
bases.  Cokernel bases are reduced-row-echelon pivots with graded-lex tie
breaking, so bases are reproducible across runs.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import linalg
from .errors import InputError


@lru_cache(maxsize=None)
def s_monomials(v: int, d: int):
    """Exponent tuples of degree d in v+1 variables, graded-lex descending."""
    if d < 0:
        return ()
    if v == 0:
        return ((d,),)
    out = []
    for e0 in range(d, -1, -1):
        for rest in s_monomials(v - 1, d - e0):
            out.append((e0,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def s_monomial_index(v: int, d: int):
    return {m: i for i, m in enumerate(s_monomials(v, d))}


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


class SPolynomial:
    """Homogeneous polynomial: sparse {exponent tuple: coefficient}."""

    __slots__ = ("v", "field", "degree", "terms")

    def __init__(self, v, field, degree, terms=None):
        self.v = v
        self.field = field
        self.degree = degree
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if len(e) != v + 1 or sum(e) != degree or min(e) < 0:
                    raise InputError(f"bad exponent vector {e} for degree {degree}")
                if not field.is_zero(c):
                    self.terms[tuple(e)] = c

    @classmethod
    def zero(cls, v, field, degree=0):
        return cls(v, field, degree)

    @classmethod
    def variable(cls, v, field, i, power=1):
        e = [0] * (v + 1)
        e[i] = power
        return cls(v, field, power, {tuple(e): field.one})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if other.degree != self.degree:
            raise InputError("degree mismatch in polynomial sum")
        f = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = f.add(terms.get(e, f.zero), c)
            if f.is_zero(s):
                terms.pop(e, None)
            else:
                terms[e] = s
        return SPolynomial(self.v, f, self.degree, terms)

    def mul(self, other):
        f = self.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                s = f.add(out.get(e, f.zero), f.mul(c1, c2))
                if f.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return SPolynomial(self.v, f, self.degree + other.degree, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        def mono(e):
            s = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}"
                         for i, k in enumerate(e) if k)
            return s or "1"
        return " + ".join(f"{c}*{mono(e)}" if c != self.field.one else mono(e)
                          for e, c in sorted(self.terms.items(), reverse=True))


class SPresentation:
    """M = coker( ⊕_j S(-a_j) --φ--> ⊕_i S(-b_i) ), φ[i][j] homogeneous of
    degree a_j - b_i."""

    def __init__(self, v, field, gens, rels, matrix):
        self.v = v
        self.field = field
        self.gens = tuple(int(b) for b in gens)
        self.rels = tuple(int(a) for a in rels)
        self.matrix = matrix
        if len(matrix) != len(self.gens) or any(len(r) != len(self.rels) for r in matrix):
            raise InputError("presentation matrix shape mismatch")
        for i, b in enumerate(self.gens):
            for j, a in enumerate(self.rels):
                ent = matrix[i][j]
                if ent is not None and not ent.is_zero() and ent.degree != a - b:
                    raise InputError(f"entry ({i},{j}) has degree {ent.degree}, "
                                     f"expected {a - b}")

    def min_gen_degree(self):
        return min(self.gens) if self.gens else 0

    def max_gen_degree(self):
        return max(self.gens) if self.gens else 0


class GradedPiece:
    """Exact basis of M_d: coset representatives of the cokernel.

    row index space = [(i, monomial of degree d - b_i) for each generator i];
    rel_rref / rel_pivots describe the realized relation row space; the basis
    of M_d is the unit vectors at the free row coordinates.
    """

    def __init__(self, degree, row_basis, free_cols, rel_rref, rel_pivots, field):
        self.degree = degree
        self.rows = row_basis        # list of (gen index, exponent tuple)
        self.free = free_cols        # indices into rows giving the basis of M_d
        self.rel_rref = rel_rref
        self.rel_pivots = rel_pivots
        self.field = field
        self.dim = len(free_cols)

    def project(self, vectors):
        """Reduce ambient row vectors mod relations; coordinates in the basis."""
        W = linalg.reduce_mod_rowspace(self.field, self.rel_rref, self.rel_pivots, vectors)
        return W[:, self.free]


class GradedModule:
    """Degreewise realization of an SPresentation with caching."""

    def __init__(self, pres: SPresentation):
        self.pres = pres
        self.v = pres.v
        self.field = pres.field
        self._pieces = {}
        self._mult = {}

    def _rows(self, d):
        return [(i, e) for i, b in enumerate(self.pres.gens)
                for e in s_monomials(self.v, d - b)]

    def piece(self, d) -> GradedPiece:
        if d in self._pieces:
            return self._pieces[d]
        f = self.field
        rows = self._rows(d)
        rowidx = {re: k for k, re in enumerate(rows)}
        cols = []
        for j, a in enumerate(self.pres.rels):
            for e in s_monomials(self.v, d - a):
                vec = linalg.zeros(f, 1, len(rows))[0]
                for i in range(len(self.pres.gens)):
                    ent = self.pres.matrix[i][j]
                    if ent is None or ent.is_zero():
                        continue
                    for ee, c in ent.terms.items():
                        vec[rowidx[(i, mono_mul(e, ee))]] = f.add(
                            vec[rowidx[(i, mono_mul(e, ee))]], c)
                cols.append(vec)
        A = linalg.from_rows(f, cols, len(rows)) if cols else linalg.zeros(f, 0, len(rows))
        R, piv = linalg.rref(f, A)
        free = [k for k in range(len(rows)) if k not in set(piv)]
        gp = GradedPiece(d, rows, free, R, piv, f)
        self._pieces[d] = gp
        return gp

    def dim(self, d) -> int:
        return self.piece(d).dim

    def mult_maps(self, d):
        """Matrices A_0..A_v of multiplication x_α : M_d -> M_{d+1} in the
        chosen bases (shape dim M_{d+1} x dim M_d)."""
        if d in self._mult:
            return self._mult[d]
        f = self.field
        src, tgt = self.piece(d), self.piece(d + 1)
        tgt_idx = {re: k for k, re in enumerate(tgt.rows)}
        maps = []
        for alpha in range(self.v + 1):
            cols = linalg.zeros(f, src.dim, len(tgt.rows))
            for c, k in enumerate(src.free):
                i, e = src.rows[k]
                e2 = list(e)
                e2[alpha] += 1
                cols[c, tgt_idx[(i, tuple(e2))]] = f.one
            maps.append(tgt.project(cols).T.copy())
        self._mult[d] = maps
        return maps

    def presented_dim_check(self, d) -> bool:
        """dim M_d == Σ_i C(d-b_i+v, v) - rank φ_d (alternating count)."""
        from math import comb
        amb = sum(comb(d - b + self.v, self.v) for b in self.pres.gens if d - b >= 0)
        return self.dim(d) == amb - len(self.piece(d).rel_pivots)
