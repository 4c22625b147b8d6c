"""Dense exact linear algebra over a prime field or the rationals.

Matrices are numpy arrays: int64 with entries in [0, p) over F_p (products of
two entries fit in int64 for p < 2^31 ... well below; we require p < 2^31 and
rely on p^2 < 2^62), dtype=object holding Fractions over Q.  All eliminations
are exact; row order and pivot choice are deterministic.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def zeros(field, m, n):
    if field.kind == "prime":
        return np.zeros((m, n), dtype=np.int64)
    A = np.empty((m, n), dtype=object)
    A[:] = Fraction(0)
    return A


def from_rows(field, rows, ncols):
    A = zeros(field, len(rows), ncols)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            A[i, j] = x
    return A


def mat_mul(field, A, B):
    if field.kind == "prime":
        p = field.p
        inner = A.shape[1]
        if inner == 0:
            return zeros(field, A.shape[0], B.shape[1])
        # accumulated dot products must fit in int64
        if p * p * inner < 2**62:
            return (A @ B) % p
        return ((A.astype(object) @ B.astype(object)) % p).astype(np.int64)
    return A @ B


def _swap(A, i, j):
    if i != j:
        A[[i, j], :] = A[[j, i], :]


def rref(field, A):
    """Reduced row echelon form.  Returns (R, pivots) with R = A's nonzero
    rows fully reduced (unit pivots, zeros above and below)."""
    A = A.copy()
    m, n = A.shape
    pivots = []
    r = 0
    if field.kind == "prime":
        p = field.p
        A %= p
        for c in range(n):
            if r == m:
                break
            nz = np.flatnonzero(A[r:, c])
            if nz.size == 0:
                continue
            _swap(A, r, r + int(nz[0]))
            A[r] = A[r] * int(pow(int(A[r, c]), -1, p)) % p
            rows = np.flatnonzero(A[:, c])
            rows = rows[rows != r]
            if rows.size:
                A[rows] = (A[rows] - np.outer(A[rows, c], A[r])) % p
            pivots.append(c)
            r += 1
    else:
        for c in range(n):
            if r == m:
                break
            nz = [i for i in range(r, m) if A[i, c] != 0]
            if not nz:
                continue
            _swap(A, r, nz[0])
            A[r] = A[r] / A[r, c]
            for i in range(m):
                if i != r and A[i, c] != 0:
                    A[i] = A[i] - A[i, c] * A[r]
            pivots.append(c)
            r += 1
    return A[: len(pivots)], pivots


def rank(field, A):
    """Rank by forward elimination only (cheaper than rref)."""
    if 0 in A.shape:
        return 0
    A = A.copy()
    m, n = A.shape
    r = 0
    if field.kind == "prime":
        p = field.p
        A %= p
        for c in range(n):
            if r == m:
                break
            nz = np.flatnonzero(A[r:, c])
            if nz.size == 0:
                continue
            _swap(A, r, r + int(nz[0]))
            inv = int(pow(int(A[r, c]), -1, p))
            rows = r + 1 + np.flatnonzero(A[r + 1:, c])
            if rows.size:
                A[rows] = (A[rows] - np.outer(A[rows, c] * inv % p, A[r])) % p
            r += 1
    else:
        for c in range(n):
            if r == m:
                break
            nz = [i for i in range(r, m) if A[i, c] != 0]
            if not nz:
                continue
            _swap(A, r, nz[0])
            for i in range(r + 1, m):
                if A[i, c] != 0:
                    A[i] = A[i] - (A[i, c] / A[r, c]) * A[r]
            r += 1
    return r


def kernel_basis(field, A):
    """Right kernel of A.

    Returns (K, coord_cols): rows of K form a basis of {x : A x = 0}; the
    matrix K restricted to the columns coord_cols is the identity, so the
    coordinates of any kernel vector w in this basis are w[coord_cols].
    """
    m, n = A.shape
    R, pivots = rref(field, A)
    free = [c for c in range(n) if c not in set(pivots)]
    K = zeros(field, len(free), n)
    for row, f in enumerate(free):
        K[row, f] = field.one
        for i, c in enumerate(pivots):
            K[row, c] = field.neg(R[i, f])
    return K, free


def reduce_mod_rowspace(field, R, pivots, V):
    """Reduce the rows of V modulo the row space of the rref matrix R."""
    if len(pivots) == 0 or V.shape[0] == 0:
        return V.copy()
    W = V - V[:, pivots] @ R
    if field.kind == "prime":
        W %= field.p
    return W
