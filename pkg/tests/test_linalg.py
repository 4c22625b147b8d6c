import numpy as np
import pytest

from bgg import linalg
from bgg.fields import RationalField, default_field

FIELDS = [default_field(), RationalField()]


def _random_matrix(field, rng, m, n):
    A = linalg.zeros(field, m, n)
    for i in range(m):
        for j in range(n):
            if rng.integers(0, 3):
                A[i, j] = field(int(rng.integers(-5, 6)))
    return A


@pytest.mark.parametrize("field", FIELDS)
def test_kernel_is_kernel(field):
    rng = np.random.default_rng(3)
    for _ in range(25):
        m, n = int(rng.integers(1, 7)), int(rng.integers(1, 7))
        A = _random_matrix(field, rng, m, n)
        K, coords = linalg.kernel_basis(field, A)
        r = linalg.rank(field, A)
        assert K.shape[0] == n - r
        if K.shape[0]:
            prod = linalg.mat_mul(field, A, K.T)
            assert all(field.is_zero(prod[i, j])
                       for i in range(m) for j in range(K.shape[0]))
            # coordinate columns carry the identity
            sub = K[:, coords]
            assert all(sub[i, j] == (field.one if i == j else field.zero)
                       for i in range(K.shape[0]) for j in range(K.shape[0]))


@pytest.mark.parametrize("field", FIELDS)
def test_rref_reduces(field):
    rng = np.random.default_rng(4)
    for _ in range(20):
        m, n = int(rng.integers(1, 6)), int(rng.integers(1, 6))
        A = _random_matrix(field, rng, m, n)
        R, piv = linalg.rref(field, A)
        assert len(piv) == linalg.rank(field, A)
        for i, c in enumerate(piv):
            assert R[i, c] == field.one
            col = [R[k, c] for k in range(len(piv)) if k != i]
            assert all(field.is_zero(x) for x in col)
        V = _random_matrix(field, rng, 3, n)
        W = linalg.reduce_mod_rowspace(field, R, piv, V)
        assert all(field.is_zero(W[i, c]) for i in range(3) for c in piv)


def test_rank_known():
    f = default_field()
    A = linalg.from_rows(f, [[1, 2, 3], [2, 4, 6], [0, 1, 1]], 3)
    assert linalg.rank(f, A) == 2
