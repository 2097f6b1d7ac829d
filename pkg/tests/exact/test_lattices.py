import itertools

import numpy as np
import pytest
import sympy

from cmpl.core.errors import DependentRows
from cmpl.exact.matrices import (IntMatrix, hnf, hnf_basis, hnf_contains, is_saturated, kernel_lattice, lll_reduce,
                                 rank, saturate, smith_invariants, span_contains)


def _brute_force_kernel(A: IntMatrix, bound: int = 2):
    return [v for v in itertools.product(range(-bound, bound + 1), repeat=A.cols)
            if all(sum(a * b for a, b in zip(A.row(i), v)) == 0 for i in range(A.rows))]


def test_hnf_identity():
    H, U = hnf(IntMatrix.identity(3))
    assert H == IntMatrix.identity(3)
    assert U == IntMatrix.identity(3)


def test_hnf_small():
    A = IntMatrix([[2, 4], [1, 3]])
    H, U = hnf(A)
    assert H == IntMatrix([[1, 1], [0, 2]])
    assert U @ A == H
    # unimodular
    u = U.tolist()
    assert abs(u[0][0] * u[1][1] - u[0][1] * u[1][0]) == 1


def test_hnf_zero():
    H, U = hnf(IntMatrix.zeros(2, 2))
    assert H == IntMatrix.zeros(2, 2)
    assert U == IntMatrix.identity(2)
    assert hnf_basis(IntMatrix.zeros(2, 2)).rows == 0


def test_kernel_examples():
    A = IntMatrix([[1, 0, 1, 0], [0, 1, 0, 1]])
    K = kernel_lattice(A)
    assert K.rows == 2
    assert hnf_contains(K, [1, 0, -1, 0])
    assert (A @ K.T).is_zero()
    # every small kernel vector lies in the lattice, so the basis is saturated
    assert all(hnf_contains(K, v) for v in _brute_force_kernel(A))

    assert kernel_lattice(IntMatrix.identity(3)).rows == 0
    assert kernel_lattice(IntMatrix.zeros(1, 3)) == IntMatrix.identity(3)


def test_kernel_is_saturated():
    A = IntMatrix([[2, 4, 6]])
    K = kernel_lattice(A)
    assert K.rows == 2
    assert is_saturated(K)
    assert all(hnf_contains(K, v) for v in _brute_force_kernel(A))


def test_saturation_and_membership():
    assert saturate(IntMatrix([[2, 4]])) == IntMatrix([[1, 2]])
    assert not is_saturated(IntMatrix([[2, 0]]))
    assert smith_invariants(IntMatrix([[2, 0], [0, 3]])) == [1, 6]

    B = IntMatrix([[2, 0], [0, 3]])
    assert hnf_contains(B, [4, 3])
    assert not hnf_contains(B, [1, 0])
    assert span_contains(IntMatrix([[2, 0]]), [1, 0])
    assert not span_contains(IntMatrix([[2, 0]]), [0, 1])
    assert rank(IntMatrix([[1, 2], [2, 4]])) == 1


def test_lll():
    assert lll_reduce(IntMatrix.identity(3)) == IntMatrix.identity(3)

    B = IntMatrix([[1, 0], [10 ** 6, 1]])
    R = lll_reduce(B)
    assert max(abs(v) for v in R.entries.flat) == 1
    assert hnf_basis(R) == hnf_basis(B)


def test_lll_dependent_rows():
    with pytest.raises(DependentRows):
        lll_reduce(IntMatrix([[1, 2], [2, 4]]))


def test_empty_matrix_keeps_columns():
    Z = IntMatrix.zeros(0, 3)
    assert Z.cols == 3
    assert Z.rows == 0
    assert IntMatrix.from_json(Z.as_json(), 3) == Z


def _random_matrices(seed: int, count: int):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        rows, cols = (int(k) for k in rng.integers(1, 6, 2))
        # sparse entries produce rank deficient matrices
        entries = rng.integers(-9, 10, (rows, cols)) * (rng.random((rows, cols)) < 0.7)
        yield IntMatrix(entries.tolist(), cols)


def test_hnf_is_idempotent():
    for A in _random_matrices(7, 50):
        H, U = hnf(A)
        assert U @ A == H
        assert hnf(H)[0] == H
        B = hnf_basis(A)
        assert B.rows == 0 or hnf_basis(B) == B


def test_kernel_rank_against_rational_elimination():
    for A in _random_matrices(11, 50):
        r = sympy.Matrix(A.tolist()).rank()
        assert rank(A) == r
        K = kernel_lattice(A)
        assert K.rows == A.cols - r
        assert K.rows == 0 or (A @ K.T).is_zero()
        assert K.rows == 0 or is_saturated(K)
