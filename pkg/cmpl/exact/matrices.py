from __future__ import annotations

import logging
from typing import List, Sequence, Tuple, Union

import numpy as np
from flint import fmpz_mat
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from cmpl.core.errors import DependentRows, InputError

LLL_DELTA = 0.99
LLL_ETA = 0.51

logger = logging.getLogger('Lattices')


class IntMatrix:
    """
    Integer matrix with arbitrary precision entries, stored as numpy object array. A matrix may have zero rows,
    e.g. the basis of a trivial lattice, but always knows its column count.
    """

    def __init__(self, rows: Union[Sequence[Sequence[int]], np.ndarray], cols: int = None):
        arr = np.array([[int(v) for v in row] for row in rows], dtype=object)
        if arr.size == 0:
            if cols is None:
                cols = arr.shape[1] if arr.ndim == 2 else 0
            arr = np.zeros((len(rows), cols), dtype=object)
        elif arr.ndim != 2:
            raise InputError('Matrix rows must have equal length')
        self.entries = arr

    @staticmethod
    def identity(n: int) -> IntMatrix:
        return IntMatrix(np.eye(n, dtype=int).tolist(), n)

    @staticmethod
    def zeros(rows: int, cols: int) -> IntMatrix:
        return IntMatrix([[0] * cols for _ in range(rows)], cols)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def tolist(self) -> List[List[int]]:
        return [[int(v) for v in row] for row in self.entries]

    def row(self, i: int) -> List[int]:
        return [int(v) for v in self.entries[i]]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(self.entries.T.tolist(), self.rows)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries.flat)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise InputError(f'Cannot multiply {self.rows}x{self.cols} and {other.rows}x{other.cols} matrices')
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix(self.entries.dot(other.entries).tolist(), other.cols)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntMatrix):
            return self.entries.shape == other.entries.shape and self.tolist() == other.tolist()
        return False

    def __hash__(self):
        return hash((self.cols, tuple(map(tuple, self.tolist()))))

    def __repr__(self):
        return f'IntMatrix({self.tolist()})'

    def as_json(self) -> List[List[str]]:
        return [[str(v) for v in row] for row in self.tolist()]

    @staticmethod
    def from_json(raw: List[List[Union[str, int]]], cols: int = None) -> IntMatrix:
        return IntMatrix([[int(v) for v in row] for row in raw], cols)


def _exgcd(a: int, b: int) -> Tuple[int, int, int]:
    """g, s, t with s*a + t*b = g = gcd(a, b) >= 0"""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b != 0:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hnf(A: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """
    Row Hermite normal form. Pivots are positive, entries above a pivot are reduced into [0, pivot) and zero rows
    are moved to the bottom.
    :return: (H, U) with H = U*A and U unimodular
    """
    H = A.entries.copy()
    m, n = H.shape
    U = np.eye(m, dtype=int).astype(object)

    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if H[i, c] == 0:
                continue
            g, s, t = _exgcd(H[r, c], H[i, c])
            a, b = H[r, c] // g, H[i, c] // g
            # unimodular 2x2 step [[s, t], [-b, a]] with determinant s*a + t*b = 1
            H[r], H[i] = s * H[r] + t * H[i], -b * H[r] + a * H[i]
            U[r], U[i] = s * U[r] + t * U[i], -b * U[r] + a * U[i]
        if H[r, c] == 0:
            continue
        if H[r, c] < 0:
            H[r] = -H[r]
            U[r] = -U[r]
        for i in range(r):
            q = H[i, c] // H[r, c]
            if q != 0:
                H[i] = H[i] - q * H[r]
                U[i] = U[i] - q * U[r]
        r += 1

    H, U = IntMatrix(H.tolist(), n), IntMatrix(U.tolist(), m)
    assert U @ A == H, 'Hermite normal form does not satisfy H = U*A'
    return H, U


def rank(A: IntMatrix) -> int:
    H, _ = hnf(A)
    return sum(1 for i in range(H.rows) if any(v != 0 for v in H.entries[i]))


def hnf_basis(A: IntMatrix) -> IntMatrix:
    """HNF with zero rows removed, a canonical basis of the lattice spanned by the rows of A"""
    H, _ = hnf(A)
    return IntMatrix([H.row(i) for i in range(H.rows) if any(v != 0 for v in H.entries[i])], A.cols)


def kernel_lattice(A: IntMatrix) -> IntMatrix:
    """
    Saturated integer kernel {v : A*v = 0}. Rows of the transformation of hnf(A^T) that belong to zero rows of
    the normal form span the kernel, and unimodularity of the transformation makes the quotient torsion free.
    :return: kernel basis in Hermite normal form with cols(A) - rank(A) rows
    """
    n = A.cols
    if A.rows == 0:
        return IntMatrix.identity(n)
    H, U = hnf(A.T)
    kernel = [U.row(i) for i in range(H.rows) if all(v == 0 for v in H.entries[i])]
    if len(kernel) == 0:
        return IntMatrix.zeros(0, n)
    K = hnf_basis(IntMatrix(kernel, n))
    assert (A @ K.T).is_zero(), 'Kernel basis is not annihilated'
    return K


def saturate(B: IntMatrix) -> IntMatrix:
    """Rational span of the rows of B intersected with the integer lattice"""
    if B.rows == 0:
        return IntMatrix.zeros(0, B.cols)
    return kernel_lattice(kernel_lattice(B))


def hnf_contains(B: IntMatrix, v: Sequence[int]) -> bool:
    """Membership of v in the lattice spanned by the rows of B"""
    v = np.array([int(c) for c in v], dtype=object)
    if B.rows == 0:
        return all(c == 0 for c in v)
    H = hnf_basis(B)
    for i in range(H.rows):
        row = H.entries[i]
        c = next(j for j in range(H.cols) if row[j] != 0)
        if v[c] % row[c] != 0:
            return False
        v = v - (v[c] // row[c]) * row
    return all(c == 0 for c in v)


def span_contains(B: IntMatrix, v: Sequence[int]) -> bool:
    """Membership of v in the rational span of the rows of B"""
    return hnf_contains(saturate(B), v)


def smith_invariants(A: IntMatrix) -> List[int]:
    """Invariant factors of A (diagonal of its Smith normal form, zeros omitted)"""
    if A.rows == 0 or A.cols == 0:
        return []
    factors = invariant_factors(Matrix(A.tolist()), domain=ZZ)
    return [abs(int(d)) for d in factors if d != 0]


def is_saturated(B: IntMatrix) -> bool:
    """A lattice is saturated iff all invariant factors of its basis are 1"""
    return all(d == 1 for d in smith_invariants(B))


def lll_reduce(B: IntMatrix) -> IntMatrix:
    """
    LLL reduction with delta 0.99 through FLINT, keeping the lattice. The result is checked by comparing Hermite
    normal forms.
    """
    if B.rows == 0:
        return B
    if rank(B) < B.rows:
        raise DependentRows(f'LLL requires linearly independent rows, rank is {rank(B)} < {B.rows}')
    reduced = lll_rows(B.tolist())
    R = IntMatrix(reduced, B.cols)
    assert hnf_basis(R) == hnf_basis(B), 'LLL changed the lattice'
    return R


def lll_rows(rows: List[List[int]]) -> List[List[int]]:
    m = fmpz_mat(rows)
    reduced = m.lll(delta=LLL_DELTA, eta=LLL_ETA)
    nrows, ncols = reduced.nrows(), reduced.ncols()
    entries = [int(v) for v in reduced.entries()]
    return [entries[i * ncols:(i + 1) * ncols] for i in range(nrows)]
