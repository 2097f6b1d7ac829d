import itertools

import numpy as np
import pytest

from cmpl.biq.monomials import PeriodMonomial
from cmpl.biq.structures import (INFINITE, SplitBiQ, SubspacePresentation, cm_lie_biq, count_biq_subspaces,
                                 de_rham_biq, direct_sum, is_biq_subspace, isotypic_blocks, isotypic_partition,
                                 period_of_line, restrict, subspace_dimension, sym2, tate_twist, tensor, torus_biq)
from cmpl.cm.lattice import RelationLattice
from cmpl.core.errors import DependentRows, InputError, NotBiQ, SymbolMismatch
from cmpl.exact.fields import NumberField

L = PeriodMonomial.two_pi_i()
t1, t2, t3 = (PeriodMonomial.symbol(j) for j in (1, 2, 3))


def test_isotypic_partition():
    assert isotypic_partition(SplitBiQ([t1, t1, L])) == [[1, 2], [3]]
    siegel = SplitBiQ([t1 * t1 / L, t1 * t2 / L, t2 * t2 / L])
    assert isotypic_partition(siegel) == [[1], [2], [3]]


def test_partition_modulo_relations():
    siegel = SplitBiQ([t1 * t1 / L, t1 * t2 / L, t2 * t2 / L])
    # t2 = L / t1: t1 t2 / L is algebraic, t1^2 / L and t2^2 / L = L / t1^2 are not related
    R = RelationLattice.from_rows(2, [[-1, 1, 1]])
    assert isotypic_partition(siegel, R) == [[1], [2], [3]]
    # t1 = t2 merges everything
    R = RelationLattice.from_rows(2, [[0, 1, -1]])
    assert isotypic_partition(siegel, R) == [[1, 2, 3]]


def test_symbol_mismatch():
    with pytest.raises(SymbolMismatch):
        isotypic_partition(SplitBiQ([t1, t3]), RelationLattice.empty(2))


def test_constructions():
    assert tate_twist(SplitBiQ([t1]), 1) == SplitBiQ([t1 * L])
    assert sym2(SplitBiQ([t1, t2])) == SplitBiQ([t1 * t1, t1 * t2, t2 * t2])
    assert tensor(SplitBiQ([L]), SplitBiQ([L])) == SplitBiQ([L * L])
    assert restrict(SplitBiQ([t1, t2, t3]), [3, 1]) == SplitBiQ([t3, t1])
    assert de_rham_biq(1) == SplitBiQ([t1, L / t1])
    assert cm_lie_biq(2) == SplitBiQ([t1, t2])
    with pytest.raises(InputError):
        restrict(SplitBiQ([t1]), [2])
    with pytest.raises(InputError):
        SplitBiQ([])
    with pytest.raises(InputError):
        SplitBiQ.from_dict({'labels': [t1.as_dict()], 'dim': 'one'})
    with pytest.raises(InputError):
        SplitBiQ.from_dict({'labels': [t1.as_dict()], 'dim': 2})
    assert SplitBiQ.from_dict({'labels': [t1.as_dict()], 'dim': 1}) == SplitBiQ([t1])


def test_biq_subspaces():
    S = SplitBiQ([t1, t2, t3])
    assert is_biq_subspace(SubspacePresentation.coordinate(S, [1, 3]))
    assert not is_biq_subspace(SubspacePresentation(SplitBiQ([t1, t2]), [[1, 1]]))
    assert is_biq_subspace(SubspacePresentation(SplitBiQ([t1, t1]), [[1, 1]]))


def test_subspace_over_number_field():
    K = NumberField([1, 0, 1])
    i = K.gen
    S = SplitBiQ([t1, t1, t2])
    V = SubspacePresentation(S, [[K.one, i, K.zero]])
    assert V.field == K
    assert is_biq_subspace(V)
    assert not is_biq_subspace(SubspacePresentation(S, [[K.one, K.zero, i]]))


def test_dependent_spanning_vectors():
    with pytest.raises(DependentRows):
        SubspacePresentation(SplitBiQ([t1, t2]), [[1, 2], [2, 4]])


def test_count():
    assert count_biq_subspaces(SplitBiQ([t1, t2, t3])) == 8
    assert count_biq_subspaces(SplitBiQ([t1, t1])) == INFINITE
    assert count_biq_subspaces(SplitBiQ([t1])) == 2


def test_period_of_line():
    assert period_of_line(SubspacePresentation(SplitBiQ([t1, t2, t3]), [[0, 1, 0]])) == t2
    assert period_of_line(SubspacePresentation(SplitBiQ([t1, t1]), [[1, 2]])) == t1
    with pytest.raises(NotBiQ):
        period_of_line(SubspacePresentation(SplitBiQ([t1, t2]), [[1, 1]]))
    with pytest.raises(InputError):
        period_of_line(SubspacePresentation.coordinate(SplitBiQ([t1, t2]), [1, 2]))


P = 3


def _balanced(a: int) -> int:
    return a if a <= P // 2 else a - P


def _subspaces(n: int):
    """Every subspace of F_p^n as the set of its vectors"""
    vectors = list(itertools.product(range(P), repeat=n))
    found = {frozenset([(0,) * n])}
    frontier = list(found)
    while frontier:
        bigger = []
        for V in frontier:
            for v in vectors:
                if v in V:
                    continue
                W = frozenset(tuple((a + c * b) % P for a, b in zip(w, v)) for w in V for c in range(P))
                if W not in found:
                    found.add(W)
                    bigger.append(W)
        frontier = bigger
    return found


def _rref(V, n: int):
    rows = [list(v) for v in V if any(v)]
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, P)
        rows[r] = [a * inv % P for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [(a - f * b) % P for a, b in zip(rows[i], rows[r])]
        r += 1
    return rows[:r]


def _decomposable(V, labels) -> bool:
    """V is the direct sum of its intersections with the coordinate blocks of equal labels"""
    size = 1
    for label in set(labels):
        block = {k for k in range(len(labels)) if labels[k] == label}
        size *= sum(1 for v in V if all(v[k] == 0 for k in range(len(v)) if k not in block))
    return size == len(V)


def _label_patterns(n: int):
    """One labelling per set partition of the n lines"""
    alphabet = [t1, t2, t3, L]
    for pattern in itertools.product(range(n), repeat=n):
        if all(pattern[k] <= max(pattern[:k], default=-1) + 1 for k in range(n)):
            yield [alphabet[k] for k in pattern]


@pytest.mark.parametrize('n', [1, 2, 3, 4])
def test_subspaces_against_enumeration_over_f3(n):
    subspaces = _subspaces(n)
    for labels in _label_patterns(n):
        S = SplitBiQ(labels)
        decomposable = 0
        for V in subspaces:
            expected = _decomposable(V, labels)
            decomposable += expected
            if len(V) == 1:
                continue
            # the lifted echelon basis has the same support pattern, so decomposability agrees over Q
            basis = [[_balanced(a) for a in row] for row in _rref(V, n)]
            assert is_biq_subspace(SubspacePresentation(S, basis)) == expected, (labels, basis)
        count = count_biq_subspaces(S)
        if count == INFINITE:
            assert decomposable > 2 ** len(isotypic_partition(S))
        else:
            assert decomposable == count


def test_generic_count():
    for n in range(1, 6):
        S = SplitBiQ([PeriodMonomial.symbol(j) for j in range(1, n + 1)])
        assert count_biq_subspaces(S) == 2 ** n
    for labels in itertools.product([t1, t2, t3], repeat=3):
        expected = 8 if len(set(labels)) == 3 else INFINITE
        assert count_biq_subspaces(SplitBiQ(list(labels))) == expected


def test_torus_and_sums():
    T = torus_biq(2)
    assert T == SplitBiQ([L, L])
    assert count_biq_subspaces(T) == INFINITE
    assert direct_sum(torus_biq(1), de_rham_biq(1)) == SplitBiQ([L, t1, L / t1])
    blocks = isotypic_blocks(SplitBiQ([t1, L, t1]))
    assert [(block, label) for block, label in blocks] == [([1, 3], t1), ([2], L)]
    assert subspace_dimension(SubspacePresentation(SplitBiQ([t1, t2]), [[1, 0], [0, 1]])) == 2


def _random_structure(rng, n: int) -> SplitBiQ:
    return SplitBiQ([PeriodMonomial(int(rng.integers(-1, 2)), [int(e) for e in rng.integers(-1, 2, 2)])
                     for _ in range(n)])


def test_relations_coarsen_the_partition():
    rng = np.random.default_rng(17)
    for _ in range(100):
        S = _random_structure(rng, int(rng.integers(1, 6)))
        R = RelationLattice.from_rows(2, rng.integers(-2, 3, (int(rng.integers(1, 3)), 3)).tolist())
        coarse = isotypic_partition(S, R)
        for block in isotypic_partition(S):
            assert any(set(block) <= set(c) for c in coarse), (S, R)


def test_sym2_commutes_with_tate_twist():
    rng = np.random.default_rng(23)
    for _ in range(50):
        S = _random_structure(rng, int(rng.integers(1, 5)))
        assert sym2(tate_twist(S, 1)) == tate_twist(sym2(S), 2)
