from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, TYPE_CHECKING, Tuple, Union

import networkx as nx

from cmpl.biq.monomials import PeriodMonomial
from cmpl.core.errors import DependentRows, InputError, NotBiQ, SymbolMismatch
from cmpl.exact.fields import AlgebraicNumber, NumberField, field_rank

if TYPE_CHECKING:
    from cmpl.cm.lattice import RelationLattice

INFINITE = 'infinite'

logger = logging.getLogger('BiQ')


class SplitBiQ:

    def __init__(self, labels: Sequence[PeriodMonomial]):
        """
        Split bi-Qbar-structure (C^n; p_1, ..., p_n): coordinate line i is rational for both structures and has
        period p_i.
        """
        if len(labels) == 0:
            raise InputError('A split bi-Qbar-structure needs at least one line')
        self.labels: List[PeriodMonomial] = list(labels)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def n_symbols(self) -> int:
        return max(label.n_symbols for label in self.labels)

    def __eq__(self, other) -> bool:
        if isinstance(other, SplitBiQ):
            return self.labels == other.labels
        return False

    def __hash__(self):
        return hash(tuple(self.labels))

    def __repr__(self):
        return f'(C^{self.dim}; {", ".join(str(label) for label in self.labels)})'

    def as_dict(self):
        return {
            'dim': self.dim,
            'labels': [label.as_dict() for label in self.labels]
        }

    @staticmethod
    def from_dict(raw: dict) -> SplitBiQ:
        try:
            labels = [PeriodMonomial.from_dict(label) for label in raw['labels']]
            dim = int(raw['dim']) if 'dim' in raw else len(labels)
        except (KeyError, TypeError, ValueError) as ex:
            raise InputError(f'Invalid bi-Qbar-structure {raw}: {ex}')
        if dim != len(labels):
            raise InputError(f'Dimension {raw["dim"]} does not match {len(labels)} labels')
        return SplitBiQ(labels)


class SubspacePresentation:

    def __init__(self, ambient: SplitBiQ, basis: Sequence[Sequence[Union[AlgebraicNumber, int, Fraction]]]):
        """
        Subspace V of a split bi-Qbar-structure, rational for the first structure.
        :param ambient: the surrounding structure
        :param basis: spanning vectors of V in the coordinates of the ambient structure (one list per vector)
        """
        self.ambient = ambient
        self.basis = _as_field_vectors(basis, ambient.dim)
        if field_rank(self.basis) != len(self.basis):
            raise DependentRows('Spanning vectors of the subspace are linearly dependent')

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def field(self) -> NumberField:
        return self.basis[0][0].parent if self.dim > 0 else NumberField.rationals()

    def support(self) -> List[int]:
        """1-based coordinates in which some spanning vector is nonzero"""
        return [i + 1 for i in range(self.ambient.dim) if any(not v[i].is_zero() for v in self.basis)]

    def intersection_dimension(self, coordinates: Sequence[int]) -> int:
        """dim(V cap span(e_i, i in coordinates)) = dim V - rank of the spanning vectors outside of coordinates"""
        outside = [i for i in range(self.ambient.dim) if i + 1 not in set(coordinates)]
        return self.dim - field_rank([[v[i] for i in outside] for v in self.basis])

    def __repr__(self):
        return f'SubspacePresentation(dim {self.dim} in {self.ambient})'

    @staticmethod
    def coordinate(ambient: SplitBiQ, indices: Sequence[int]) -> SubspacePresentation:
        """span(e_i, i in indices), 1-based"""
        return SubspacePresentation(ambient, [[1 if k == i else 0 for k in range(1, ambient.dim + 1)]
                                              for i in indices])


def _as_field_vectors(basis, n: int) -> List[List[AlgebraicNumber]]:
    fields = {c.parent for v in basis for c in v if isinstance(c, AlgebraicNumber)}
    if len(fields) > 1:
        raise InputError(f'Spanning vectors mix elements of {len(fields)} different fields')
    K = fields.pop() if fields else NumberField.rationals()
    res = []
    for v in basis:
        if len(v) != n:
            raise InputError(f'Spanning vector of length {len(v)} in a structure of dimension {n}')
        res.append([c if isinstance(c, AlgebraicNumber) else K.element(Fraction(c)) for c in v])
    return res


# Constructions

def tensor(S1: SplitBiQ, S2: SplitBiQ) -> SplitBiQ:
    """Lines e_i x f_j in lexicographic order with period p_i * q_j"""
    return SplitBiQ([a * b for a in S1.labels for b in S2.labels])


def sym2(S: SplitBiQ) -> SplitBiQ:
    """Lines e_i e_j for i <= j in lexicographic order with period p_i * p_j"""
    return SplitBiQ([S.labels[i] * S.labels[j] for i in range(S.dim) for j in range(i, S.dim)])


def tate_twist(S: SplitBiQ, k: int) -> SplitBiQ:
    """S tensor L(k), every period multiplied by (2 pi i)^k"""
    return SplitBiQ([label * PeriodMonomial.two_pi_i() ** k for label in S.labels])


def direct_sum(S1: SplitBiQ, S2: SplitBiQ) -> SplitBiQ:
    return SplitBiQ(S1.labels + S2.labels)


def restrict(S: SplitBiQ, indices: Sequence[int]) -> SplitBiQ:
    """Coordinate sub-structure on the given 1-based lines"""
    for i in indices:
        if not 1 <= i <= S.dim:
            raise InputError(f'Line {i} out of range for dimension {S.dim}')
    return SplitBiQ([S.labels[i - 1] for i in indices])


def torus_biq(n: int) -> SplitBiQ:
    """Lie algebra of a split algebraic torus of dimension n, all periods are 2 pi i"""
    return SplitBiQ([PeriodMonomial.two_pi_i()] * n)


def cm_lie_biq(g: int) -> SplitBiQ:
    """(C^g; t_1, ..., t_g), the Lie algebra of a CM abelian variety in an eigenbasis"""
    if g < 1:
        raise InputError(f'g must be positive, got {g}')
    return SplitBiQ([PeriodMonomial.symbol(j) for j in range(1, g + 1)])


def de_rham_biq(g: int) -> SplitBiQ:
    """First de Rham cohomology of a CM abelian variety with the comparison diag(t_1..t_g, L/t_1..L/t_g)"""
    holomorphic = cm_lie_biq(g)
    return direct_sum(holomorphic,
                      SplitBiQ([PeriodMonomial.two_pi_i() / label for label in holomorphic.labels]))


# Isotypic decomposition

def _check_symbols(S: SplitBiQ, R: Optional[RelationLattice]):
    if R is not None and S.n_symbols > R.g:
        raise SymbolMismatch(f'{S} uses {S.n_symbols} period symbols, relation lattice only {R.g}')


def same_class(a: PeriodMonomial, b: PeriodMonomial, R: Optional[RelationLattice] = None) -> bool:
    """a / b is algebraic, i.e. trivial modulo the relation lattice"""
    if R is None:
        return a == b
    return R.contains(a / b)


def isotypic_blocks(S: SplitBiQ, R: Optional[RelationLattice] = None) -> List[Tuple[List[int], PeriodMonomial]]:
    """
    Isotypic blocks as (sorted 1-based lines, period of the block). Lines are joined whenever their periods agree
    modulo R, blocks are the connected components and are sorted by their first line.
    """
    _check_symbols(S, R)
    G = nx.Graph()
    G.add_nodes_from(range(1, S.dim + 1))
    for i, j in itertools.combinations(range(1, S.dim + 1), 2):
        if same_class(S.labels[i - 1], S.labels[j - 1], R):
            G.add_edge(i, j)
    blocks = sorted(sorted(c) for c in nx.connected_components(G))
    return [(block, S.labels[block[0] - 1]) for block in blocks]


def isotypic_partition(S: SplitBiQ, R: Optional[RelationLattice] = None) -> List[List[int]]:
    return [block for block, _ in isotypic_blocks(S, R)]


def subspace_dimension(V: SubspacePresentation) -> int:
    return field_rank(V.basis)


def is_biq_subspace(V: SubspacePresentation, R: Optional[RelationLattice] = None) -> bool:
    """V is bi-Qbar iff it is the direct sum of its intersections with the isotypic blocks"""
    blocks = isotypic_partition(V.ambient, R)
    total = sum(V.intersection_dimension(block) for block in blocks)
    logger.debug(f'{V}: block intersections sum to {total}')
    return total == V.dim


def count_biq_subspaces(S: SplitBiQ, R: Optional[RelationLattice] = None) -> Union[int, str]:
    """2^n if all isotypic blocks are lines (direct sums of blocks), otherwise infinitely many"""
    blocks = isotypic_partition(S, R)
    if any(len(block) > 1 for block in blocks):
        return INFINITE
    return 2 ** len(blocks)


def period_of_line(V: SubspacePresentation, R: Optional[RelationLattice] = None) -> PeriodMonomial:
    if V.dim != 1:
        raise InputError(f'Period of a line requested for a subspace of dimension {V.dim}')
    if not is_biq_subspace(V, R):
        raise NotBiQ(f'{V.basis[0]} spans no bi-Qbar line')
    line = V.support()[0]
    for block, label in isotypic_blocks(V.ambient, R):
        if line in block:
            return label
    raise AssertionError(f'Line {line} is in no isotypic block')
