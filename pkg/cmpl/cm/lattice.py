from __future__ import annotations

import logging
from typing import Dict, List, Optional, Sequence, Tuple, Union

from cmpl.biq.monomials import PeriodMonomial
from cmpl.biq.structures import SplitBiQ, cm_lie_biq, isotypic_blocks, sym2, de_rham_biq, direct_sum, torus_biq
from cmpl.cm.fields import CMType
from cmpl.core.errors import InputError
from cmpl.exact import matrices
from cmpl.exact.galois import ORDER_CAP, galois_permutations
from cmpl.exact.matrices import IntMatrix

logger = logging.getLogger('Relations')


class RelationLattice:

    def __init__(self, g: int, basis: IntMatrix, mt_dim: int = None):
        """
        Lattice of exponent vectors (a_0; a_1 ... a_g) for which (2 pi i)^a_0 * t_1^a_1 * ... * t_g^a_g is
        algebraic.
        :param basis: rows in Hermite normal form
        :param mt_dim: dimension of the Mumford-Tate torus, g + 1 - rank(basis) when omitted
        """
        if basis.cols != g + 1:
            raise InputError(f'Relation lattice for g={g} needs {g + 1} columns, got {basis.cols}')
        self.g = g
        self.basis = matrices.hnf_basis(basis) if basis.rows > 0 else basis
        self.rank = self.basis.rows
        self.mt_dim = g + 1 - self.rank if mt_dim is None else mt_dim
        self._saturated: Optional[IntMatrix] = None

    @staticmethod
    def empty(g: int) -> RelationLattice:
        return RelationLattice(g, IntMatrix.zeros(0, g + 1))

    @staticmethod
    def from_rows(g: int, rows: Sequence[Sequence[int]]) -> RelationLattice:
        return RelationLattice(g, IntMatrix(rows, g + 1))

    def contains(self, v: Union[PeriodMonomial, Sequence[int]]) -> bool:
        """
        A monomial is predicted algebraic iff its exponent vector lies in the rational span: a power of a
        monomial is algebraic only if the monomial is.
        """
        if isinstance(v, PeriodMonomial):
            v = v.vector(self.g)
        if self._saturated is None:
            self._saturated = matrices.saturate(self.basis)
        return matrices.hnf_contains(self._saturated, v)

    def monomials(self) -> List[PeriodMonomial]:
        return [PeriodMonomial.from_vector(self.basis.row(i)) for i in range(self.rank)]

    def __eq__(self, other):
        if isinstance(other, RelationLattice):
            return self.g == other.g and self.basis == other.basis
        return False

    def __repr__(self):
        return f'RelationLattice(g={self.g}, mt_dim={self.mt_dim}, {[m.symbolic() for m in self.monomials()]})'

    def as_dict(self):
        return {
            'g': self.g,
            'mt_dim': self.mt_dim,
            'basis': self.basis.as_json()
        }

    @staticmethod
    def from_dict(raw: dict) -> RelationLattice:
        try:
            g = int(raw['g'])
            basis = IntMatrix.from_json(raw['basis'], g + 1)
            mt_dim = None if raw.get('mt_dim') is None else int(raw['mt_dim'])
        except (KeyError, TypeError, ValueError) as ex:
            raise InputError(f'Invalid relation lattice {raw}: {ex}')
        return RelationLattice(g, basis, mt_dim)


class CMData:

    def __init__(self, types: Sequence[CMType], max_order: int = ORDER_CAP):
        """
        Product of CM types. Embeddings of all factors are concatenated to Sigma, the CM types to the period
        symbols t_1 ... t_G (factor by factor, inside a factor by increasing embedding index).
        """
        if len(types) == 0:
            raise InputError('At least one CM type is required')
        self.types = list(types)
        self.max_order = max_order

        self.offsets = []
        offset = 0
        for T in self.types:
            self.offsets.append(offset)
            offset += T.parent.field.degree
        self.n_embeddings = offset
        self.g = sum(T.g for T in self.types)

        # distinct fields in order of appearance, Galois acts on their concatenated roots
        self.fields: List[List[int]] = []
        for T in self.types:
            if T.parent.min_poly not in self.fields:
                self.fields.append(T.parent.min_poly)
        self._orbit: Optional[IntMatrix] = None

    def symbols(self) -> List[Tuple[int, int]]:
        """(sigma, c sigma) for every period symbol, as indices into Sigma"""
        res = []
        for T, offset in zip(self.types, self.offsets):
            for k in T.phi:
                res.append((offset + k, offset + T.parent.permutation[k]))
        return res

    def indicator(self) -> List[int]:
        res = []
        for T in self.types:
            res += T.indicator()
        return res

    def galois_orbit(self) -> IntMatrix:
        if self._orbit is not None:
            return self._orbit
        perms = galois_permutations(self.fields, self.max_order, logger)
        field_offsets: Dict[Tuple[int, ...], int] = {}
        offset = 0
        for f in self.fields:
            field_offsets[tuple(f)] = offset
            offset += len(f) - 1

        rows = []
        for perm in perms:
            row = []
            for T in self.types:
                base = field_offsets[tuple(T.parent.min_poly)]
                image = {perm[base + k] - base for k in T.phi}
                row += [1 if k in image else 0 for k in range(T.parent.field.degree)]
            if row not in rows:
                rows.append(row)
        self._orbit = IntMatrix(rows, self.n_embeddings)
        return self._orbit

    def __repr__(self):
        return f'CMData({self.types})'

    def as_dict(self):
        return {
            'types': [T.as_dict() for T in self.types]
        }


def _as_data(Ts: Union[CMType, Sequence[CMType], CMData]) -> CMData:
    if isinstance(Ts, CMData):
        return Ts
    if isinstance(Ts, CMType):
        return CMData([Ts])
    return CMData(Ts)


def galois_orbit_mu(Ts: Union[CMType, Sequence[CMType], CMData]) -> IntMatrix:
    """Rows are the indicators of rho * Phi for the elements rho of the Galois group, identity first"""
    return _as_data(Ts).galois_orbit()


def mt_dimension(Ts: Union[CMType, Sequence[CMType], CMData]) -> int:
    return matrices.rank(galois_orbit_mu(Ts))


def is_maximal_torus(Ts: Union[CMType, Sequence[CMType], CMData]) -> bool:
    data = _as_data(Ts)
    return mt_dimension(data) == data.g + 1


def relation_lattice(Ts: Union[CMType, Sequence[CMType], CMData]) -> RelationLattice:
    """
    Characters of the ambient torus vanishing on the Mumford-Tate torus, written as period monomials. N is the
    saturated orthogonal lattice of the Galois orbit of mu; e_sigma maps to t_sigma and e_(c sigma) to L / t_sigma
    for sigma in Phi. Differences of pairing vectors e_sigma + e_(c sigma) lie in N and map to 1.
    """
    data = _as_data(Ts)
    orbit = data.galois_orbit()
    mt_dim = matrices.rank(orbit)
    N = matrices.kernel_lattice(orbit)

    symbols = data.symbols()
    pairing = [[1 if i in pair else 0 for i in range(data.n_embeddings)] for pair in symbols]
    for p in pairing[1:]:
        assert matrices.hnf_contains(N, [a - b for a, b in zip(p, pairing[0])]), \
            'Difference of pairing vectors is not orthogonal to the Galois orbit'

    image = []
    for i in range(N.rows):
        n = N.row(i)
        a0 = sum(n[c] for _, c in symbols)
        image.append([a0] + [n[s] - n[c] for s, c in symbols])
    R = RelationLattice(data.g, IntMatrix(image, data.g + 1), mt_dim)
    assert R.rank == data.g + 1 - mt_dim, f'Relation lattice has rank {R.rank}, expected {data.g + 1 - mt_dim}'
    logger.debug(f'{data}: mt_dim {mt_dim}, relations {R}')
    return R


class QuadraticReport:

    def __init__(self, products: List[PeriodMonomial], classes: List[List[Tuple[int, int]]],
                 elementary: List[Tuple[Tuple[int, int], Tuple[int, int]]]):
        """
        Classes of the products t_j t_j' modulo the relation lattice.
        :param classes: index pairs (j, j'), 1-based with j <= j', of every class
        :param elementary: pairs of products in the same class, consecutive inside their class
        """
        self.products = products
        self.classes = classes
        self.elementary = elementary

    @property
    def predicted_dim(self) -> int:
        return len(self.classes)

    def as_dict(self):
        return {
            'products': [str(p) for p in self.products],
            'classes': [[list(pair) for pair in c] for c in self.classes],
            'predicted_dim': self.predicted_dim,
            'elementary_relations': elementary_relations(self)
        }


def elementary_relations(report: QuadraticReport) -> List[List[List[int]]]:
    return [[list(a), list(b)] for a, b in report.elementary]


def quadratic_analysis(Ts: Union[CMType, Sequence[CMType], CMData],
                       R: RelationLattice = None) -> QuadraticReport:
    data = _as_data(Ts)
    if R is None:
        R = relation_lattice(data)
    pairs = [(j, k) for j in range(1, data.g + 1) for k in range(j, data.g + 1)]
    S = sym2(cm_lie_biq(data.g))
    classes, elementary = [], []
    for block, _ in isotypic_blocks(S, R):
        members = [pairs[i - 1] for i in block]
        classes.append(members)
        elementary += list(zip(members, members[1:]))
    return QuadraticReport(S.labels, classes, elementary)


class QuasiPeriodReport:

    def __init__(self, values: SplitBiQ, classes: List[List[PeriodMonomial]]):
        self.values = values
        self.classes = classes

    @property
    def predicted_dim(self) -> int:
        return len(self.classes)

    def as_dict(self):
        return {
            'values': [str(v) for v in self.values.labels],
            'classes': [[str(v) for v in c] for c in self.classes],
            'predicted_dim': self.predicted_dim
        }


def quasi_period_analysis(Ts: Union[CMType, Sequence[CMType], CMData],
                          R: RelationLattice = None) -> QuasiPeriodReport:
    """Classes of 2 pi i, t_j and 2 pi i / t_j modulo the relation lattice"""
    data = _as_data(Ts)
    if R is None:
        R = relation_lattice(data)
    S = direct_sum(torus_biq(1), de_rham_biq(data.g))
    classes = [[S.labels[i - 1] for i in block] for block, _ in isotypic_blocks(S, R)]
    return QuasiPeriodReport(S, classes)
