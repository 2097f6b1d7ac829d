import itertools

import pytest

from cmpl.biq.monomials import PeriodMonomial
from cmpl.cm.fields import CMType, cm_types, is_cm_field
from cmpl.cm.lattice import (CMData, RelationLattice, elementary_relations, galois_orbit_mu, is_maximal_torus,
                             mt_dimension, quadratic_analysis, quasi_period_analysis, relation_lattice)
from cmpl.core.errors import InputError

L = PeriodMonomial.two_pi_i()
t1, t2 = PeriodMonomial.symbol(1), PeriodMonomial.symbol(2)


@pytest.fixture(scope='module')
def zeta8_type():
    # embeddings e^(i pi / 4), e^(3 i pi / 4), e^(5 i pi / 4), e^(7 i pi / 4)
    return CMType(is_cm_field('x^4 + 1'), [0, 1])


@pytest.fixture(scope='module')
def gaussian_eisenstein():
    return CMData([CMType(is_cm_field('x^2 + 1'), [0]), CMType(is_cm_field('x^2 + x + 1'), [0])])


def _rows(M):
    return [M.row(i) for i in range(M.rows)]


def test_gaussian(gaussian_type):
    assert _rows(galois_orbit_mu(gaussian_type)) == [[1, 0], [0, 1]]
    assert mt_dimension(gaussian_type) == 2
    assert is_maximal_torus(gaussian_type)
    assert relation_lattice(gaussian_type) == RelationLattice.empty(1)


def test_zeta5(zeta5_type):
    rows = _rows(galois_orbit_mu(zeta5_type))
    assert rows[0] == [1, 1, 0, 0]
    assert sorted(rows) == sorted([[1, 1, 0, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 0, 1, 1]])
    assert mt_dimension(zeta5_type) == 3
    R = relation_lattice(zeta5_type)
    assert R.rank == 0
    assert R.mt_dim == 3
    report = quadratic_analysis(zeta5_type)
    assert sorted(report.classes) == [[(1, 1)], [(1, 2)], [(2, 2)]]
    assert report.predicted_dim == 3
    assert elementary_relations(report) == []


def test_duplicated_gaussian(gaussian_type):
    data = CMData([gaussian_type, gaussian_type])
    assert data.g == 2
    assert mt_dimension(data) == 2
    assert not is_maximal_torus(data)
    R = relation_lattice(data)
    assert R == RelationLattice.from_rows(2, [[0, 1, -1]])
    assert R.monomials() == [t1 / t2]
    assert R.contains(t1 / t2)
    assert R.contains([0, -2, 2])
    assert not R.contains(t1)
    assert not R.contains(L)

    report = quadratic_analysis(data, R)
    assert report.classes == [[(1, 1), (1, 2), (2, 2)]]
    assert report.predicted_dim == 1
    assert elementary_relations(report) == [[[1, 1], [1, 2]], [[1, 2], [2, 2]]]

    quasi = quasi_period_analysis(data, R)
    assert quasi.predicted_dim == 3
    assert sorted(sorted(str(v) for v in c) for c in quasi.classes) == \
        sorted([['π'], ['θ1', 'θ2'], ['π/θ1', 'π/θ2']])


def test_induced_type(zeta8_type):
    assert mt_dimension(zeta8_type) == 2
    assert relation_lattice(zeta8_type) == RelationLattice.from_rows(2, [[0, 1, -1]])


def test_product_of_distinct_fields(gaussian_eisenstein):
    assert gaussian_eisenstein.g == 2
    assert mt_dimension(gaussian_eisenstein) == 3
    assert is_maximal_torus(gaussian_eisenstein)
    assert relation_lattice(gaussian_eisenstein).rank == 0
    assert quasi_period_analysis(gaussian_eisenstein).predicted_dim == 5


def test_quasi_gaussian(gaussian_type):
    report = quasi_period_analysis(gaussian_type)
    assert report.predicted_dim == 3
    assert report.as_dict()['predicted_dim'] == 3


def _characters_orthogonal(data, v) -> bool:
    """Preimage of the monomial v on the characters of the embeddings, orthogonal to every Galois conjugate of mu"""
    symbols = data.symbols()
    n = [0] * data.n_embeddings
    a0, a = v[0], v[1:]
    for (s, c), aj in zip(symbols, a):
        n[s] += aj
    s1, c1 = symbols[0]
    n[s1] += a0
    n[c1] += a0
    orbit = data.galois_orbit()
    return all(sum(x * y for x, y in zip(row, n)) == 0 for row in _rows(orbit))


@pytest.mark.parametrize('name', ['gaussian', 'duplicated', 'zeta5', 'zeta8'])
def test_lattice_against_orthogonality(name, gaussian_type, zeta5_type, zeta8_type):
    data = {
        'gaussian': CMData([gaussian_type]),
        'duplicated': CMData([gaussian_type, gaussian_type]),
        'zeta5': CMData([zeta5_type]),
        'zeta8': CMData([zeta8_type]),
    }[name]
    R = relation_lattice(data)
    assert R.rank == data.g + 1 - mt_dimension(data)
    for v in itertools.product(range(-3, 4), repeat=data.g + 1):
        assert R.contains(list(v)) == _characters_orthogonal(data, v), v


def test_lattice_dict_round_trip(gaussian_type):
    R = relation_lattice(CMData([gaussian_type, gaussian_type]))
    raw = R.as_dict()
    assert raw['mt_dim'] == 2
    assert RelationLattice.from_dict(raw) == R


def test_invalid_data():
    with pytest.raises(InputError):
        CMData([])
    with pytest.raises(InputError):
        RelationLattice.from_rows(2, [[1, 0]])


@pytest.mark.parametrize('raw', [
    {'basis': []},
    {'g': 'two', 'basis': []},
    {'g': 2, 'basis': [['1', 'x', '0']]},
    {'g': 2, 'basis': 5},
    {'g': 2, 'basis': [[1, 0]]},
    {'g': 2, 'basis': [], 'mt_dim': 'three'},
    [],
])
def test_malformed_lattice(raw):
    with pytest.raises(InputError):
        RelationLattice.from_dict(raw)


def test_conjugate_types_have_equal_rank(gaussian, zeta5):
    for E in (gaussian, zeta5, is_cm_field('x^4 + 1'), is_cm_field('x^2 + x + 1')):
        for T in cm_types(E):
            assert relation_lattice(T).rank == relation_lattice(T.conjugate()).rank, T
    for Ts in itertools.combinations(cm_types(zeta5) + cm_types(gaussian), 2):
        assert relation_lattice(list(Ts)).rank == relation_lattice([T.conjugate() for T in Ts]).rank, Ts


def test_rank_grows_with_factors(gaussian_type, zeta5_type, gaussian_eisenstein):
    eisenstein = gaussian_eisenstein.types[1]
    pool = [gaussian_type, gaussian_type.conjugate(), eisenstein, zeta5_type]
    for size in (1, 2):
        for Ts in itertools.combinations(pool, size):
            rank = relation_lattice(list(Ts)).rank
            for T in pool:
                assert relation_lattice(list(Ts) + [T]).rank >= rank, (Ts, T)
