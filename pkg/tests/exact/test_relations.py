import numpy as np
import pytest
from flint import acb, ctx, fmpz_poly

from cmpl.core.errors import InputError, InsufficientPrecision
from cmpl.exact.polynomials import factor_q, primitive
from cmpl.exact.relations import GUARD_BITS, algdep, find_algdep, find_relation, integer_relation, required_bits
from cmpl.numeric.ball import BallComplex


def _sqrt(n: int, prec: int) -> BallComplex:
    return BallComplex.from_function(lambda p: acb(n).sqrt(), prec)


def test_required_bits():
    assert required_bits(3, 10 ** 8) == 104
    assert required_bits(2, 10 ** 6) == 56


def test_integer_relations():
    one = BallComplex.exact(1, 200)
    sqrt2 = _sqrt(2, 200)
    assert integer_relation([one, sqrt2, sqrt2 + 1], 10 ** 6) == [1, 1, -1]

    pi = BallComplex.pi(200)
    assert integer_relation([pi, 2 * pi], 10 ** 6) == [2, -1]


def test_no_relation_with_pi():
    assert integer_relation([BallComplex.exact(1, 300), BallComplex.pi(300)], 10 ** 6) is None


def test_relation_over_field_basis():
    # sqrt2 * (sqrt2 + 1) = 2 + sqrt2 with coefficients in Q(sqrt2)
    one, sqrt2 = BallComplex.exact(1, 300), _sqrt(2, 300)
    m = integer_relation([one, sqrt2 * (sqrt2 + 1)], 10 ** 4, field_basis=[one, sqrt2])
    assert m is not None
    total = sum(c * v for c, v in zip(m, [one, sqrt2, sqrt2 * (sqrt2 + 1), sqrt2 * (sqrt2 + 1) * sqrt2]))
    assert total.log2_magnitude() < -200


def test_relation_is_verified():
    candidate = find_relation([BallComplex.exact(1, 200), _sqrt(2, 200), _sqrt(2, 200) + 1], 10 ** 6)
    assert candidate.verified_at_bits == 400
    assert candidate.residual_log2 < -300
    assert candidate.height == 1


def test_relation_input_errors():
    with pytest.raises(InputError):
        find_relation([BallComplex.pi(200)], 10)
    with pytest.raises(InsufficientPrecision):
        find_relation([BallComplex.exact(1, 64), BallComplex.pi(64), BallComplex.pi(64) ** 2], 10 ** 30)


def test_algdep():
    assert algdep(_sqrt(2, 100), 4, 10 ** 3) == [-2, 0, 1]
    golden = (_sqrt(5, 100) + 1) / 2
    assert algdep(golden, 4, 10 ** 3) == [-1, -1, 1]
    assert algdep(BallComplex.exact(3, 100) / 7, 2, 10 ** 3) == [-3, 7]


def test_algdep_of_pi():
    assert algdep(BallComplex.pi(200), 8, 10 ** 6) is None


def _fixed(fn, prec: int) -> BallComplex:
    with ctx.workprec(prec):
        return BallComplex(fn(), prec)


def _quartic(p: int = None) -> acb:
    # 2^(1/4) + 1, root of (x - 1)^4 - 2
    return acb(2).sqrt().sqrt() + 1


QUARTIC = [-1, -4, 6, -4, 1]


def test_algdep_searches_top_degree():
    # starts below the precision of every degree, each degree refines the ball
    prec = required_bits(4, 10 ** 3) - GUARD_BITS
    x = BallComplex.from_function(_quartic, prec)
    candidate = find_algdep(x, 4, 10 ** 3)
    assert candidate is not None
    assert candidate.coefficients == QUARTIC
    assert candidate.prec_bits >= required_bits(5, 10 ** 3)


def test_algdep_precision_check():
    # half of the accuracy covers degree 3 but not degree 4
    x = _fixed(_quartic, 128)
    assert required_bits(4, 10 ** 3) <= x.accuracy_bits() // 2 < required_bits(5, 10 ** 3)
    with pytest.raises(InsufficientPrecision):
        find_algdep(x, 4, 10 ** 3)
    assert algdep(_fixed(_quartic, 176), 4, 10 ** 3) == QUARTIC
    with pytest.raises(InsufficientPrecision):
        find_algdep(_fixed(lambda: acb(2).sqrt(), 64), 8, 10 ** 30)


def _root(poly, p: int) -> acb:
    """Root with the largest imaginary part, ties broken by the real part"""
    with ctx.workprec(p):
        roots = [r for r, _ in fmpz_poly(poly).complex_roots()]
    return max(roots, key=lambda r: (round(float(r.imag.mid()), 9), float(r.real.mid())))


def _random_irreducible(rng, degree: int, height: int):
    while True:
        poly = [int(c) for c in rng.integers(-height, height + 1, degree + 1)]
        if poly[-1] == 0 or poly[0] == 0:
            continue
        factors = [(f, m) for f, m in factor_q(poly) if len(f) > 1]
        if len(factors) == 1 and factors[0][1] == 1 and len(factors[0][0]) == degree + 1:
            return primitive(poly)


def test_algdep_recovers_random_minimal_polynomials():
    rng = np.random.default_rng(31)
    for k in range(30):
        degree = 1 + k % 6
        poly = _random_irreducible(rng, degree, 10 ** 3)
        x = BallComplex.from_function(lambda p, poly=poly: _root(poly, p), 256)
        assert algdep(x, 6, 10 ** 3) == poly, poly


def test_planted_integer_relations():
    rng = np.random.default_rng(5)
    pi = BallComplex.pi(256)
    basis = [BallComplex.exact(1, 256), pi, pi ** 2, pi ** 3]
    for _ in range(30):
        m = [int(c) for c in rng.integers(-100, 101, len(basis))]
        if all(c == 0 for c in m):
            continue
        planted = sum((c * v for c, v in zip(m, basis)), BallComplex.exact(0, 256))
        expected = m + [-1]
        if next(c for c in expected if c != 0) < 0:
            expected = [-c for c in expected]
        assert integer_relation(basis + [planted], 10 ** 3) == expected, m
