from fractions import Fraction

import pytest

from cmpl.core.errors import InputError
from cmpl.exact import polynomials
from cmpl.exact.polynomials import factor_q, is_irreducible, parse_polynomial, primitive


def test_parse_notations():
    assert parse_polynomial('x^4 - x^3 + x^2 - x + 1') == [1, -1, 1, -1, 1]
    assert parse_polynomial('[1, 0, 1]') == [1, 0, 1]
    assert parse_polynomial([2, 0, 0, 0]) == [2]


@pytest.mark.parametrize('text', ['x^2 + y', 'x/2 + 1', '[1, "a"]', 'x^^2'])
def test_parse_rejects(text):
    with pytest.raises(InputError):
        parse_polynomial(text)


def test_factor_over_rationals():
    factors = {tuple(f) for f, mult in factor_q([-1, 0, 1])}
    assert factors == {(-1, 1), (1, 1)}

    # x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2)
    factors = {tuple(f) for f, mult in factor_q([4, 0, 0, 0, 1])}
    assert factors == {(2, -2, 1), (2, 2, 1)}

    assert factor_q([1, 0, 1]) == [([1, 0, 1], 1)]


def test_factor_multiplicity_and_content():
    # 2 (x + 1)^2
    factors = factor_q([2, 4, 2])
    assert ([2], 1) in factors
    assert ([1, 1], 2) in factors


def test_irreducibility():
    assert is_irreducible([1, 1, 1, 1, 1])
    assert is_irreducible([-2, 0, 0, 1])
    assert not is_irreducible([-1, 0, 0, 0, 1])
    assert not is_irreducible([1, 2, 1])


def test_primitive():
    assert primitive([Fraction(1, 2), Fraction(-3, 4)]) == [-2, 3]
    assert primitive([6, -4]) == [-3, 2]


def test_multiply_and_degree():
    assert polynomials.multiply([1, 1], [-1, 1]) == [-1, 0, 1]
    assert polynomials.degree([0]) == -1
    assert polynomials.degree([1, 2, 0, 0]) == 1
    assert polynomials.is_squarefree([-1, 0, 1])
    assert not polynomials.is_squarefree([1, 2, 1])
