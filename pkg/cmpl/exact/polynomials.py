from __future__ import annotations

import json
import logging
from fractions import Fraction
from typing import List, Tuple, Union, Sequence

import sympy
from flint import acb
from sympy import Poly, QQ, ZZ, Symbol

from cmpl.core.errors import InputError
from cmpl.numeric.ball import to_arb

x = Symbol('x')
y = Symbol('y')

IntPoly = List[int]
"""Integer polynomial as coefficient list, lowest degree first"""

Coefficient = Union[int, Fraction]

logger = logging.getLogger('Polynomials')


def parse_polynomial(text: Union[str, Sequence[int]]) -> IntPoly:
    """
    Parse an integer polynomial in x, either in the usual notation ("x^4 - x^3 + x^2 - x + 1") or as JSON
    coefficient array, lowest degree first ("[1, -1, 1, -1, 1]").
    """
    if not isinstance(text, str):
        return normalize([int(c) for c in text])
    text = text.strip()
    if text.startswith('['):
        try:
            return normalize([int(c) for c in json.loads(text)])
        except (ValueError, TypeError) as ex:
            raise InputError(f'Invalid coefficient array {text}: {ex}')
    try:
        expr = sympy.sympify(text.replace('^', '**'), locals={'x': x})
        p = Poly(expr, x)
    except (sympy.SympifyError, sympy.PolynomialError, TypeError, SyntaxError) as ex:
        raise InputError(f'Invalid polynomial {text}: {ex}')
    if p.free_symbols - {x}:
        raise InputError(f'Polynomial {text} must be univariate in x')
    coeffs = p.all_coeffs()[::-1]
    if not all(c.is_integer for c in coeffs):
        raise InputError(f'Polynomial {text} must have integer coefficients')
    return normalize([int(c) for c in coeffs])


def normalize(coeffs: Sequence[int]) -> IntPoly:
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def degree(p: Sequence[Coefficient]) -> int:
    p = normalize(p)
    if len(p) == 1 and p[0] == 0:
        return -1
    return len(p) - 1


def is_monic(p: IntPoly) -> bool:
    return normalize(p)[-1] == 1


def to_poly(p: Sequence[Coefficient], var: Symbol = x, domain=QQ) -> Poly:
    return Poly([sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
                 for c in reversed(list(p))], var, domain=domain)


def from_poly(p: Poly) -> List[Coefficient]:
    coeffs = []
    for c in reversed(p.all_coeffs()):
        c = sympy.Rational(c)
        coeffs.append(int(c) if c.q == 1 else Fraction(int(c.p), int(c.q)))
    return normalize(coeffs) if coeffs else [0]


def primitive(p: Sequence[Coefficient]) -> IntPoly:
    """Integer primitive multiple of p with positive leading coefficient"""
    poly = to_poly(p).clear_denoms()[1].set_domain(ZZ).primitive()[1]
    if poly.LC() < 0:
        poly = -poly
    return [int(c) for c in from_poly(poly)]


def factor_q(p: Sequence[int]) -> List[Tuple[IntPoly, int]]:
    """
    Factor an integer polynomial into irreducible factors over the rationals. sympy factors over the integers with
    Zassenhaus' algorithm (Hensel lifting followed by recombination of the modular factors).
    :return: list of (factor, multiplicity). A content different from 1 is returned as leading constant factor
    """
    p = normalize(p)
    if degree(p) < 0:
        raise InputError('Cannot factor the zero polynomial')
    content, factors = sympy.factor_list(to_poly(p, domain=ZZ))
    res = []
    if content != 1:
        res.append(([int(content)], 1))
    for f, mult in sorted(factors, key=lambda t: (t[0].degree(), [abs(int(c)) for c in t[0].all_coeffs()])):
        res.append(([int(c) for c in from_poly(f)], mult))
    return res


def is_irreducible(p: IntPoly) -> bool:
    factors = [(f, mult) for f, mult in factor_q(p) if degree(f) > 0]
    return len(factors) == 1 and factors[0][1] == 1


def is_squarefree(p: Sequence[Coefficient]) -> bool:
    poly = to_poly(p)
    return poly.degree() <= 0 or sympy.gcd(poly, poly.diff(x)).degree() == 0


def multiply(a: IntPoly, b: IntPoly) -> IntPoly:
    return [int(c) for c in from_poly(to_poly(a) * to_poly(b))]


def evaluate(p: Sequence[Coefficient], z: acb) -> acb:
    """Horner evaluation of a rational polynomial at a complex ball, using the current working precision"""
    res = acb(0)
    for c in reversed(list(p)):
        res = res * z + to_arb(c)
    return res


def poly_str(p: Sequence[Coefficient], var: str = 'x') -> str:
    return str(to_poly(p).as_expr()).replace('**', '^').replace('x', var)
