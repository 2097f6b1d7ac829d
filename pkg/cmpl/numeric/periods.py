from __future__ import annotations

import logging
import re
from typing import List, Tuple, Union

import sympy
from flint import acb, arb, ctx, fmpz_poly

from cmpl.core.errors import InputError, UnsupportedDiscriminant
from cmpl.numeric.ball import BallComplex
from cmpl.numeric.modular import GUARD_BITS, eisenstein_values

# Imaginary quadratic orders of class number one and their (rational) j-invariants
SUPPORTED_DISCRIMINANTS = {
    -3: 0,
    -4: 1728,
    -7: -3375,
    -8: 8000,
    -11: -32768,
    -12: 54000,
    -16: 287496,
    -19: -884736,
    -27: -12288000,
    -28: 16581375,
    -43: -884736000,
    -67: -147197952000,
    -163: -262537412640768000,
}

logger = logging.getLogger('Numeric')


class PeriodDataG1:

    def __init__(self, tau: BallComplex, omega1: BallComplex, omega2: BallComplex, eta1: BallComplex,
                 eta2: BallComplex, theta: BallComplex = None):
        """
        Periods and quasi-periods of C / (Z + tau Z): omega1 = 1, omega2 = tau, eta_i with
        zeta(z + omega_i) = zeta(z) + eta_i for the Weierstrass zeta function.
        """
        self.tau = tau
        self.omega1 = omega1
        self.omega2 = omega2
        self.eta1 = eta1
        self.eta2 = eta2
        self.theta = omega1 if theta is None else theta

    def legendre_residual(self) -> BallComplex:
        """omega2 * eta1 - omega1 * eta2 - 2 pi i, zero for Im(omega2 / omega1) > 0"""
        return self.omega2 * self.eta1 - self.omega1 * self.eta2 - BallComplex.two_pi_i(self.tau.prec)

    def as_dict(self):
        return {
            'tau': self.tau.as_dict(),
            'omega1': self.omega1.as_dict(),
            'omega2': self.omega2.as_dict(),
            'eta1': self.eta1.as_dict(),
            'eta2': self.eta2.as_dict()
        }


def quasi_period_values(tau: acb, prec: int) -> Tuple[acb, acb]:
    """
    eta1 = G_2(tau) = pi^2 / 3 * E_2(tau). eta2 follows from homogeneity, Z + tau Z = tau * (Z - Z / tau), as
    G_2(-1 / tau) / tau, which evaluates E_2 at a different point and keeps the Legendre relation a real check.
    """
    with ctx.workprec(prec + GUARD_BITS):
        pi2 = arb.pi() ** 2
        eta1 = pi2 / 3 * eisenstein_values(tau, prec).E2
        eta2 = pi2 / 3 * eisenstein_values(-1 / tau, prec).E2 / tau
        return eta1, eta2


def elliptic_periods(tau: BallComplex, prec: int) -> PeriodDataG1:
    if not tau.imag > 0:
        raise InputError(f'tau = {tau} is not certainly in the upper half plane')
    omega1 = BallComplex.exact(1, prec)
    omega2 = BallComplex.from_function(lambda p: tau.evaluate(p), prec)
    eta1 = BallComplex.from_function(lambda p: quasi_period_values(tau.evaluate(p), p)[0], prec)
    eta2 = BallComplex.from_function(lambda p: quasi_period_values(tau.evaluate(p), p)[1], prec)
    return PeriodDataG1(tau, omega1, omega2, eta1, eta2)


class CMPoint:

    def __init__(self, a: int, b: int, c: int):
        """Root tau in the upper half plane of the primitive positive definite form a x^2 + b x + c"""
        if a <= 0 or b * b - 4 * a * c >= 0:
            raise InputError(f'{a}x^2 + {b}x + {c} has no root in the upper half plane')
        if sympy.gcd(sympy.gcd(a, b), c) != 1:
            raise InputError(f'{a}x^2 + {b}x + {c} is not primitive')
        self.a = a
        self.b = b
        self.c = c

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def value(self, prec: int) -> acb:
        with ctx.workprec(prec + GUARD_BITS):
            return (-self.b + acb(self.discriminant).sqrt()) / (2 * self.a)

    def tau(self, prec: int) -> BallComplex:
        return BallComplex.from_function(self.value, prec)

    def __repr__(self):
        return f'CMPoint({self.a}x^2 + {self.b}x + {self.c}, D={self.discriminant})'

    def as_dict(self):
        return {
            'form': [self.a, self.b, self.c],
            'discriminant': self.discriminant
        }


def cm_point(text: Union[str, CMPoint]) -> CMPoint:
    """Parse an imaginary quadratic point like "2i", "(1+i√7)/2" or "(1+sqrt(-7))/2" """
    if isinstance(text, CMPoint):
        return text
    expr = text.strip().replace('√', 'sqrt').replace('^', '**')
    expr = re.sub(r'sqrt(\d+)', r'sqrt(\1)', expr)
    # implicit products such as 2i, i sqrt(7) and )(
    expr = re.sub(r'(\d|\))\s*(i|sqrt)', r'\1*\2', expr)
    expr = re.sub(r'\bi\s*(sqrt|\d|\()', r'i*\1', expr)
    try:
        value = sympy.sympify(expr, locals={'i': sympy.I, 'I': sympy.I, 'sqrt': sympy.sqrt})
        p = sympy.Poly(sympy.minimal_polynomial(value, sympy.Symbol('x')), sympy.Symbol('x'))
    except (sympy.SympifyError, TypeError, ValueError, NotImplementedError, SyntaxError) as ex:
        raise InputError(f'Invalid CM point {text}: {ex}')
    if p.degree() != 2:
        raise InputError(f'{text} is not imaginary quadratic')
    a, b, c = [int(v) for v in p.all_coeffs()]
    if a < 0:
        a, b, c = -a, -b, -c
    if not sympy.im(value) > 0:
        raise InputError(f'{text} is not in the upper half plane')
    return CMPoint(a, b, c)


def curve_model(disc: int, scale: int = 1) -> Tuple[int, int]:
    """
    Coefficients (A, B) of y^2 = x^3 + A x + B with CM by the order of discriminant disc. The scale u maps the
    model to an isomorphic one, A u^4 and B u^6.
    """
    if disc not in SUPPORTED_DISCRIMINANTS:
        raise UnsupportedDiscriminant(f'Discriminant {disc} is not in {sorted(SUPPORTED_DISCRIMINANTS)}')
    j = SUPPORTED_DISCRIMINANTS[disc]
    if j == 0:
        A, B = 0, 1
    elif j == 1728:
        A, B = -1, 0
    else:
        A, B = 3 * j * (1728 - j), 2 * j * (1728 - j) ** 2
    return A * scale ** 4, B * scale ** 6


def _ordered_cubic_roots(A: int, B: int) -> List[acb]:
    roots = [r for r, _ in fmpz_poly([B, A, 0, 1]).complex_roots()]
    return sorted(roots, key=lambda r: (-float(r.real.mid()), -float(r.imag.mid())))


def theta_value(disc: int, prec: int, scale: int = 1) -> acb:
    """pi / AGM(sqrt(e1 - e3), sqrt(e1 - e2)), a period of dx / y on the model of curve_model"""
    A, B = curve_model(disc, scale)
    with ctx.workprec(prec + GUARD_BITS):
        e1, e2, e3 = _ordered_cubic_roots(A, B)
        return acb.pi() / (e1 - e3).sqrt().agm((e1 - e2).sqrt())


def cm_theta(disc: int, prec: int, scale: int = 1) -> BallComplex:
    """
    Holomorphic period of a CM elliptic curve over Q with CM by the order of discriminant disc. Only the class
    in C* / Qbar* is canonical; the representative depends on the model and the cycle.
    """
    curve_model(disc, scale)
    return BallComplex.from_function(lambda p: theta_value(disc, p, scale), prec)
