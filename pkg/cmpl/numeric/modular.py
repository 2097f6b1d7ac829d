from __future__ import annotations

import logging
import math
from collections import namedtuple
from functools import lru_cache
from typing import Tuple

from flint import acb, arb, ctx
from sympy import divisor_sigma

from cmpl.core.errors import InputError, PrecisionExhausted
from cmpl.numeric.ball import BallComplex

GUARD_BITS = 16
MAX_TERMS = 200000
MAX_REDUCTION_STEPS = 10000

# normalisation of E_k = 1 + c_k * sum sigma_(k-1)(n) q^n
SERIES_CONSTANTS = {2: -24, 4: 240, 6: -504}

# Namedtuple instead of class to allow sharing between processes
Matrix2 = namedtuple('Matrix2', 'a b c d')
EisensteinValues = namedtuple('EisensteinValues', 'E2 E4 E6 DE2 DE4 DE6')

logger = logging.getLogger('Numeric')


@lru_cache(maxsize=None)
def _sigma(n: int, k: int) -> int:
    return int(divisor_sigma(n, k))


def reduce_to_fundamental_domain(tau: acb) -> Tuple[acb, Matrix2]:
    """
    Move tau into the standard fundamental domain |Re tau| <= 1/2, |tau| >= 1 of SL_2(Z). The decisions use the
    midpoint, so the result may lie marginally outside of the domain, which is harmless for the series.
    :return: (gamma * tau, gamma) with gamma = (a, b, c, d)
    """
    z = complex(float(tau.real.mid()), float(tau.imag.mid()))
    if z.imag <= 0:
        raise InputError(f'tau = {tau} is not in the upper half plane')
    a, b, c, d = 1, 0, 0, 1
    for _ in range(MAX_REDUCTION_STEPS):
        n = round(z.real)
        if n != 0:
            z -= n
            a, b = a - n * c, b - n * d
        if abs(z) < 1 - 1e-12:
            z = -1 / z
            a, b, c, d = -c, -d, a, b
        else:
            break
    else:
        raise PrecisionExhausted(f'Reduction of {tau} did not terminate')
    gamma = Matrix2(a, b, c, d)
    return apply(gamma, tau), gamma


def apply(gamma: Matrix2, tau: acb) -> acb:
    return (gamma.a * tau + gamma.b) / (gamma.c * tau + gamma.d)


def _tail_bound(q_abs: arb, power: int, prec: int) -> Tuple[int, arb]:
    """
    Number of terms N and a bound of sum_(n > N) n^power |q|^n. The ratio of consecutive terms after N is at most
    ((N + 2) / (N + 1))^power |q| < 1, hence the tail is dominated by a geometric series.
    """
    q_up = float(q_abs.upper())
    if q_up >= 1:
        raise PrecisionExhausted(f'|q| = {q_up} does not allow a convergent q-expansion')
    target = -(prec + GUARD_BITS)
    log2_q = math.log2(q_up) if q_up > 0 else -math.inf
    N = 1
    while (N + 1) * log2_q + power * math.log2(N + 1) > target:
        N += 1
        if N > MAX_TERMS:
            raise PrecisionExhausted(f'More than {MAX_TERMS} terms of the q-expansion needed for {prec} bits')
    ratio = (arb(N + 2) / (N + 1)) ** power * q_abs.upper()
    if not ratio < 1:
        raise PrecisionExhausted('Tail of the q-expansion does not decay')
    tail = arb(N + 1) ** power * q_abs.upper() ** (N + 1) / (1 - ratio)
    return N, tail


def _series(tau: acb, prec: int) -> EisensteinValues:
    """E_k and D E_k = q dE_k/dq for k = 2, 4, 6 by the q-expansion with rigorous tails"""
    q = (acb(0, 2) * arb.pi() * tau).exp()
    # sigma_5(n) * n <= n^7 bounds all coefficients
    N, tail = _tail_bound(abs(q), 7, prec)
    error = tail * acb(arb(0, 1), arb(0, 1))

    sums = {k: acb(0) for k in SERIES_CONSTANTS}
    dsums = {k: acb(0) for k in SERIES_CONSTANTS}
    qn = acb(1)
    for n in range(1, N + 1):
        qn *= q
        for k in SERIES_CONSTANTS:
            term = _sigma(n, k - 1) * qn
            sums[k] += term
            dsums[k] += n * term
    E = {k: 1 + SERIES_CONSTANTS[k] * (sums[k] + error) for k in SERIES_CONSTANTS}
    DE = {k: SERIES_CONSTANTS[k] * (dsums[k] + error) for k in SERIES_CONSTANTS}
    return EisensteinValues(E[2], E[4], E[6], DE[2], DE[4], DE[6])


def eisenstein_values(tau: acb, prec: int) -> EisensteinValues:
    """
    E_2, E_4, E_6 and their derivatives D = (1 / 2 pi i) d/dtau at tau, evaluated at the reduced point and
    transformed back. E_4, E_6 are modular of weight 4, 6; E_2 is quasi-modular.
    """
    with ctx.workprec(prec + GUARD_BITS):
        reduced, gamma = reduce_to_fundamental_domain(tau)
        v = _series(reduced, prec)
        if gamma.c == 0:
            # gamma is a translation, possibly times -1
            return v
        j = gamma.c * tau + gamma.d
        two_pi_i = acb(0, 2) * arb.pi()
        c = gamma.c

        E4 = v.E4 / j ** 4
        E6 = v.E6 / j ** 6
        E2 = (v.E2 - 12 * c * j / two_pi_i) / j ** 2
        # D(f(gamma tau) / j^k) = D f(gamma tau) / j^(k + 2) - k c f(gamma tau) / (2 pi i j^(k + 1))
        DE4 = v.DE4 / j ** 6 - 4 * c * v.E4 / (two_pi_i * j ** 5)
        DE6 = v.DE6 / j ** 8 - 6 * c * v.E6 / (two_pi_i * j ** 7)
        # E2(tau) j^2 = E2(gamma tau) - 12 c j / (2 pi i)
        DE2 = (v.DE2 / j ** 2 - 2 * c * (v.E2 - 12 * c * j / two_pi_i) / (two_pi_i * j)
               - 12 * c * c / two_pi_i ** 2) / j ** 2
        return EisensteinValues(E2, E4, E6, DE2, DE4, DE6)


def eisenstein_series(tau: BallComplex, prec: int) -> EisensteinValues:
    """E_2, E_4, E_6 and their derivatives as refinable balls"""
    def component(i):
        return BallComplex.from_function(lambda p: eisenstein_values(tau.evaluate(p), p)[i], prec)

    return EisensteinValues(*[component(i) for i in range(6)])


def j_values(tau: acb, prec: int) -> Tuple[acb, acb]:
    """j(tau) and j'(tau) = dj/dtau"""
    v = eisenstein_values(tau, prec)
    with ctx.workprec(prec + GUARD_BITS):
        E4_3 = v.E4 ** 3
        delta = E4_3 - v.E6 ** 2
        j = 1728 * E4_3 / delta
        Dj = 1728 * (-3 * v.E4 ** 2 * v.E6 ** 2 * v.DE4 + 2 * E4_3 * v.E6 * v.DE6) / delta ** 2
        return j, acb(0, 2) * arb.pi() * Dj


def j_and_derivative(tau: BallComplex, prec: int) -> Tuple[BallComplex, BallComplex]:
    j = BallComplex.from_function(lambda p: j_values(tau.evaluate(p), p)[0], prec)
    jprime = BallComplex.from_function(lambda p: j_values(tau.evaluate(p), p)[1], prec)
    return j, jprime


def invariant_values(tau: acb, prec: int) -> Tuple[acb, acb]:
    """g_2 and g_3 of the lattice Z + tau Z"""
    v = eisenstein_values(tau, prec)
    with ctx.workprec(prec + GUARD_BITS):
        pi = arb.pi()
        return 4 * pi ** 4 / 3 * v.E4, 8 * pi ** 6 / 27 * v.E6


def lattice_invariants(tau: BallComplex, prec: int) -> Tuple[BallComplex, BallComplex]:
    g2 = BallComplex.from_function(lambda p: invariant_values(tau.evaluate(p), p)[0], prec)
    g3 = BallComplex.from_function(lambda p: invariant_values(tau.evaluate(p), p)[1], prec)
    return g2, g3
