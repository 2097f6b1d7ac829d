from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple, Union

from flint import acb, arb, ctx

from cmpl.core.errors import EllipticPointDegenerate, UnsupportedDiscriminant
from cmpl.core.model import Certificate, Outcome, StatusType
from cmpl.exact import polynomials
from cmpl.exact.relations import find_algdep, find_relation
from cmpl.numeric.ball import BallComplex, to_arb
from cmpl.numeric.modular import GUARD_BITS, invariant_values, j_and_derivative
from cmpl.numeric.periods import SUPPORTED_DISCRIMINANTS, CMPoint, cm_point, cm_theta, curve_model, \
    quasi_period_values

BETA_LABELS = ['η1·θ', 'θ²', 'τθ²', '2πi', 'τ·2πi']

logger = logging.getLogger('Numeric')


def _check_discriminant(D: int):
    if D in (-3, -4):
        raise EllipticPointDegenerate(f'Discriminant {D} is an elliptic point, j\'(tau0) vanishes')
    if D not in SUPPORTED_DISCRIMINANTS:
        raise UnsupportedDiscriminant(f'Discriminant {D} is not in {sorted(SUPPORTED_DISCRIMINANTS)}')


def verify_siegel_g1(tau0: Union[str, CMPoint], prec: int, degree_bound: int, height_bound: int) -> Outcome:
    """
    Certify that j'(tau0) * pi / theta^2 is algebraic, theta being a period of the CM elliptic curve with
    j-invariant j(tau0). This is the g = 1 case of the Siegel tangent labels theta^2 / pi.
    :return: SUCCESS with an algebraicity certificate, INCONCLUSIVE if no polynomial survived at the bounds
    """
    point = cm_point(tau0)
    D = point.discriminant
    _check_discriminant(D)

    tau = point.tau(prec)
    j, jprime = j_and_derivative(tau, prec)
    if not j.overlaps(SUPPORTED_DISCRIMINANTS[D]):
        raise AssertionError(f'j({point}) = {j} does not match {SUPPORTED_DISCRIMINANTS[D]}')
    theta = cm_theta(D, prec)
    x = jprime * BallComplex.pi(prec) / theta ** 2
    logger.debug(f'{point}: j\' pi / theta^2 = {x}')

    payload = {
        'tau0': point.as_dict(),
        'j': SUPPORTED_DISCRIMINANTS[D],
        'curve': list(curve_model(D)),
        'value': x.as_dict(),
        'label': 'θ²/π'
    }
    bounds = {'degree_bound': degree_bound, 'height_bound': str(height_bound)}
    candidate = find_algdep(x, degree_bound, height_bound)
    if candidate is None:
        return Outcome(StatusType.INCONCLUSIVE, payload,
                       message=f'No polynomial of degree <= {degree_bound} and height <= {height_bound} found')

    payload['polynomial'] = polynomials.poly_str(candidate.coefficients)
    certificate = Certificate('siegel-g1', {'tau0': point.as_dict(), 'value': "j'(tau0)·π/θ²"}, bounds,
                              candidate.prec_bits, candidate.verified_at_bits, candidate.residual_log2,
                              polynomial=candidate.coefficients)
    logger.info(f'Certified {payload["polynomial"]} for {point} at {candidate.verified_at_bits} bits')
    return Outcome(StatusType.SUCCESS, payload, [certificate])


def _standard_point(disc: int) -> CMPoint:
    """Root of x^2 - D / 4 or x^2 - x + (1 - D) / 4"""
    if disc % 4 == 0:
        return CMPoint(1, 0, -disc // 4)
    return CMPoint(1, -1, (1 - disc) // 4)


@lru_cache(maxsize=32)
def _beta_components(disc: int, prec: int) -> Tuple[acb, acb, acb]:
    """
    tau, lambda^2 and eta_1 of Z + tau Z, where lambda (Z + tau Z) is the lattice of the model of curve_model, so
    theta = lambda is a period of the model and eta_1 / lambda its quasi-period.
    """
    point = _standard_point(disc)
    A, B = curve_model(disc)
    # y^2 = x^3 + A x + B is (2y)^2 = 4 x^3 - g2 x - g3
    g2E, g3E = -4 * A, -4 * B
    with ctx.workprec(prec + GUARD_BITS):
        tau = point.value(prec)
        g2, g3 = invariant_values(tau, prec)
        j = SUPPORTED_DISCRIMINANTS[disc]
        if j == 1728:
            lambda2 = (g2 / g2E).sqrt()
        elif j == 0:
            lambda2 = (g3 / g3E) ** (arb(1) / 3)
        else:
            lambda2 = g3 * g2E / (g2 * g3E)
        eta1, _ = quasi_period_values(tau, prec)
        return tau, lambda2, eta1


def _beta_values(disc: int, prec: int, perturb: Fraction) -> List[BallComplex]:
    def value(i):
        def fn(p):
            tau, lambda2, eta1 = _beta_components(disc, p)
            if perturb is not None:
                # (eta1 / lambda + eps) * lambda
                eta1 = eta1 + to_arb(perturb) * lambda2.sqrt()
            two_pi_i = acb(0, 2 * arb.pi())
            return [eta1, lambda2, tau * lambda2, two_pi_i, tau * two_pi_i][i]

        return BallComplex.from_function(fn, prec)

    return [value(i) for i in range(len(BETA_LABELS))]


def verify_beta_diag_g1(disc: int, prec: int, height_bound: int, perturb: Union[Fraction, float] = None) -> Outcome:
    """
    Certify that the quasi-period eta_1 of a CM elliptic curve lies in Qbar theta + Qbar (2 pi i / theta), the
    diagonal form of the de Rham comparison. The coefficients are searched in the CM field Q(tau) as an integer
    relation c0 eta_1 theta + (c1 + c2 tau) theta^2 + (c3 + c4 tau) 2 pi i = 0 with c0 != 0 and (c3, c4) != 0.
    :param perturb: offset added to eta_1, a soundness check that must not certify
    """
    if disc not in SUPPORTED_DISCRIMINANTS:
        raise UnsupportedDiscriminant(f'Discriminant {disc} is not in {sorted(SUPPORTED_DISCRIMINANTS)}')
    if perturb is not None and not isinstance(perturb, Fraction):
        perturb = Fraction(perturb).limit_denominator(10 ** 30)

    values = _beta_values(disc, prec, perturb)
    payload = {
        'discriminant': disc,
        'tau': _standard_point(disc).as_dict(),
        'curve': list(curve_model(disc)),
        'values': BETA_LABELS,
        'perturbation': None if perturb is None else str(perturb)
    }
    candidate = find_relation(values, height_bound)
    if candidate is None:
        return Outcome(StatusType.INCONCLUSIVE, payload,
                       message=f'No relation with height <= {height_bound} found at {prec} bits')

    c = candidate.coefficients
    payload['relation'] = c
    if c[0] == 0 or (c[3] == 0 and c[4] == 0):
        logger.warning(f'Relation {c} for discriminant {disc} does not express eta_1 with a 2 pi i / theta part')
        return Outcome(StatusType.INCONCLUSIVE, payload, message='Relation does not involve both eta_1 and 2 pi i')

    # eta_1 = a theta + b (2 pi i / theta) with a = -(c1 + c2 tau) / c0, b = -(c3 + c4 tau) / c0
    payload['a'] = [str(Fraction(-c[1], c[0])), str(Fraction(-c[2], c[0]))]
    payload['b'] = [str(Fraction(-c[3], c[0])), str(Fraction(-c[4], c[0]))]
    certificate = Certificate('beta-diag', {'discriminant': disc, 'values': BETA_LABELS},
                              {'height_bound': str(height_bound)}, candidate.prec_bits, candidate.verified_at_bits,
                              candidate.residual_log2, relation=c)
    logger.info(f'Certified quasi-period relation {c} for discriminant {disc}')
    return Outcome(StatusType.SUCCESS, payload, [certificate])
