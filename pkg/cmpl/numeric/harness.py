from __future__ import annotations

import logging
from fractions import Fraction
from typing import List, Sequence

import numpy as np

from cmpl.core.errors import InputError
from cmpl.core.model import Certificate, Outcome, StatusType
from cmpl.exact.relations import find_relation
from cmpl.numeric.ball import BallComplex, log2_upper
from cmpl.numeric.periods import elliptic_periods

QUADRATIC = 'quadratic'
QUASI = 'quasi'

# planted relation 2 v_1 - 3 v_2 - v_3 = 0
PLANTED = (2, -3)

logger = logging.getLogger('Harness')


def quadratic_values(thetas: Sequence[BallComplex], prec: int) -> (List[BallComplex], List[str]):
    """theta_j theta_j' / pi for j <= j'"""
    thetas = [t.refine(prec) if t.refinable else t for t in thetas]
    pi = BallComplex.pi(prec)
    values, labels = [], []
    for j in range(len(thetas)):
        for k in range(j, len(thetas)):
            values.append(thetas[j] * thetas[k] / pi)
            labels.append(f'θ{j + 1}²/π' if j == k else f'θ{j + 1}θ{k + 1}/π')
    return values, labels


def quasi_values(theta: BallComplex, prec: int, index: int = 1) -> (List[BallComplex], List[str]):
    """2 pi i, theta and 2 pi i / theta"""
    theta = theta.refine(prec) if theta.refinable else theta
    two_pi_i = BallComplex.two_pi_i(prec)
    return [two_pi_i, theta, two_pi_i / theta], ['2πi', f'θ{index}', f'2πi/θ{index}']


def plant(values: List[BallComplex], labels: List[str]) -> (List[BallComplex], List[str]):
    """Replace the third value by a known combination of the first two"""
    if len(values) < 2:
        raise InputError('Planting a relation needs at least two values')
    a, b = PLANTED
    return values[:2] + [a * values[0] + b * values[1]], labels[:2] + [f'{a}·{labels[0]} {b:+d}·{labels[1]}']


def over_field(values: List[BallComplex], labels: List[str],
               field_basis: Sequence[BallComplex]) -> (List[BallComplex], List[str]):
    """Products b_k * v_i, relations among them have coefficients in the Z-span of the basis b_1 ... b_k"""
    return ([v * b for v in values for b in field_basis],
            [f'b{k + 1}·{label}' for label in labels for k in range(len(field_basis))])


def _search(values: List[BallComplex], labels: List[str], height_bound: int, variant: str):
    candidate = find_relation(values, height_bound)
    group = {'values': labels, 'relation': None if candidate is None else candidate.coefficients}
    if candidate is None:
        return group, None
    logger.warning(f'Relation {candidate.coefficients} among {labels} verified at {candidate.verified_at_bits} bits')
    certificate = Certificate('falsify', {'variant': variant, 'values': labels}, {'height_bound': str(height_bound)},
                              candidate.prec_bits, candidate.verified_at_bits, candidate.residual_log2,
                              relation=candidate.coefficients)
    return group, certificate


def hasc_falsify(thetas: Sequence[BallComplex], prec: int, height_bound: int, variant: str = QUADRATIC,
                 planted: bool = False, field_basis: Sequence[BallComplex] = None) -> Outcome:
    """
    Search integer relations that contradict the predicted independence of period values. The quadratic variant
    relates the products theta_j theta_j' / pi of all periods, the quasi variant relates 2 pi i, theta and
    2 pi i / theta for every period separately.

    A bounded search without result is no proof of independence and is reported as INCONCLUSIVE; a verified
    relation is reported as SUCCESS together with its certificate.
    :param planted: replace the values by a known relation, a self-test of the search
    :param field_basis: Q-basis of a number field, relations then have coefficients in the Z-span of the basis
    """
    if len(thetas) == 0:
        raise InputError('At least one period is required')
    if variant == QUADRATIC:
        groups = [quadratic_values(thetas, prec)]
    elif variant == QUASI:
        groups = [quasi_values(t, prec, i + 1) for i, t in enumerate(thetas)]
    else:
        raise InputError(f'Unknown falsification variant {variant}')
    if planted:
        groups = [plant(values, labels) for values, labels in groups]
    if field_basis is not None:
        if len(field_basis) == 0:
            raise InputError('The field basis must not be empty')
        groups = [over_field(values, labels, field_basis) for values, labels in groups]

    results, certificates = [], []
    for values, labels in groups:
        if len(values) < 2:
            raise InputError(f'The {variant} variant needs at least two values, got {labels}')
        group, certificate = _search(values, labels, height_bound, variant)
        results.append(group)
        if certificate is not None:
            certificates.append(certificate)

    payload = {'variant': variant, 'planted': planted, 'prec_bits': prec, 'height_bound': str(height_bound),
               'groups': results}
    if field_basis is not None:
        payload['field_basis'] = [b.as_dict() for b in field_basis]
    if len(certificates) == 0:
        logger.info(f'No relation in the {variant} variant with height <= {height_bound} at {prec} bits')
        return Outcome(StatusType.INCONCLUSIVE, payload, message='none found')
    return Outcome(StatusType.SUCCESS, payload, certificates, message=f'{len(certificates)} relation(s) found')


def random_taus(n: int, seed: int = 0, denominator: int = 1024) -> List[complex]:
    """Points of the upper half plane with dyadic coordinates, 0.3 <= Im <= 2 and |Re| <= 1"""
    rng = np.random.default_rng(seed)
    re = np.round(rng.uniform(-1, 1, n) * denominator) / denominator
    im = np.round(rng.uniform(0.3, 2, n) * denominator) / denominator
    return [complex(float(x), float(y)) for x, y in zip(re, im)]


def legendre_check(samples: int, prec: int, seed: int = 0) -> Outcome:
    """Residual of omega2 eta1 - omega1 eta2 = 2 pi i at random points must be below 2^(-prec + 16)"""
    if samples < 1:
        raise InputError(f'Expected at least one sample, given {samples}')
    tolerance = -prec + 16
    worst = None
    failures = []
    for z in random_taus(samples, seed):
        tau = BallComplex.exact(z, prec)
        residual = log2_upper(elliptic_periods(tau, prec).legendre_residual().value)
        worst = residual if worst is None else max(worst, residual)
        if residual > tolerance:
            logger.warning(f'Legendre residual 2^{residual} at tau = {z} exceeds 2^{tolerance}')
            failures.append({'tau': [str(Fraction(z.real)), str(Fraction(z.imag))], 'residual_log2': residual})

    payload = {
        'samples': samples,
        'seed': seed,
        'prec_bits': prec,
        'tolerance_log2': tolerance,
        'max_residual_log2': None if worst == float('-inf') else worst,
        'failures': failures
    }
    if len(failures) > 0:
        return Outcome(StatusType.FAILED, payload, message=f'{len(failures)} of {samples} samples failed')
    return Outcome(StatusType.SUCCESS, payload)
