from __future__ import annotations

import logging
import math
from typing import List, Optional, Sequence

from flint import acb, arb, ctx

from cmpl.core.errors import InsufficientPrecision, InputError
from cmpl.exact import polynomials
from cmpl.exact.matrices import lll_rows
from cmpl.exact.polynomials import IntPoly, factor_q, primitive
from cmpl.numeric.ball import BallComplex, nearest_int, log2_upper

GUARD_BITS = 32
HEURISTIC_FACTOR = 1.2
HEURISTIC_MARGIN = 8

logger = logging.getLogger('Relations')


class RelationCandidate:

    def __init__(self, coefficients: List[int], prec_bits: int, verified_at_bits: int, residual_log2: float):
        """
        Integer relation sum(m_i * v_i) = 0 that survived re-verification.
        :param prec_bits: precision of the lattice reduction
        :param verified_at_bits: precision of the re-verification
        :param residual_log2: log2 of an upper bound of |sum(m_i * v_i)| at verified_at_bits
        """
        self.coefficients = coefficients
        self.prec_bits = prec_bits
        self.verified_at_bits = verified_at_bits
        self.residual_log2 = residual_log2

    @property
    def height(self) -> int:
        return max(abs(c) for c in self.coefficients)

    def __repr__(self):
        return f'RelationCandidate({self.coefficients}, residual 2^{self.residual_log2})'


def required_bits(n: int, height_bound: int) -> int:
    """Precision heuristic: 1.2 * n * log2(height_bound) bits plus a small margin"""
    return math.ceil(HEURISTIC_FACTOR * n * math.log2(max(height_bound, 2))) + HEURISTIC_MARGIN


def tolerance_log2(bits: int, scale_log2: float) -> float:
    """Residual tolerance at the given precision for values of magnitude 2^scale_log2"""
    return -(bits - bits // 16) + scale_log2


def _working_values(values: Sequence[BallComplex]) -> (List[acb], int, int):
    """Values used for the lattice reduction, their precision and the precision used for re-verification"""
    if all(v.refinable for v in values):
        prec = min(v.prec for v in values)
        return [v.evaluate(prec + GUARD_BITS) for v in values], prec, 2 * prec
    # fixed balls: search with half of their accuracy and verify with the full ball
    accuracy = min(v.accuracy_bits() for v in values)
    return [v.value for v in values], accuracy // 2, accuracy


def _verify(values: Sequence[BallComplex], coefficients: Sequence[int], bits: int) -> (bool, float):
    with ctx.workprec(bits + GUARD_BITS):
        evaluated = [v.evaluate(bits + GUARD_BITS) for v in values]
        residual = acb(0)
        magnitude = arb(0)
        for c, v in zip(coefficients, evaluated):
            residual += c * v
            magnitude += abs(c) * abs(v)
        residual_log2 = log2_upper(residual)
        scale_log2 = max(log2_upper(magnitude), 0)
    return residual_log2 <= tolerance_log2(bits, scale_log2), residual_log2


def _reduce(values: List[acb], bits: int) -> List[List[int]]:
    """LLL on the rows e_i | 2^bits * Re(v_i) | 2^bits * Im(v_i)"""
    n = len(values)
    use_imag = any(not v.imag.is_zero() for v in values)
    magnitude = max(log2_upper(v) for v in values)
    magnitude = 0 if magnitude == -math.inf else max(0, int(magnitude))
    with ctx.workprec(bits + magnitude + 2 * GUARD_BITS):
        scale = arb(2) ** bits
        rows = []
        for i, v in enumerate(values):
            row = [1 if j == i else 0 for j in range(n)]
            row.append(nearest_int(v.real * scale))
            if use_imag:
                row.append(nearest_int(v.imag * scale))
            rows.append(row)
    return [row[:n] for row in lll_rows(rows)]


def find_relation(values: Sequence[BallComplex], height_bound: int,
                  prec_bits: int = None) -> Optional[RelationCandidate]:
    """
    Search an integer relation with coefficients bounded by height_bound. Candidates from the lattice reduction are
    only returned after re-evaluating all values at doubled precision.
    """
    if len(values) < 2:
        raise InputError('An integer relation needs at least two values')
    working, prec, verify_bits = _working_values(values)
    if prec_bits is not None:
        prec = min(prec, prec_bits)
    needed = required_bits(len(values), height_bound)
    if prec < needed:
        raise InsufficientPrecision(f'{prec} bits are not enough for {len(values)} values and height '
                                    f'{height_bound}, need {needed}')

    candidates = _reduce(working, prec - GUARD_BITS // 4)
    candidates = [c for c in candidates if any(v != 0 for v in c) and max(abs(v) for v in c) <= height_bound]
    candidates.sort(key=lambda c: sum(v * v for v in c))
    for c in candidates:
        ok, residual = _verify(values, c, verify_bits)
        if ok:
            # normalize sign: first nonzero coefficient positive
            if next(v for v in c if v != 0) < 0:
                c = [-v for v in c]
            logger.debug(f'Relation {c} verified at {verify_bits} bits with residual 2^{residual}')
            return RelationCandidate(c, prec, verify_bits, residual)
        logger.debug(f'Candidate {c} failed re-verification at {verify_bits} bits (residual 2^{residual})')
    logger.info(f'No integer relation among {len(values)} values with height <= {height_bound} at {prec} bits')
    return None


def integer_relation(values: Sequence[BallComplex], height_bound: int,
                     field_basis: Sequence[BallComplex] = None) -> Optional[List[int]]:
    """
    Integer vector m with max|m_i| <= height_bound and sum(m_i * v_i) = 0 up to the doubled-precision tolerance.
    None means that no candidate survived at the given bounds, which is no proof of independence.
    :param field_basis: Q-basis b_1 ... b_k of a number field. Relations then have coefficients sum_k m_ik b_k,
        returned as the flat list m_11 ... m_1k, m_21 ...
    """
    if field_basis is not None:
        values = [v * b for v in values for b in field_basis]
    candidate = find_relation(values, height_bound)
    return None if candidate is None else candidate.coefficients


def find_algdep(x: BallComplex, degree_bound: int, height_bound: int) -> Optional[RelationCandidate]:
    """
    Search a polynomial of degree <= degree_bound and height <= height_bound vanishing at x by integer relations
    among the powers of x, trying increasing degrees. A reducible result is replaced by its factor vanishing at x.

    A refinable x is refined to the precision each degree needs, so every degree up to degree_bound is searched.
    A fixed ball must be accurate enough for the largest degree, otherwise InsufficientPrecision is raised.
    """
    needed = required_bits(degree_bound + 1, height_bound)
    if not x.refinable and x.accuracy_bits() // 2 < needed:
        raise InsufficientPrecision(f'Precision of {x} is not enough for degree {degree_bound} and height '
                                    f'{height_bound}, need {needed} bits')

    for d in range(1, degree_bound + 1):
        bits = required_bits(d + 1, height_bound)
        if x.refinable and x.prec < bits:
            logger.debug(f'Refining to {bits} bits for degree {d}')
            x = x.refine(bits)
        powers = [x ** k for k in range(d + 1)]
        candidate = find_relation(powers, height_bound)
        if candidate is None:
            continue
        poly = primitive(candidate.coefficients)
        if polynomials.degree(poly) < 1:
            continue
        factor = _vanishing_factor(x, poly, candidate.verified_at_bits)
        if factor is None:
            continue
        if factor != poly:
            logger.debug(f'Reducible candidate {poly} replaced by factor {factor}')
        ok, residual = _verify(powers[:len(factor)], factor, candidate.verified_at_bits)
        if ok:
            return RelationCandidate(factor, candidate.prec_bits, candidate.verified_at_bits, residual)
    logger.info(f'No polynomial of degree <= {degree_bound} and height <= {height_bound} found for {x}')
    return None


def _vanishing_factor(x: BallComplex, poly: IntPoly, bits: int) -> Optional[IntPoly]:
    factors = [f for f, _ in factor_q(poly) if polynomials.degree(f) > 0]
    if len(factors) == 1:
        return primitive(factors[0])
    powers = [x ** k for k in range(len(poly))]
    best = None
    for f in factors:
        ok, residual = _verify(powers[:len(f)], f, bits)
        if ok and (best is None or residual < best[1]):
            best = (primitive(f), residual)
    return None if best is None else best[0]


def algdep(x: BallComplex, degree_bound: int, height_bound: int) -> Optional[IntPoly]:
    """
    Minimal polynomial candidate of x, lowest degree first, or None if no candidate survived verification at the
    given bounds (no transcendence proof).
    """
    candidate = find_algdep(x, degree_bound, height_bound)
    return None if candidate is None else candidate.coefficients
