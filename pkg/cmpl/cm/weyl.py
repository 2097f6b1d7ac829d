from __future__ import annotations

import logging
import math
from functools import lru_cache
from typing import Optional, Tuple

from cmpl.cm.fields import CMField, is_cm_field
from cmpl.core.errors import DegreeCapExceeded, NotCM, ReduciblePolynomial
from cmpl.exact.galois import splitting_field_order

WEYL_DEGREE_CAP = 6

logger = logging.getLogger('Weyl')


def weyl_order(g: int) -> int:
    """Order of the Weyl group (Z/2)^g semidirect S_g of Sp_2g"""
    return 2 ** g * math.factorial(g)


@lru_cache(maxsize=128)
def _galois_order(min_poly: Tuple[int, ...]) -> int:
    return splitting_field_order(list(min_poly))


def galois_order(E: CMField) -> int:
    """Order of the Galois group of the Galois closure of E"""
    if E.field.degree > WEYL_DEGREE_CAP:
        raise DegreeCapExceeded(f'Weyl check is limited to degree {WEYL_DEGREE_CAP}, got {E.field.degree}')
    return _galois_order(tuple(E.min_poly))


def weyl_check(E: CMField) -> bool:
    """E is Galois generic iff the Galois closure has the maximal possible group order 2^g * g!"""
    order = galois_order(E)
    logger.debug(f'{E}: splitting field order {order}, Weyl order {weyl_order(E.g)}')
    return order == weyl_order(E.g)


def scan_weyl_quartics(max_a: int, max_b: int) -> Optional[Tuple[CMField, int]]:
    """
    First CM field x^4 + a x^2 + b (1 <= a <= max_a, 1 <= b <= max_b, a outer loop) with Galois closure of
    order 8.
    :return: (field, order) or None if no Weyl field exists in the range
    """
    for a in range(1, max_a + 1):
        for b in range(1, max_b + 1):
            try:
                E = is_cm_field([b, 0, a, 0, 1])
            except (NotCM, ReduciblePolynomial):
                continue
            order = galois_order(E)
            logger.debug(f'x^4 + {a}x^2 + {b}: splitting field order {order}')
            if order == weyl_order(2):
                logger.info(f'Found Weyl quartic {E}')
                return E, order
    logger.info(f'No Weyl quartic x^4 + a x^2 + b with a <= {max_a}, b <= {max_b}')
    return None
