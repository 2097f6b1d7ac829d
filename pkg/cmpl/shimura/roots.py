from __future__ import annotations

from collections import namedtuple
from typing import List, Tuple

import numpy as np

from cmpl.core.errors import InputError

# Namedtuple instead of class to allow sharing between processes
Root = namedtuple('Root', 'vector compact')


def _unit(g: int, j: int) -> np.ndarray:
    e = np.zeros(g + 1, dtype=int)
    e[j] = 1
    return e


class RootDatumGSp:

    def __init__(self, g: int):
        """
        Roots of GSp_2g with respect to the diagonal torus, written in the character basis e_0 ... e_g with e_0 the
        similitude character. Noncompact roots are +-(e_j + e_j') for j <= j', compact roots e_j - e_j' for j != j'.
        """
        if g < 1:
            raise InputError(f'g must be positive, got {g}')
        self.g = g

        self.noncompact_positive: List[Root] = [Root(tuple(int(v) for v in _unit(g, j) + _unit(g, k)), False)
                                                for j, k in self.lines()]
        self.noncompact: List[Root] = self.noncompact_positive + \
            [Root(tuple(-v for v in r.vector), False) for r in self.noncompact_positive]
        self.compact: List[Root] = [Root(tuple(int(v) for v in _unit(g, j) - _unit(g, k)), True)
                                    for j in range(1, g + 1) for k in range(1, g + 1) if j != k]

    def lines(self) -> List[Tuple[int, int]]:
        """Pairs (j, j') with 1 <= j <= j' <= g in lexicographic order"""
        return [(j, k) for j in range(1, self.g + 1) for k in range(j, self.g + 1)]

    @property
    def roots(self) -> List[Root]:
        return self.noncompact + self.compact

    def as_dict(self):
        return {
            'g': self.g,
            'roots': [{'vector': list(r.vector), 'compact': r.compact} for r in self.roots],
            'positive_noncompact': [list(r.vector) for r in self.noncompact_positive]
        }


def roots(g: int) -> RootDatumGSp:
    return RootDatumGSp(g)
