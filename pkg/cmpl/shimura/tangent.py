from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

from cmpl.biq.monomials import PeriodMonomial
from cmpl.biq.structures import SplitBiQ, cm_lie_biq, isotypic_blocks, restrict, sym2, tate_twist
from cmpl.cm.lattice import RelationLattice
from cmpl.core.errors import IndexOutOfRange, InputError, SymbolMismatch
from cmpl.shimura.roots import Root, RootDatumGSp

logger = logging.getLogger('Shimura')


def siegel_label(j: int, k: int) -> PeriodMonomial:
    """t_j t_j' / L, the period of the root space of e_j + e_j'"""
    return PeriodMonomial.symbol(j) * PeriodMonomial.symbol(k) / PeriodMonomial.two_pi_i()


def siegel_tangent_biq(g: int) -> SplitBiQ:
    """Tangent space of A_g at a CM point, lines t_j t_j' / L ordered lexicographically in (j, j')"""
    return SplitBiQ([siegel_label(j, k) for j, k in RootDatumGSp(g).lines()])


def hilbert_tangent_biq(g: int) -> SplitBiQ:
    """Tangent space of a Hilbert modular variety, the diagonal lines t_j^2 / L"""
    if g < 1:
        raise InputError(f'g must be positive, got {g}')
    return SplitBiQ([siegel_label(j, j) for j in range(1, g + 1)])


def root_for_line(g: int, j: int, k: int) -> Tuple[Root, PeriodMonomial]:
    """Root e_j + e_j' of the line (j, j') of the Siegel tangent space and its period"""
    if not 1 <= j <= k <= g:
        raise IndexOutOfRange(f'Line ({j}, {k}) requires 1 <= j <= j\' <= {g}')
    datum = RootDatumGSp(g)
    return datum.noncompact_positive[datum.lines().index((j, k))], siegel_label(j, k)


def line_for_root(g: int, root: Sequence[int]) -> Tuple[int, int]:
    datum = RootDatumGSp(g)
    vector = tuple(int(v) for v in (root.vector if isinstance(root, Root) else root))
    for line, r in zip(datum.lines(), datum.noncompact_positive):
        if r.vector == vector:
            return line
    raise IndexOutOfRange(f'{list(vector)} is no positive noncompact root for g={g}')


class RootspaceReport:

    def __init__(self, g: int, blocks: List[List[Tuple[int, int]]]):
        """
        :param blocks: isotypic blocks of the Siegel tangent space as lists of lines (j, j')
        """
        self.g = g
        self.blocks = blocks

    @property
    def condition_i(self) -> bool:
        """All periods t_j t_j' / L are pairwise distinct modulo Qbar*"""
        return all(len(b) == 1 for b in self.blocks)

    @property
    def merged_blocks(self) -> List[List[Tuple[int, int]]]:
        """Blocks of dimension >= 2, containing bi-Qbar lines that are no root spaces"""
        return [b for b in self.blocks if len(b) > 1]

    def as_dict(self):
        return {
            'g': self.g,
            'condition_i': self.condition_i,
            'blocks': [[list(line) for line in b] for b in self.blocks],
            'labels': [[str(siegel_label(j, k)) for j, k in b] for b in self.blocks],
            'non_root_families': [[list(line) for line in b] for b in self.merged_blocks]
        }


def rootspace_analysis(g: int, R: RelationLattice = None) -> RootspaceReport:
    """
    Every bi-Qbar subspace of the Siegel tangent space is a sum of root spaces iff the periods of all lines are
    distinct modulo the relation lattice.
    """
    if R is None:
        R = RelationLattice.empty(g)
    if R.g != g:
        raise SymbolMismatch(f'Relation lattice for g={R.g} used with g={g}')
    lines = RootDatumGSp(g).lines()
    blocks = [[lines[i - 1] for i in block] for block, _ in isotypic_blocks(siegel_tangent_biq(g), R)]
    report = RootspaceReport(g, blocks)
    logger.debug(f'Rootspace analysis g={g}: condition (i) {report.condition_i}')
    return report


def kodaira_spencer_check(g: int) -> bool:
    """Siegel tangent space twisted by L(1) equals Sym^2 of the Lie algebra of the CM abelian variety"""
    return tate_twist(siegel_tangent_biq(g), 1) == sym2(cm_lie_biq(g))


def hilbert_restriction_check(g: int) -> bool:
    """Hilbert labels are exactly the Siegel labels of the diagonal lines"""
    lines = RootDatumGSp(g).lines()
    diagonal = [i + 1 for i, (j, k) in enumerate(lines) if j == k]
    return restrict(siegel_tangent_biq(g), diagonal) == hilbert_tangent_biq(g)
