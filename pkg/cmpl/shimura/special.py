from __future__ import annotations

import logging
from enum import Enum
from typing import List, Optional

from cmpl.cm.fields import CMField, maximal_real_subfield
from cmpl.cm.weyl import weyl_check
from cmpl.core.errors import NotWeyl
from cmpl.exact.fields import NumberField

logger = logging.getLogger('Shimura')


class SubvarietyKind(Enum):
    POINT = 'point'
    HILBERT = 'hilbert'
    FULL = 'full'


class SpecialSubvarietyDescriptor:

    def __init__(self, kind: SubvarietyKind, dim: int, field: Optional[NumberField] = None):
        """
        Special subvariety of A_g through a CM point.
        :param field: totally real field of a Hilbert modular subvariety
        """
        self.kind = kind
        self.dim = dim
        self.field = field

    def __eq__(self, other):
        if isinstance(other, SpecialSubvarietyDescriptor):
            return self.kind == other.kind and self.dim == other.dim and self.field == other.field
        return False

    def __repr__(self):
        if self.kind == SubvarietyKind.HILBERT:
            return f'hilbert({self.field}, dim={self.dim})'
        return f'{self.kind.value}(dim={self.dim})'

    def as_dict(self):
        res = {
            'kind': self.kind.value,
            'dim': self.dim
        }
        if self.field is not None:
            res['field'] = self.field.min_poly
        return res


def special_subvarieties_weyl(E: CMField) -> List[SpecialSubvarietyDescriptor]:
    """
    The special subvarieties of A_g through a Weyl CM point: the point, the Hilbert modular variety of the
    maximal real subfield and A_g. For g = 1 the last two coincide.
    """
    if not weyl_check(E):
        raise NotWeyl(f'{E} is not a Weyl CM field')
    g = E.g
    point = SpecialSubvarietyDescriptor(SubvarietyKind.POINT, 0)
    full = SpecialSubvarietyDescriptor(SubvarietyKind.FULL, g * (g + 1) // 2)
    if g == 1:
        return [point, full]
    F, _ = maximal_real_subfield(E)
    return [point, SpecialSubvarietyDescriptor(SubvarietyKind.HILBERT, g, F), full]
