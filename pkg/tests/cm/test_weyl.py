import pytest

from cmpl.cm.fields import is_cm_field
from cmpl.cm.weyl import galois_order, scan_weyl_quartics, weyl_check, weyl_order
from cmpl.core.errors import DegreeCapExceeded, NotWeyl
from cmpl.shimura.special import SpecialSubvarietyDescriptor, SubvarietyKind, special_subvarieties_weyl


def test_weyl_order():
    assert [weyl_order(g) for g in (1, 2, 3)] == [2, 8, 48]


def test_weyl_check(gaussian, zeta5):
    assert weyl_check(gaussian)
    assert galois_order(zeta5) == 4
    assert not weyl_check(zeta5)
    assert weyl_check(is_cm_field('x^4 + 5x^2 + 2'))


def test_degree_cap():
    with pytest.raises(DegreeCapExceeded):
        weyl_check(is_cm_field('x^8 + 1'))


def test_scan_weyl_quartics():
    E, order = scan_weyl_quartics(5, 2)
    assert E.min_poly == [2, 0, 5, 0, 1]
    assert order == 8
    # x^4 + x^2 + 1 is reducible
    assert scan_weyl_quartics(1, 1) is None


def test_special_subvarieties():
    descriptors = special_subvarieties_weyl(is_cm_field('x^4 + 5x^2 + 2'))
    assert [d.kind for d in descriptors] == [SubvarietyKind.POINT, SubvarietyKind.HILBERT, SubvarietyKind.FULL]
    assert [d.dim for d in descriptors] == [0, 2, 3]
    F = descriptors[1].field
    assert F.degree == 2
    assert not F.is_totally_imaginary()
    assert descriptors[1].as_dict()['kind'] == 'hilbert'


def test_special_subvarieties_g1(gaussian):
    assert special_subvarieties_weyl(gaussian) == [SpecialSubvarietyDescriptor(SubvarietyKind.POINT, 0),
                                                   SpecialSubvarietyDescriptor(SubvarietyKind.FULL, 1)]


def test_special_subvarieties_not_weyl(zeta5):
    with pytest.raises(NotWeyl):
        special_subvarieties_weyl(zeta5)
