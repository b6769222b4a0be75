import pytest

from adlv.isocrystal import (basic_classes, class_representative, defect, in_B_G_mu,
                             kottwitz_sign, parahoric_volume, standard_parahorics,
                             volume_at_zero)
from adlv.root_data import FundamentalGroup, build_root_datum
from adlv.twisted import restrict


@pytest.mark.parametrize("name", ["B3", "C4", "D5", "D6", "E6", "E7", "D5:2", "D4:3", "E6:2"])
def test_one_basic_class_per_coinvariant(name):
    D = build_root_datum(name)
    assert len(basic_classes(D)) == FundamentalGroup(D).coinvariant_order


@pytest.mark.parametrize("name", ["B3", "D5", "E6", "D5:2"])
def test_unramified_class_has_no_defect(name):
    D = build_root_datum(name)
    b = basic_classes(D)[0]
    assert b.is_trivial
    assert defect(D, b) == 0 and kottwitz_sign(D, b) == 1


@pytest.mark.parametrize("name", ["B3", "C3", "D4"])
def test_special_parahoric_has_volume_one(name):
    D = build_root_datum(name)
    b = basic_classes(D)[0]
    J = tuple(range(1, D.rank + 1))
    num, den = parahoric_volume(D, b, J)
    assert num == den


def test_volume_rejects_non_stable_sets():
    D = build_root_datum("B3")
    b = basic_classes(D)[1]
    stable = set(standard_parahorics(D, b))
    bad = next(J for J in [(0,), (1,), (2,), (3,)] if J not in stable)
    with pytest.raises(ValueError):
        parahoric_volume(D, b, bad)


def test_membership():
    D = build_root_datum("B4")
    rel = restrict(D)
    b = basic_classes(D)[1]
    e1 = (1, 0, 0, 0)
    assert in_B_G_mu(rel, b, e1)
    assert not in_B_G_mu(rel, basic_classes(D)[0], e1)
    with pytest.raises(ValueError):
        class_representative(D, 5)
