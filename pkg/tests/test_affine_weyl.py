from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adlv.affine_weyl import (AffineElement, aw_length, is_sigma_straight, newton_kappa,
                              omega_elements, straight_classes)
from adlv.root_data import FundamentalGroup, build_root_datum

C3 = build_root_datum("C3")


def _omega(D, c):
    return tuple(sum(Fraction(ci) * w[k] for ci, w in zip(c, D.fundamental_coweights))
                 for k in range(D.dim))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_translation_length_is_pairing_with_2rho(c):
    lam = _omega(C3, c)
    t = AffineElement.translation_by(lam)
    assert aw_length(C3, t) == 2 * sum(x * y for x, y in zip(lam, C3.rho))
    assert is_sigma_straight(C3, t)
    nu, _ = newton_kappa(C3, t)
    assert nu == lam


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4", "D5", "E6"])
def test_length_zero_elements(name):
    D = build_root_datum(name)
    om = omega_elements(D)
    assert len(om) == FundamentalGroup(D).order
    assert all(aw_length(D, tau) == 0 for tau in om.values())


def test_inverse():
    D = build_root_datum("B2")
    for tau in omega_elements(D).values():
        e = tau * tau.inverse()
        assert e == AffineElement.identity(D.dim)


def test_straight_classes_include_the_basic_ones():
    D = build_root_datum("B2")
    classes = straight_classes(D, 2)
    kappas = {k for _, nu, k in classes if all(x == 0 for x in nu)}
    assert len(kappas) == FundamentalGroup(D).order
