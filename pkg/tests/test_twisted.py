from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adlv.root_data import build_root_datum
from adlv.twisted import restrict

# relative root systems: D_n^(2) -> B_{n-1}, E6^(2) -> F4, D4^(3) -> G2
REL_POSITIVE = {"D5:2": 16, "D6:2": 25, "E6:2": 24, "D4:3": 6, "B3": 9}


@pytest.mark.parametrize("name", sorted(REL_POSITIVE))
def test_relative_positive_coroots(name):
    rel = restrict(build_root_datum(name))
    assert len(rel.F_coroots_pos) == REL_POSITIVE[name]


@pytest.mark.parametrize("name", ["B3", "C3", "E6"])
def test_split_is_its_own_relative_datum(name):
    rel = restrict(build_root_datum(name))
    assert rel.is_split and rel.d == 1
    assert len(rel.weyl_elements) == rel.datum.weyl_group_order


def test_order_of_twist():
    assert restrict(build_root_datum("D5:2")).d == 2
    assert restrict(build_root_datum("D4:3")).d == 3


REL = restrict(build_root_datum("D5:2"))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_display_round_trip_and_linearity_of_power_map(a, b):
    x = REL.from_display([Fraction(v) for v in a])
    y = REL.from_display([Fraction(v) for v in b])
    assert REL.from_display(REL.to_display(x)) == x
    s = 4
    lhs = REL.lambda_power_s(tuple(u + v for u, v in zip(x, y)), s)
    rhs = tuple(u + v for u, v in zip(REL.lambda_power_s(x, s), REL.lambda_power_s(y, s)))
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_to_dominant_word_reaches_dominant(a):
    x = REL.from_display([Fraction(v) for v in a])
    y, word = REL.to_dominant(x)
    assert REL.is_dominant(y)
    assert REL.act(word, x) == y
    assert y in REL.orbit(x)


def test_power_map_needs_multiple_of_d():
    with pytest.raises(ValueError):
        REL.lambda_power_s(REL.from_display([1, 0, 0, 0]), 3)
