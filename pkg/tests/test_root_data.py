from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adlv.root_data import (FundamentalGroup, build_root_datum, dominance_leq, dominant_rep,
                            fmt_vec, parse_vec, reflect, weyl_orbit)

# |Phi^+| and |W| from the classification tables
TABLE = {
    "A2": (3, 6), "A3": (6, 24), "B2": (4, 8), "B3": (9, 48), "C3": (9, 48),
    "D4": (12, 192), "D5": (20, 1920), "E6": (36, 51840), "E7": (63, 2903040),
}


@pytest.mark.parametrize("name", sorted(TABLE))
def test_root_counts_and_weyl_order(name):
    D = build_root_datum(name)
    npos, order = TABLE[name]
    assert len(D.positive_roots) == len(D.positive_coroots) == npos
    assert D.weyl_group_order == order
    assert D.longest_length == npos


@pytest.mark.parametrize("name", ["A1", "B3", "C4", "D5", "E6", "E7"])
def test_rho_pairs_to_one_with_simple_coroots(name):
    D = build_root_datum(name)
    for ac in D.simple_coroots:
        assert sum(x * y for x, y in zip(D.rho, ac)) == 1


@pytest.mark.parametrize("name,order", [("B4", 2), ("C3", 2), ("D5", 4), ("D6", 4), ("E6", 3), ("E7", 2), ("A3", 4)])
def test_fundamental_group_order(name, order):
    assert FundamentalGroup(build_root_datum(name)).order == order


@pytest.mark.parametrize("name,order", [("D5:2", 2), ("D6:2", 2), ("D4:3", 1), ("E6:2", 1)])
def test_coinvariants_twisted(name, order):
    assert FundamentalGroup(build_root_datum(name)).coinvariant_order == order


def test_bad_spec_rejected():
    for spec in ["X3", "B1", "E9", "B3:2", "D4:5", ""]:
        with pytest.raises(ValueError):
            build_root_datum(spec)


fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@given(st.lists(fracs, min_size=1, max_size=6))
def test_vector_text_round_trip(xs):
    assert parse_vec(",".join(fmt_vec(xs))) == tuple(Fraction(x) for x in xs)


B3 = build_root_datum("B3")


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=3, max_size=3), st.integers(0, 8))
def test_reflection_is_involution(x, i):
    x = tuple(Fraction(v) for v in x)
    a = B3.positive_roots[i]
    ac = B3.positive_coroots[i]
    assert reflect(reflect(x, a, ac), a, ac) == x


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_dominant_rep_lies_in_orbit(x):
    x = tuple(Fraction(v) for v in x)
    y, parity = dominant_rep(B3, x)
    assert parity in (1, -1)
    assert B3.is_dominant(y)
    assert y in weyl_orbit(B3, x)
    assert dominance_leq(B3, y, y)
