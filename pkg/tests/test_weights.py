from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adlv.root_data import build_root_datum
from adlv.twisted import restrict
from adlv.weights import (orbit_size, rel_weight_mult, rel_weight_table, weight_mult,
                          weight_mult_kostant, weight_table, weyl_dim)

# dimensions of the fundamental representations from the classification tables
FUNDAMENTAL_DIMS = {
    "E6": [27, 27, 78, 351, 351, 2925],
    "E7": [56, 133, 912, 1539, 8645, 27664, 365750],
    "B3": [6, 14, 14],    # dual group Sp_6
    "C3": [7, 8, 21],     # dual group Spin_7
}


@pytest.mark.parametrize("name", sorted(FUNDAMENTAL_DIMS))
def test_fundamental_dimensions(name):
    D = build_root_datum(name)
    assert sorted(weyl_dim(D, w) for w in D.fundamental_coweights) == FUNDAMENTAL_DIMS[name]


def _omega(D, c):
    return tuple(sum(Fraction(ci) * w[k] for ci, w in zip(c, D.fundamental_coweights))
                 for k in range(D.dim))


B3 = build_root_datum("B3")
D4 = build_root_datum("D4")


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_freudenthal_sums_to_weyl_dimension(c):
    mu = _omega(B3, c)
    table = weight_table(B3, mu)
    assert sum(m * orbit_size(B3, lam) for lam, m in table.items()) == weyl_dim(B3, mu)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_freudenthal_agrees_with_kostant_formula(c):
    mu = _omega(D4, c)
    for lam in weight_table(D4, mu):
        assert weight_mult(D4, mu, lam) == weight_mult_kostant(D4, mu, lam)


def test_relative_table_of_split_group_is_absolute():
    rel = restrict(B3)
    mu = _omega(B3, [1, 0, 1])
    assert rel_weight_table(rel, mu) == weight_table(B3, mu)


@pytest.mark.parametrize("name,c", [("D5:2", [1, 0, 0, 0, 0]), ("D5:2", [0, 1, 0, 0, 0]),
                                    ("D5:2", [1, 0, 0, 1, 1]), ("E6:2", [1, 0, 0, 0, 0, 1])])
def test_relative_weight_spaces_fill_the_representation(name, c):
    # every weight restricts into the W^1-orbit of exactly one relative
    # dominant weight, so the relative weight spaces add up to dim V_mu
    D = build_root_datum(name)
    rel = restrict(D)
    mu = _omega(D, c)
    table = rel_weight_table(rel, mu)
    assert sum(m * len(rel.orbit(lam)) for lam, m in table.items()) == weyl_dim(D, mu)
    for lam, m in table.items():
        assert rel_weight_mult(rel, mu, lam) == m
