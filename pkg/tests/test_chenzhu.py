from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from adlv.chenzhu import (DecayScan, EmptyADLVError, adlv_dimension, admissible_s, bad_set,
                          count_components, enumerate_lambda_set, key_estimate_scan,
                          norm_constant, suggested_mu)
from adlv.isocrystal import basic_classes, defect, lambda_b
from adlv.root_data import build_root_datum
from adlv.twisted import restrict
from adlv.weights import rel_weight_mult


def setup(name, index):
    D = build_root_datum(name)
    return D, restrict(D), basic_classes(D)[index]


def omega(D, *idx):
    """sum of varpi_i (1-based, repeats allowed) in the labelling of the tables"""
    return tuple(sum(Fraction(idx.count(i + 1)) * w[k] for i, w in enumerate(D.fundamental_coweights))
                 for k in range(D.dim))


@pytest.mark.parametrize("name,index", [("B4", 1), ("C3", 1), ("D5", 1), ("D5", 2), ("D5", 3),
                                        ("D6", 2), ("E6", 1), ("E7", 1), ("D5:2", 1)])
def test_one_component_for_the_extremal_weight(name, index):
    # lambda_b is W-conjugate to lambda_b^+, an extremal weight of V_{lambda_b^+}
    D, rel, b = setup(name, index)
    if rel.d == 1:
        assert count_components(rel, b, lambda_b(rel, b)[1]) == 1


def test_empty_adlv_is_reported():
    D, rel, b = setup("B4", 1)
    with pytest.raises(EmptyADLVError):
        count_components(rel, b, (0, 0, 0, 0))
    with pytest.raises(ValueError):
        adlv_dimension(rel, b, (1, 1, 0, 0))


B4 = setup("B4", 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_dimension_is_integral(a, b_, c, d):
    D, rel, b = B4
    mu = tuple(sorted((a + 1, b_, c, d), reverse=True))
    if sum(mu) % 2 == 0:
        mu = (mu[0] + 1,) + mu[1:]
    dim = adlv_dimension(rel, b, mu)
    assert dim.denominator == 1 and dim >= 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_lambda_set_type_B_by_brute_force(n):
    # for B_n with kappa(b) != 0: dominant integral vectors with odd
    # coordinate sum, without lambda_b^+ = e_1
    D, rel, b = setup("B%d" % n, 1)
    bound = 5
    got = {e.lam for e in enumerate_lambda_set(rel, b, norm_bound=bound)
           if e.classification != "lambda_b_plus"}
    want = set()
    for x in product(range(bound + 1), repeat=n):
        if list(x) == sorted(x, reverse=True) and sum(x) % 2 and sum(x) <= bound:
            want.add(tuple(Fraction(v) for v in x))
    want.discard(tuple(Fraction(int(i == 0)) for i in range(n)))
    assert got == want


def _D(name, index, bound):
    D, rel, b = setup(name, index)
    good = [e.norm_sq for e in enumerate_lambda_set(rel, b, norm_bound=bound) if e.classification == "good"]
    return min(good)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_norm_threshold_type_C(n):
    assert _D("C%d" % n, 1, n + 2) == Fraction(n + 2, 2) ** 2


@pytest.mark.parametrize("n", [5, 7])
def test_norm_threshold_type_D_odd(n):
    for index in (1, 3):
        assert _D("D%d" % n, index, n + 4) == Fraction(n + 4, 2) ** 2
    assert _D("D%d" % n, 2, 6) == 9


@pytest.mark.parametrize("n", [4, 6])
def test_norm_threshold_type_D_even(n):
    for index in (1, 3):
        assert _D("D%d" % n, index, n + 2) == Fraction(n + 2, 2) ** 2
    assert _D("D%d" % n, 2, 6) == 9


def test_E6_excluded_weights():
    D, rel, b1 = setup("E6", 1)
    excluded, bad = bad_set(rel, b1)
    assert set(excluded) == {omega(D, 5), omega(D, 4, 1), omega(D, 2, 6), omega(D, 6, 6)}
    assert bad == omega(D, 5)
    # the weights of Lambda(b_1) of norm at most sqrt(8) are exactly the excluded ones
    small = {e.lam for e in enumerate_lambda_set(rel, b1, norm_sq_bound=8)
             if e.classification != "lambda_b_plus"}
    assert small == set(excluded)
    _, _, b2 = setup("E6", 2)
    excluded2, bad2 = bad_set(rel, b2)
    assert set(excluded2) == {omega(D, 2), omega(D, 4, 6), omega(D, 5, 1), omega(D, 1, 1)}


def test_E7_excluded_weight():
    D, rel, b = setup("E7", 1)
    rows = [e for e in enumerate_lambda_set(rel, b, norm_sq_bound=Fraction(22, 4))
            if e.classification != "lambda_b_plus"]
    assert {e.lam for e in rows if e.norm_sq < Fraction(22, 4)} == {omega(D, 5)}
    # the bound is attained: varpi_1 + varpi_7 lies in Lambda(b) with |lam|^2 = 22/4
    assert {e.lam for e in rows if e.norm_sq == Fraction(22, 4)} == {omega(D, 1, 7)}


def test_norm_constants():
    assert norm_constant(restrict(build_root_datum("B3"))) == 4
    assert norm_constant(restrict(build_root_datum("E6"))) == 2


def test_suggested_mu_E6():
    D, rel, b = setup("E6", 1)
    mu1, mu2 = suggested_mu(rel, b)
    assert mu1 == omega(D, 1) and mu2 == omega(D, 1, 1, 6)
    assert rel_weight_mult(rel, mu2, omega(D, 5)) == 14
    assert rel_weight_mult(rel, mu1, omega(D, 5)) == 0


def test_admissible_s_and_scan_validation():
    D, rel, b = setup("B4", 1)
    assert b.s0 == 2
    assert admissible_s(rel, b, 6) == [2, 4, 6]
    with pytest.raises(ValueError):
        key_estimate_scan(rel, b, (2, 1, 0, 0), [3], 2)


def test_scan_serialises():
    D, rel, b = setup("B2", 1)
    scan = key_estimate_scan(rel, b, (2, 1), [2, 4], 2)
    assert isinstance(scan, DecayScan)
    js = scan.to_json(rel)
    assert [r["s"] for r in js["rows"]] == [2, 4]
    assert [Fraction(r["value"]) for r in js["rows"]] == [v for _, v in scan.rows]
