from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adlv.kostant import QPolynomial, d_beta, kostant_count, p_kos, p_poly, p_q
from adlv.root_data import build_root_datum
from adlv.twisted import restrict

A1 = restrict(build_root_datum("A1"))
B2 = restrict(build_root_datum("B2"))


@pytest.mark.parametrize("k", range(6))
def test_rank_one_partition_function(k):
    # k * alpha^vee has exactly one Kostant partition, of size k
    lam = (Fraction(2 * k),)
    assert p_poly(A1, lam) == QPolynomial.from_q_poly((0,) * k + (1,))


def test_outside_positive_cone_is_zero():
    assert p_poly(B2, (Fraction(-1), Fraction(0))).is_zero()
    assert kostant_count(B2, (Fraction(-1), Fraction(0))) == 0


@pytest.mark.parametrize("c", [(1, 0), (0, 1), (1, 1), (2, 1), (2, 2), (3, 2)])
def test_value_at_one_counts_partitions(c):
    a1, a2 = B2.datum.simple_coroots
    lam = tuple(c[0] * x + c[1] * y for x, y in zip(a1, a2))
    assert sum(p_q(B2, lam)) == kostant_count(B2, lam)
    assert tuple(p_kos(B2, lam)) == tuple(p_q(B2, lam))


coeffs = st.lists(st.integers(-5, 5), max_size=6)


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs, st.sampled_from([Fraction(2), Fraction(3), Fraction(5, 2)]))
def test_evaluation_is_a_ring_map(a, b, q):
    p, r = QPolynomial.from_qinv_poly(tuple(a)), QPolynomial.from_q_poly(tuple(b))
    assert (p + r).at_q(q) == p.at_q(q) + r.at_q(q)
    assert (p * r).at_q(q) == p.at_q(q) * r.at_q(q)
    assert (p - p).is_zero()


@settings(max_examples=60, deadline=None)
@given(coeffs, st.integers(-4, 4))
def test_json_round_trip(a, shift):
    p = QPolynomial.from_qinv_poly(tuple(a)) * QPolynomial.q_power(shift)
    assert QPolynomial.from_json(p.to_json()) == p


@pytest.mark.parametrize("n", range(6))
def test_type_two_factor(n):
    # A2 folded by its diagram automorphism: one type II class with b = 1, so
    # 1 / d_beta = 1 / ((1 - q^2 x)(1 + q x)) with x = e^{beta/2}
    rel = restrict(build_root_datum("A2:2"))
    (beta,) = [b for b in rel.Phi1_coroots_pos if rel.type_of[b] == "II"]
    assert [(s, k) for s, k, _ in d_beta(rel, beta)] == [(1, 2), (-1, 1)]
    gamma = tuple(x / 2 for x in beta)
    want = {}
    for i in range(n + 1):
        j = n - i
        want[2 * i + j] = want.get(2 * i + j, 0) + (-1) ** j
    got = p_q(rel, tuple(n * x for x in gamma))
    assert {k: a for k, a in enumerate(got) if a} == {k: a for k, a in want.items() if a}


def test_folding_odd_A_has_no_type_two():
    rel = restrict(build_root_datum("A3:2"))
    assert set(rel.type_of.values()) == {"I"}
