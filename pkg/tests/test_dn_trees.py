from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from adlv.dn_trees import (build_tree, check_admissible, lambda_t, leaf_restricted_sums,
                           naive_signed_sums, parse_nu, positive_roots_D, signed_partition_sums)

signs = st.sampled_from([1, -1])


def test_positive_roots_count():
    for n in (4, 5, 7):
        assert len(positive_roots_D(n)) == n * (n - 1)


def test_parse_nu():
    assert parse_nu("++-+") == (1, 1, -1, 1)
    assert parse_nu("1,-1,1,1") == (1, -1, 1, 1)
    with pytest.raises(ValueError):
        parse_nu("1,2,1,1")
    with pytest.raises(ValueError):
        lambda_t(5, (1, 1, 1), 1)


@settings(max_examples=20, deadline=None)
@given(st.lists(signs, min_size=4, max_size=4), st.integers(1, 5), st.integers(1, 5))
def test_lambda_t_is_linear(nu, t, u):
    a, b, c = lambda_t(5, nu, t), lambda_t(5, nu, u), lambda_t(5, nu, t + u)
    assert tuple(x + y for x, y in zip(a, b)) == c


@settings(max_examples=12, deadline=None)
@given(st.lists(signs, min_size=6, max_size=6))
def test_trees_are_admissible(nu):
    tree = build_tree(7, tuple(nu))
    assert check_admissible(tree) == (True, "admissible")
    assert len(tree.leaves) == 32


def test_corrupted_tree_is_rejected():
    tree = build_tree(5, (1, 1, 1, 1))
    leaf = tree.leaves[0]
    tree.phi[leaf] = tree.phi[tree.path(leaf)[1]]
    ok, msg = check_admissible(tree)
    assert not ok and msg


def test_generating_function_against_subsets():
    nu = (1, -1, 1, 1)
    assert signed_partition_sums(5, nu, 1, 8) == naive_signed_sums(5, nu, 1, 8)


def test_tree_decomposition_is_exact():
    nu = (1, 1, -1, 1)
    tree = build_tree(5, nu)
    lam = lambda_t(5, nu, 1)
    total = [0] * 9
    for v in tree.leaves:
        total = [a + b for a, b in zip(total, leaf_restricted_sums(tree, v, lam, 8))]
    assert total == signed_partition_sums(5, nu, 1, 8)
    assert leaf_restricted_sums(tree, 0, lam, 8) == total


def test_flipping_the_last_sign_is_a_symmetry():
    # e_n -> -e_n permutes the positive roots of D_n
    for nu in product((1, -1), repeat=3):
        a = signed_partition_sums(5, nu + (1,), 1, 8)
        b = signed_partition_sums(5, nu + (-1,), 1, 8)
        assert a == b
