"""Exact arithmetic layer: graded dimension tables, permutations, Koszul
signs, sparse rank/kernel, rational parsing."""

from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from operadkit.exact import (
    GradedDims,
    SparseMatrix,
    format_rational,
    koszul_sign,
    parse_rational,
    perm_apply,
    perm_block_insert,
    perm_check,
    perm_compose,
    perm_identity,
    perm_inverse,
    perm_permute_list,
    perm_transposition,
    poly_coeffs_product,
    span_rank,
)

perms = st.integers(2, 6).flatmap(lambda k: st.permutations(range(1, k + 1)))


@st.composite
def perm_pairs(draw):
    k = draw(st.integers(2, 6))
    s = tuple(draw(st.permutations(range(1, k + 1))))
    t = tuple(draw(st.permutations(range(1, k + 1))))
    return s, t


def test_graded_dims_drops_zeros_and_totals():
    d = GradedDims({0: 1, 1: 3, 2: 0})
    assert d == GradedDims({1: 3, 0: 1})
    assert 2 not in d
    assert d.total() == 4
    assert d.shifted(2) == GradedDims({2: 1, 3: 3})
    assert d.scaled_degrees(3) == GradedDims({0: 1, 3: 3})


def test_graded_dims_rejects_negative():
    with pytest.raises(ValueError):
        GradedDims({0: -1})


def test_poly_coeffs_product_binomials():
    # (1 + t)(1 + 2t)(1 + 3t) = 1 + 6t + 11t^2 + 6t^3
    got = poly_coeffs_product([[1, 1], [1, 2], [1, 3]])
    assert got == GradedDims({0: 1, 1: 6, 2: 11, 3: 6})
    assert poly_coeffs_product([]) == GradedDims({0: 1})


@given(perm_pairs())
def test_perm_compose_inverse(pair):
    s, t = pair
    perm_check(s)
    st_ = perm_compose(s, t)
    assert perm_compose(perm_inverse(st_), st_) == perm_identity(len(s))
    assert perm_compose(perm_inverse(t), perm_inverse(s)) == perm_inverse(st_)


@given(perms)
def test_perm_apply_matches_permute_list(p):
    p = tuple(p)
    values = list(range(100, 100 + len(p)))
    placed = perm_permute_list(p, values)
    # value from slot i lands in slot p(i)
    for i in range(1, len(p) + 1):
        assert placed[perm_apply(p, i) - 1] == values[i - 1]


def test_perm_block_insert_expands_slot():
    # insert the 2-block (2 1) at slot 2 of (2 3 1): slot 2's image 3 widens
    # to the block {3, 4} ordered by tau, images >= 3 shift up by 1
    assert perm_block_insert((2, 3, 1), 2, (2, 1)) == (2, 4, 3, 1)
    # identity blocks leave a relabeled sigma
    assert perm_block_insert((1, 2), 1, (1,)) == (1, 2)
    assert perm_block_insert((2, 1), 2, (1, 2)) == (3, 1, 2)


def test_koszul_sign_examples():
    assert koszul_sign(perm_identity(3), (1, 1, 1)) == 1
    swap = perm_transposition(2, 1, 2)
    assert koszul_sign(swap, (1, 1)) == -1
    assert koszul_sign(swap, (2, 1)) == 1
    assert koszul_sign(swap, (1, 2)) == 1
    assert koszul_sign(swap, (3, 5)) == -1


@given(perms)
def test_koszul_sign_trivial_on_even_degrees(p):
    p = tuple(p)
    assert koszul_sign(p, (2,) * len(p)) == 1


@given(perm_pairs())
def test_koszul_sign_is_multiplicative(pair):
    s, t = pair
    degrees = tuple((i * 7 + 3) % 4 for i in range(len(s)))
    after_t = tuple(perm_permute_list(t, list(degrees)))
    lhs = koszul_sign(perm_compose(s, t), degrees)
    rhs = koszul_sign(s, after_t) * koszul_sign(t, degrees)
    assert lhs == rhs


def test_sparse_matrix_rank_and_kernel():
    m = SparseMatrix(2, 3, {(0, 0): Q(1), (0, 2): Q(-1), (1, 1): Q(2)})
    assert m.rank() == 2
    ker = m.kernel_basis()
    assert ker == [(Q(1), Q(0), Q(1))]
    assert m.mat_vec(list(ker[0])) == [Q(0), Q(0)]


def test_sparse_matrix_zero_and_full():
    z = SparseMatrix(3, 2)
    assert z.rank() == 0
    assert len(z.kernel_basis()) == 2
    full = SparseMatrix(2, 2, {(0, 0): Q(1), (1, 1): Q(1)})
    assert full.rank() == 2
    assert full.kernel_basis() == []


def test_sparse_matrix_rejects_out_of_range():
    with pytest.raises(ValueError):
        SparseMatrix(2, 2, {(2, 0): Q(1)})


def test_span_rank_dependent_vectors():
    v1 = {0: Q(1), 1: Q(2)}
    v2 = {0: Q(2), 1: Q(4)}
    v3 = {1: Q(1)}
    assert span_rank([v1, v2]) == 1
    assert span_rank([v1, v2, v3]) == 2
    assert span_rank([]) == 0
    # dense tuples are accepted too
    assert span_rank([(Q(1), Q(0)), (Q(0), Q(1))]) == 2


@given(st.fractions(max_denominator=10**6))
def test_rational_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_parse_rational_rejects_garbage():
    for bad in ["", "1/", "/2", "a/b", "1.5", "1/0"]:
        with pytest.raises((ValueError, ZeroDivisionError)):
            parse_rational(bad)
