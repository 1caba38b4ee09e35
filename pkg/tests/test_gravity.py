"""Kernel of the circle operator: dimension tables, the bracket family and
its quadratic relation, closure under composition, scaled-degree models."""

import math

import pytest

from operadkit.bv import delta_apply
from operadkit.exact import GradedDims
from operadkit.gravity import (
    borel_homology,
    bracket_generator,
    check_free_module,
    check_generation,
    check_lie_embedding,
    check_suboperad_closure,
    grav4_table,
    gravity_basis,
    moduli_dimension_oracle,
    verify_generalized_jacobi,
)
from operadkit.poisson import compose_i, from_mono, gen


def test_arity_two_kernel_is_the_bracket():
    g = gravity_basis(2)
    assert g.dims() == GradedDims({1: 1})
    ((d, x),) = list(g.all_elements())
    assert d == 1
    assert x == gen(1).bracket(gen(2))
    assert delta_apply(x).is_zero()


def test_gravity_rejects_unary():
    with pytest.raises(ValueError):
        gravity_basis(1)
    with pytest.raises(ValueError):
        moduli_dimension_oracle(1)


def test_kernel_dimensions_match_oracle():
    for k in range(2, 6):
        g = gravity_basis(k)
        oracle = moduli_dimension_oracle(k)
        assert g.dims() == oracle
        assert g.dims().total() == math.factorial(k) // 2


def test_free_module_split():
    # ker Delta = im Delta degree by degree, checked both ways
    for k in range(2, 6):
        rep = check_free_module(k)
        assert rep.passed, rep.line()


def test_borel_table_is_shifted_kernel_table():
    for k in (2, 3, 4, 5):
        assert borel_homology(k) == gravity_basis(k).dims().shifted(-1)


def test_bracket_generator_values():
    iota2 = bracket_generator(2)
    assert iota2 == gen(1).bracket(gen(2))
    iota3 = bracket_generator(3)
    assert iota3 == delta_apply(from_mono((1, 2, 3)))
    assert delta_apply(iota3).is_zero()
    with pytest.raises(ValueError):
        bracket_generator(1)


def test_generalized_jacobi_small():
    signs = {}
    for k in (2, 3, 4):
        for l in range(0, 5 - k + 1):
            rep = verify_generalized_jacobi(k, l)
            assert rep.passed, rep.line()
            signs[(k, l)] = rep.params["relation_sign"]
    # the l = 0 convention sets the left side to zero
    assert all(s == 0 for (k, l), s in signs.items() if l == 0)
    positive = {s for (k, l), s in signs.items() if l > 0}
    assert positive == {1}


def test_generalized_jacobi_scaled_degree():
    for k, l in [(2, 0), (2, 1), (3, 0), (2, 2), (3, 1)]:
        rep = verify_generalized_jacobi(k, l, b=3)
        assert rep.passed, rep.line()


def test_closure_under_partial_composition():
    rep = check_suboperad_closure(4)
    assert rep.passed, rep.line()
    # spot check: composing kernel classes stays in the kernel
    g2 = bracket_generator(2)
    g3 = bracket_generator(3)
    assert delta_apply(compose_i(g3, g2, 2)).is_zero()


def test_lie_embedding_and_generation():
    rep = check_lie_embedding(4)
    assert rep.passed, rep.line()
    assert rep.total > 0
    rep = check_generation(4)
    assert rep.passed, rep.line()
    assert rep.total > 0


def test_degree_tripling_table():
    rep = grav4_table(4)
    assert rep.passed, rep.line()
    for k in (2, 3, 4):
        assert moduli_dimension_oracle(k, b=3) == moduli_dimension_oracle(k).scaled_degrees(3)


def test_scaled_degree_kernel_tables():
    for k in (2, 3, 4):
        assert gravity_basis(k, b=3).dims() == moduli_dimension_oracle(k, b=3)
