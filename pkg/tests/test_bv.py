"""Circle operator and decorated elements: Delta algebra, marked-slot
composition, the relation suite and its negative control."""

import random
from fractions import Fraction as Q

import pytest

from operadkit.bv import (
    BVElement,
    bv_compose,
    bv_from_poisson,
    bv_operad_instance,
    bv_sigma_act,
    bv_unit,
    check_bv_relations,
    delta_apply,
    eval_delta_ast,
    normalize_bv,
    poisson_part,
    random_bv_element,
)
from operadkit.exact import perm_compose
from operadkit.grammar import normalize, parse_expr
from operadkit.operads import check_associativity, check_equivariance, check_units
from operadkit.poisson import enumerate_basis, from_mono, gen, random_element, relabel


def shift(x, base):
    k = len(x.support)
    return relabel(x, {i: i + base for i in range(1, k + 1)})


def test_delta_on_generators_and_products():
    x1, x2, x3 = gen(1), gen(2), gen(3)
    assert delta_apply(x1).is_zero()
    assert delta_apply(x1.bracket(x2)).is_zero()
    assert delta_apply(x1.mul(x2)) == x1.bracket(x2)
    got = delta_apply(x1.mul(x2).mul(x3))
    expected = normalize("[x1, x2]*x3 + [x1, x3]*x2 + x1*[x2, x3]")
    assert got == expected


def test_delta_squares_to_zero_on_full_bases():
    for k in (2, 3, 4, 5):
        for mono in enumerate_basis(k):
            x = from_mono(mono)
            assert delta_apply(delta_apply(x)).is_zero()


def test_delta_lowers_block_count_by_one():
    for k in (3, 4):
        for mono in enumerate_basis(k):
            dx = delta_apply(from_mono(mono))
            for m in dx.terms:
                assert len(m) == len(mono) - 1


def test_deviation_identity_measures_the_bracket():
    # Delta(ac) - Delta(a)c - (-1)^{|a|} a Delta(c) = (-1)^{|a|} [a, c]
    rng = random.Random(13)
    for _ in range(30):
        ka, kc = rng.choice([(1, 2), (2, 2), (2, 3), (3, 2)])
        a = random_element(ka, rng)
        c = shift(random_element(kc, rng), ka)
        if a.is_zero() or c.is_zero():
            continue
        sa = (-1) ** a.degree()
        dev = (
            delta_apply(a.mul(c))
            - delta_apply(a).mul(c)
            - a.mul(delta_apply(c)).scale(sa)
        )
        assert dev == a.bracket(c).scale(sa)


def test_delta_is_a_derivation_of_composition():
    rng = random.Random(29)
    for _ in range(25):
        kx, ky = rng.choice([(2, 2), (2, 3), (3, 2)])
        x = random_element(kx, rng)
        y = shift(random_element(ky, rng), 0)
        if x.is_zero() or y.is_zero():
            continue
        from operadkit.poisson import compose_i

        i = rng.randrange(1, kx + 1)
        lhs = delta_apply(compose_i(x, y, i))
        sx = (-1) ** x.degree()
        rhs = compose_i(delta_apply(x), y, i) + compose_i(x, delta_apply(y), i).scale(sx)
        assert lhs == rhs


def test_marked_composition_spot_values():
    dx = normalize_bv("x1@{1}")
    prod = normalize_bv("x1*x2")
    # substituting a product into a marked slot peels off one bracket and
    # spreads the marking over the two letters
    got = bv_compose(dx, prod, 1)
    expected = (
        bv_from_poisson(normalize("[x1, x2]"))
        + normalize_bv("(x1*x2)@{1}")
        + normalize_bv("(x1*x2)@{2}")
    )
    assert got == expected
    # a marked slot into a marked slot squares the exterior generator
    assert bv_compose(dx, dx, 1) == BVElement({1})
    # unmarked composition restricts to the plain engine
    from operadkit.poisson import compose_i

    br = normalize("[x1, x2]")
    prod_p = normalize("x1*x2")
    plain = bv_compose(bv_from_poisson(prod_p), bv_from_poisson(br), 2)
    assert poisson_part(plain) == compose_i(prod_p, br, 2)


def test_marking_word_is_exterior():
    a = normalize_bv("(x1*x2)@{1}@{2}")
    b = normalize_bv("(x1*x2)@{2}@{1}")
    assert a == -b
    assert normalize_bv("(x1*x2)@{1}@{1}") == BVElement({1, 2})
    assert normalize_bv("(x1*x2)@{1,2}") == a


def test_bv_unit_and_zero():
    assert bv_unit() == bv_from_poisson(gen(1))
    assert not BVElement({1, 2}).terms
    with pytest.raises(ValueError):
        BVElement({1, 2}, {(((1, 2),), frozenset({3})): Q(1)})


def test_delta_text_evaluator():
    node = parse_expr("D(x1*x2*x3)")
    got = eval_delta_ast(node)
    assert got == delta_apply(normalize("x1*x2*x3"))
    assert eval_delta_ast(parse_expr("D(D(x1*x2*x3))")).is_zero()
    with pytest.raises(ValueError):
        eval_delta_ast(parse_expr("D(3)"))


def test_normalize_bv_round_trip_via_repr_terms():
    rng = random.Random(5)
    for k in (2, 3):
        for _ in range(8):
            x = random_bv_element(k, rng)
            # rebuild from the term dict through the text grammar
            pieces = []
            for (mono, marking), c in x.terms.items():
                from operadkit.grammar import mono_to_text

                body = "(%s)" % mono_to_text(mono)
                if marking:
                    body += "@{%s}" % ",".join(str(i) for i in sorted(marking))
                pieces.append("(%s)*%s" % (c, body) if c.denominator > 1 else "%d*%s" % (c, body))
            if not pieces:
                continue
            text = " + ".join(pieces)
            assert normalize_bv(text) == x


def test_bv_sigma_act_is_left_action():
    rng = random.Random(31)
    from itertools import permutations

    for k in (2, 3):
        x = random_bv_element(k, rng)
        for s in permutations(range(1, k + 1)):
            for t in permutations(range(1, k + 1)):
                lhs = bv_sigma_act(s, bv_sigma_act(t, x))
                assert lhs == bv_sigma_act(perm_compose(s, t), x)


def test_bv_harness_small_arities():
    op = bv_operad_instance()
    rng = random.Random(0)

    def sampler(k, r):
        return random_bv_element(k, r, terms=2, coeff_bound=2)

    for arities in [(2, 2, 2), (3, 2, 2), (2, 3, 2), (2, 2, 3)]:
        rep = check_associativity(op, arities, sampler, 25, seed=rng.randrange(10**6))
        assert rep.passed, rep.line()
    for arities in [(2, 2), (3, 2)]:
        rep = check_equivariance(op, arities, sampler, 25, seed=1)
        assert rep.passed, rep.line()
    rep = check_units(op, 3, sampler, 20, seed=2)
    assert rep.passed, rep.line()


def test_relation_suite_passes_small():
    for k in (2, 3, 4):
        reps = check_bv_relations(k)
        for rep in reps:
            assert rep.passed, rep.line()


def test_relation_suite_scaled_degree():
    reps = check_bv_relations(3, b=3)
    for rep in reps:
        assert rep.passed, rep.line()


def test_relation_suite_negative_control():
    reps = check_bv_relations(3, _corrupt_delta=True)
    assert any(not rep.passed for rep in reps)
