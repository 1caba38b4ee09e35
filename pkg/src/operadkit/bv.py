"""Homology-level BV structure on the bracket-product model.

The circle operator Delta acts on the arity-k component by the pairwise
block recursion: on a monomial with leading block B,

    Delta(B . M') = (-1)^{|B|} ([B, M'] + B . Delta(M')),
    Delta(single block) = 0,

extended linearly.  The Koszul prefactor multiplies both terms: placing it
on the product term alone is inconsistent with Delta^2 = 0 once the cyclic
three-block relation of the bracket is in force.  The deviation identity

    (-1)^{|a|} [a, c] = Delta(a.c) - Delta(a).c - (-1)^{|a|} a.Delta(c)

is then a theorem checked by check_bv_relations, not an input, which pins
the sign conventions of the underlying bracket engine.  Delta raises degree
by the bracket degree b, squares to zero, and is a derivation of compose_i.

BV elements decorate each input slot with an exterior generator of degree b
(the homology of the framing circle); a decoration is the subset of marked
slots, and the coefficient is read against the canonical word

    (poisson part) . D_{t1} ^ D_{t2} ^ ... (marked slots ascending).

Composition is the semidirect-product rule: a marking on the substitution
slot is split by the exterior coproduct, either acting as Delta on the
inserted poisson part or transferring to one of the inserted slots, and
doubled markings vanish.  All decoration signs are Koszul reorder signs of
the underlying graded words, so no extra convention enters; the rule is
certified by the associativity/equivariance harness and the identity suite
over exact rationals.
"""

from __future__ import annotations

import itertools

from .exact import Q
from .operads import CheckReport, OperadInstance
from .poisson import (
    PoissonElement,
    _resupport,
    compose_i,
    enumerate_basis,
    from_mono,
    gen,
    mono_degree,
    relabel,
    sigma_act,
    tree_nleaves,
)

# ---------------------------------------------------------------------------
# Delta on poisson elements


def delta_apply(x):
    """Circle operator on a poisson element; degree rises by b."""
    out = PoissonElement(x.support)
    for mono, c in x.terms.items():
        out = out + _delta_mono(mono, x.support).scale(c)
    return out


def _delta_mono(mono, support):
    # Delta(B.M') = (-1)^{|B|}([B, M'] + B.Delta(M')); the Koszul prefactor
    # (rather than the bare deviation recursion) is forced by Delta^2 = 0
    # together with the cyclic three-block relation of the bracket.
    if len(mono) <= 1:
        return PoissonElement(support)
    head = from_mono(mono[:1])
    rest = from_mono(mono[1:])
    term1 = _resupport(head.bracket(rest), support)
    term2 = _resupport(head.mul(_delta_mono(mono[1:], rest.support)), support)
    sign = -1 if (tree_nleaves(mono[0]) - 1) % 2 else 1
    return (term1 + term2).scale(sign)


# ---------------------------------------------------------------------------
# decorated elements


def _norm_marking(marking):
    return frozenset(int(i) for i in marking)


class BVElement:
    """Finitely supported map (normal monomial, marked-slot subset) -> Q."""

    __slots__ = ("support", "terms")

    def __init__(self, support, terms=None):
        self.support = frozenset(support)
        clean = {}
        if terms:
            for (mono, marking), c in terms.items():
                c = Q(c)
                if not c:
                    continue
                marking = _norm_marking(marking)
                if not marking <= self.support:
                    raise ValueError(
                        "marked slots %s outside the arity range" % sorted(marking)
                    )
                key = (mono, marking)
                c = clean.get(key, Q(0)) + c
                if c:
                    clean[key] = c
                else:
                    clean.pop(key, None)
        self.terms = clean

    @property
    def arity(self):
        k = len(self.support)
        if self.support != frozenset(range(1, k + 1)):
            raise ValueError("support %s is not 1..k" % sorted(self.support))
        return k

    def is_zero(self):
        return not self.terms

    def degree(self, b=1):
        degs = {mono_degree(m, b) + b * len(s) for (m, s) in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("element is not homogeneous: degrees %s" % sorted(degs))
        return degs.pop()

    def scale(self, c):
        c = Q(c)
        return BVElement(self.support, {k: v * c for k, v in self.terms.items()})

    def __add__(self, other):
        if self.support != other.support:
            raise ValueError("cannot add elements with different supports")
        terms = dict(self.terms)
        for k, v in other.terms.items():
            w = terms.get(k, Q(0)) + v
            if w:
                terms[k] = w
            else:
                terms.pop(k, None)
        return BVElement(self.support, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        return (
            isinstance(other, BVElement)
            and self.support == other.support
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.support, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "<BV 0>"
        bits = []
        for (mono, marking), c in sorted(
            self.terms.items(), key=lambda kv: (sorted(kv[0][1]), repr(kv[0][0]))
        ):
            tag = "@{%s}" % ",".join(map(str, sorted(marking))) if marking else ""
            bits.append("%s*%r%s" % (c, mono, tag))
        return "<BV " + " + ".join(bits) + ">"


def bv_from_poisson(x, marking=()):
    marking = _norm_marking(marking)
    return BVElement(x.support, {(m, marking): c for m, c in x.terms.items()})


def poisson_part(x, marking=()):
    """Poisson element collecting the terms with the given marking."""
    marking = _norm_marking(marking)
    return PoissonElement(
        x.support, {m: c for (m, s), c in x.terms.items() if s == marking}
    )


def bv_unit():
    return bv_from_poisson(gen(1))


# ---------------------------------------------------------------------------
# symmetric action and composition


def _inv_count(pairs):
    n = 0
    seq = list(pairs)
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                n += 1
    return n


def bv_sigma_act(perm, x):
    """Left action: slot j becomes perm(j); markings relabel with the
    exterior resort sign of the marked-slot word."""
    k = x.arity
    if len(perm) != k:
        raise ValueError("permutation size %d does not match arity %d" % (len(perm), k))
    out = BVElement(x.support)
    for (mono, marking), c in x.terms.items():
        px = sigma_act(perm, PoissonElement(x.support, {mono: c}))
        sign = -1 if _inv_count(perm[s - 1] for s in sorted(marking)) % 2 else 1
        new_marking = frozenset(perm[s - 1] for s in marking)
        out = out + BVElement(
            x.support,
            {(m, new_marking): v * sign for m, v in px.terms.items()},
        )
    return out


def _koszul_reorder_sign(source, target, odd):
    """Koszul sign of rearranging a word of graded letters; a transposition
    contributes only when both letters are odd."""
    pos = {lab: n for n, lab in enumerate(target)}
    seq = [(pos[lab], lab in odd) for lab in source]
    sign = 1
    for a in range(len(seq)):
        for c in range(a + 1, len(seq)):
            if seq[a][0] > seq[c][0] and seq[a][1] and seq[c][1]:
                sign = -sign
    return sign


def _attach(core, marking, coef, support):
    return BVElement(
        support, {(m, marking): c * coef for m, c in core.terms.items()}
    )


def bv_compose(x, y, i):
    """Semidirect-product partial composition of decorated elements.

    Each term is read as the graded word  Q . D_{s1} ^ D_{s2} ^ ...  and the
    composite is assembled letter by letter: a marking on the substitution
    slot is split by the exterior coproduct, either acting on the inserted
    poisson part as Delta or landing on one of the inserted slots as a
    transferred marking (a doubled marking vanishes); all decoration signs
    are Koszul reorder signs of the underlying word, and the poisson
    composition contributes its own certified suspension signs.  With Delta
    a derivation of compose_i (checked by the identity suite), this rule
    passes the associativity/equivariance harness."""
    k, l = x.arity, y.arity
    if not 1 <= i <= k:
        raise ValueError("slot %d out of range 1..%d" % (i, k))
    support = frozenset(range(1, k + l))
    xs = frozenset(range(1, k + 1))
    ys = frozenset(range(1, l + 1))
    out = BVElement(support)
    for (mono_q, s_set), cq in x.terms.items():
        q_el = PoissonElement(xs, {mono_q: Q(1)})
        for (mono_r, t_set), cr in y.terms.items():
            r_el = PoissonElement(ys, {mono_r: Q(1)})
            source = (
                [("Q",)]
                + [("g", s) for s in sorted(s_set)]
                + [("R",)]
                + [("h", t) for t in sorted(t_set)]
            )
            odd = {lab for lab in source if lab[0] in ("g", "h")}
            if mono_degree(mono_q) % 2:
                odd.add(("Q",))
            if mono_degree(mono_r) % 2:
                odd.add(("R",))
            fx = {s: (s if s < i else s + l - 1) for s in s_set}
            fy = {t: t + i - 1 for t in t_set}
            coef = cq * cr
            rest = sorted(s_set - {i})
            kept = [(fx[s], ("g", s)) for s in rest] + [
                (fy[t], ("h", t)) for t in t_set
            ]
            if i not in s_set:
                target = [("Q",), ("R",)] + [lab for _, lab in sorted(kept)]
                sign = _koszul_reorder_sign(source, target, odd)
                marking = frozenset(f for f, _ in kept)
                core = compose_i(q_el, r_el, i)
                out = out + _attach(core, marking, coef * sign, support)
                continue
            # the slot marking acts on the inserted poisson part as Delta
            target = [("Q",), ("g", i), ("R",)] + [lab for _, lab in sorted(kept)]
            sign = _koszul_reorder_sign(source, target, odd)
            marking = frozenset(f for f, _ in kept)
            acted = compose_i(q_el, delta_apply(r_el), i)
            out = out + _attach(acted, marking, coef * sign, support)
            # ... or transfers to one of the unmarked inserted slots
            core = compose_i(q_el, r_el, i)
            for j in range(1, l + 1):
                if j in t_set:
                    continue
                placed = kept + [(j + i - 1, ("g", i))]
                target = [("Q",), ("R",)] + [lab for _, lab in sorted(placed)]
                sign = _koszul_reorder_sign(source, target, odd)
                marking = frozenset(f for f, _ in placed)
                out = out + _attach(core, marking, coef * sign, support)
    return out


def bv_operad_instance():
    return OperadInstance(
        name="bv",
        arity=lambda x: x.arity,
        compose=bv_compose,
        act=bv_sigma_act,
        equal=lambda a, c: a == c,
        degree=lambda x: (x.degree() or 0) if not x.is_zero() else 0,
        scale=lambda x, c: x.scale(c),
        unit=bv_unit(),
    )


def random_bv_element(k, rng, terms=3, coeff_bound=3):
    """Random homogeneous decorated element (used by harness samplers)."""
    basis = enumerate_basis(k)
    slots = list(range(1, k + 1))
    mono = basis[rng.randrange(len(basis))]
    target = mono_degree(mono) + rng.randrange(0, k + 1)
    pool = [
        (m, frozenset(s))
        for m in basis
        if 0 <= target - mono_degree(m) <= k
        for s in itertools.combinations(slots, target - mono_degree(m))
    ]
    out = BVElement(range(1, k + 1))
    for _ in range(terms):
        m, s = pool[rng.randrange(len(pool))]
        c = rng.randint(-coeff_bound, coeff_bound) or 1
        out = out + BVElement(out.support, {(m, s): Q(c)})
    return out


# ---------------------------------------------------------------------------
# identity suite


def check_bv_relations(k, b=1, _corrupt_delta=False):
    """Verify on the full basis of arity k: Delta squared vanishes, the
    deviation of Delta from a product derivation is the bracket, and Delta
    is a graded derivation of the bracket.  Returns three reports."""
    if k < 1:
        raise ValueError("arity must be positive")
    delta = _corrupted_delta if _corrupt_delta else delta_apply
    basis = enumerate_basis(k)
    support = frozenset(range(1, k + 1))

    rep_sq = CheckReport(
        "bv-delta-squared-%d-b%d" % (k, b),
        "Delta composed with itself vanishes on the whole basis",
        {"arity": k, "bracket_degree": b},
    )
    for mono in basis:
        x = PoissonElement(support, {mono: Q(1)})
        val = delta(delta(x))
        rep_sq.count(val.is_zero(), None if val.is_zero() else repr(mono))

    rep_dev = CheckReport(
        "bv-deviation-%d-b%d" % (k, b),
        "Delta(a.c) - Delta(a).c - (-1)^{|a|} a.Delta(c) equals "
        "(-1)^{|a|} [a, c]",
        {"arity": k, "bracket_degree": b},
    )
    for asize in range(1, k):
        for aset in itertools.combinations(range(1, k + 1), asize):
            cset = tuple(sorted(set(range(1, k + 1)) - set(aset)))
            for amono in enumerate_basis(len(aset)):
                for cmono in enumerate_basis(len(cset)):
                    a = _embed(amono, aset)
                    c = _embed(cmono, cset)
                    prod = _resupport(a.mul(c), support)
                    sign = -1 if mono_degree(amono, b) % 2 else 1
                    lhs = delta(prod) - _resupport(delta(a).mul(c), support)
                    lhs = lhs - _resupport(a.mul(delta(c)), support).scale(sign)
                    rhs = _resupport(a.bracket(c), support).scale(sign)
                    ok = lhs == rhs
                    rep_dev.count(
                        ok, None if ok else "a=%r c=%r" % (amono, cmono)
                    )

    rep_der = CheckReport(
        "bv-bracket-derivation-%d-b%d" % (k, b),
        "Delta[a, c] = [Delta a, c] + (-1)^{|a|+b} [a, Delta c]",
        {"arity": k, "bracket_degree": b},
    )
    for asize in range(1, k):
        for aset in itertools.combinations(range(1, k + 1), asize):
            cset = tuple(sorted(set(range(1, k + 1)) - set(aset)))
            for amono in enumerate_basis(len(aset)):
                for cmono in enumerate_basis(len(cset)):
                    a = _embed(amono, aset)
                    c = _embed(cmono, cset)
                    lhs = delta(_resupport(a.bracket(c), support))
                    rhs = _resupport(delta(a).bracket(c), support)
                    sign = -1 if (mono_degree(amono, b) + b) % 2 else 1
                    rhs = rhs + _resupport(a.bracket(delta(c)), support).scale(sign)
                    ok = lhs == rhs
                    rep_der.count(
                        ok, None if ok else "a=%r c=%r" % (amono, cmono)
                    )

    return [rep_sq, rep_dev, rep_der]


def _embed(mono, letters):
    """Poisson element for a basis monomial on 1..s relabeled into the
    letter set ``letters`` (ascending)."""
    mapping = {j + 1: letters[j] for j in range(len(letters))}
    base = PoissonElement(range(1, len(letters) + 1), {mono: Q(1)})
    return relabel(base, mapping)


def _corrupted_delta(x):
    """Negative control: the recursion with the Koszul factor dropped."""
    out = PoissonElement(x.support)
    for mono, c in x.terms.items():
        out = out + _corrupted_delta_mono(mono, x.support).scale(c)
    return out


def _corrupted_delta_mono(mono, support):
    if len(mono) <= 1:
        return PoissonElement(support)
    head = from_mono(mono[:1])
    rest = from_mono(mono[1:])
    term1 = _resupport(head.bracket(rest), support)
    term2 = _resupport(head.mul(_corrupted_delta_mono(mono[1:], rest.support)), support)
    return term1 + term2


# ---------------------------------------------------------------------------
# grammar hook: evaluate ASTs with D(...) and slot markings


def eval_delta_ast(node):
    """Evaluate the plain grammar extended with D(e) to a PoissonElement
    (or a scalar); marking postfixes are rejected at this level."""
    from .grammar import eval_ast

    kind = node[0]
    if kind == "delta":
        inner = eval_delta_ast(node[1])
        if isinstance(inner, Q):
            raise ValueError("D() applies to elements, not scalars")
        return delta_apply(inner)
    if kind == "mark":
        raise ValueError("slot markings cannot appear inside D(), products or brackets")
    if kind == "neg":
        v = eval_delta_ast(node[1])
        return -v if isinstance(v, Q) else v.scale(-1)
    if kind in ("add", "sub", "mul", "br"):
        a, c = eval_delta_ast(node[1]), eval_delta_ast(node[2])
        return _eval_binary(kind, a, c)
    return eval_ast(node)


def _eval_binary(kind, a, c):
    if kind in ("add", "sub"):
        if isinstance(a, Q) and isinstance(c, Q):
            return a + c if kind == "add" else a - c
        if isinstance(a, Q) or isinstance(c, Q):
            raise ValueError("cannot add a scalar to an element")
        return a + c if kind == "add" else a - c
    if kind == "mul":
        if isinstance(a, Q) and isinstance(c, Q):
            return a * c
        if isinstance(a, Q):
            return c.scale(a)
        if isinstance(c, Q):
            return a.scale(c)
        return a.mul(c)
    if isinstance(a, Q) or isinstance(c, Q):
        raise ValueError("bracket arguments must be elements")
    return a.bracket(c)


def eval_bv_ast(node):
    """Evaluate a parsed expression tree into a BVElement; supports the
    plain grammar plus D(e) and the slot-marking postfix e @ {i,...}."""
    kind = node[0]
    if kind == "mark":
        inner = eval_bv_ast(node[1])
        added = sorted(set(node[2]))
        out = BVElement(inner.support)
        for (mono, marking), c in inner.terms.items():
            new = marking | frozenset(added)
            if len(new) != len(marking) + len(added):
                continue  # doubled marking: exterior square is zero
            # appended letters resort into the ascending marking word
            inv = sum(1 for s in marking for t in added if t < s)
            out = out + BVElement(
                inner.support, {(mono, new): -c if inv % 2 else c}
            )
        return out
    if kind in ("add", "sub"):
        a, c = eval_bv_ast(node[1]), eval_bv_ast(node[2])
        return a + c if kind == "add" else a - c
    if kind == "neg":
        return -eval_bv_ast(node[1])
    if kind == "mul":
        # scalar coefficients may multiply decorated elements
        left, right = node[1], node[2]
        if left[0] == "num":
            return eval_bv_ast(right).scale(left[1])
        if right[0] == "num":
            return eval_bv_ast(left).scale(right[1])
        value = eval_delta_ast(node)
        return bv_from_poisson(value)
    value = eval_delta_ast(node)
    if isinstance(value, Q):
        raise ValueError("expression is a bare scalar, not an element")
    return bv_from_poisson(value)


def normalize_bv(source):
    """Parse and evaluate decorated-element text into a BVElement."""
    from .grammar import parse_expr

    node = source if isinstance(source, tuple) else parse_expr(source)
    out = eval_bv_ast(node)
    out.arity  # validates contiguous support
    return out
