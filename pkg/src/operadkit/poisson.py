"""Multilinear Poisson algebra model: arity-k component of the operad e_b.

The arity-k part of the operad with a graded-commutative product and a Lie
bracket of odd degree b is modeled as the multilinear span (each generator
x1..xk exactly once) of the free Poisson algebra on k degree-0 generators.

Normal form.  A monomial is an ordered product of blocks; each block is a
binary bracket tree on its letters, reduced to a left-combed tree
[[[m,a],b],...,c] whose head m is the minimal letter of the block, with the
tail (a, b, ..., c) in any order.  Blocks are sorted by minimal letter.
A block of s letters contributes (s-1)! normal trees, so the monomial count
is the sum over set partitions of prod (|block|-1)! = k!.

Signs.  All Koszul signs are computed at shifted parities ||x|| = |x| + b;
since b is odd and the generators sit in degree 0, a block on s letters has
degree parity (s-1) mod 2 and shifted parity s mod 2, independent of b.  The
engine therefore never needs b; only degree bookkeeping does.  The bracket
satisfies, at shifted parities,

    [u, v] = -(-1)^{||u|| ||v||} [v, u]
    [u, [v, w]] = [[u, v], w] + (-1)^{||u|| ||v||} [v, [u, w]]
    [u, v.w] = [u, v].w + (-1)^{|v| (|u| + b)} v.[u, w]

Rewriting orientation and termination.  Brackets of two normal trees are
normalized by (1) an antisymmetry flip when the right head is smaller than
the left head, after which every letter of the right argument exceeds the
left head; (2) the derived Jacobi rule
[u,[v,w]] = [[u,v],w] - (-1)^{||v|| ||w||}[[u,w],v] peeling the right comb
until the right argument is a single leaf, which then appends onto the left
comb.  The flip happens at most once per call chain and every other
recursive call strictly decreases the leaf count of the right argument,
which is the termination measure.  Leibniz expands brackets over products
outward, recursing on block counts.

Composition.  compose_i substitutes and rebuilds through the same rules,
times a suspension sign that transports the inserted element past the odd
bracket edges of the host monomial (see compose_i).  The sign convention is
certified globally: both operad associativity shapes, Sigma-equivariance,
and the downstream differential and bracket identities are verified over
exact rationals by the test suite.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .exact import Q

# ---------------------------------------------------------------------------
# bracket trees: a leaf is an int letter, a node is a pair (left, right)


def is_leaf(t):
    return isinstance(t, int)


def tree_leaves(t):
    if is_leaf(t):
        return (t,)
    return tree_leaves(t[0]) + tree_leaves(t[1])


@lru_cache(maxsize=None)
def tree_nleaves(t):
    if is_leaf(t):
        return 1
    return tree_nleaves(t[0]) + tree_nleaves(t[1])


@lru_cache(maxsize=None)
def tree_min(t):
    if is_leaf(t):
        return t
    return min(tree_min(t[0]), tree_min(t[1]))


def comb(head, tail):
    """Left-combed tree [[[head, t1], t2], ..., tn]."""
    t = head
    for x in tail:
        t = (t, x)
    return t


def comb_parts(t):
    """Inverse of comb: (head, tail tuple); requires a left-combed tree."""
    tail = []
    while not is_leaf(t):
        t, x = t
        if not is_leaf(x):
            raise ValueError("not a left-combed tree")
        tail.append(x)
    tail.reverse()
    return t, tuple(tail)


def is_normal_tree(t):
    """Left-combed with the minimal letter at the head."""
    try:
        head, tail = comb_parts(t)
    except ValueError:
        return False
    return all(head < x for x in tail)


def tree_key(t):
    if is_leaf(t):
        return (0, t)
    return (1, tree_key(t[0]), tree_key(t[1]))


def relabel_tree(t, mapping):
    if is_leaf(t):
        return mapping[t]
    return (relabel_tree(t[0], mapping), relabel_tree(t[1], mapping))


# ---------------------------------------------------------------------------
# normal-form bracket of trees


@lru_cache(maxsize=None)
def tree_bracket(s, t):
    """Normal form of [s, t] for normal trees s, t with disjoint letters.

    Returns a dict {normal tree: integer coefficient}.  Termination: at most
    one antisymmetry flip, then the right argument's leaf count strictly
    decreases in every recursive call.
    """
    hs, ht = tree_min(s), tree_min(t)
    if ht < hs:
        # [s,t] = -(-1)^{||s|| ||t||} [t,s]
        sign = 1 if (tree_nleaves(s) * tree_nleaves(t)) % 2 else -1
        return {u: sign * c for u, c in tree_bracket(t, s).items()}
    if is_leaf(t):
        return {(s, t): 1}
    t2, last = t  # t = [t2, last], last a leaf since t is a comb
    out = {}
    for u, c in tree_bracket(s, t2).items():
        v = (u, last)  # last exceeds the head of u, so this is normal
        out[v] = out.get(v, 0) + c
    # - (-1)^{||t2|| ||last||} [[s,last], t2], with ||last|| odd
    sgn = 1 if tree_nleaves(t2) % 2 else -1
    for u, c in tree_bracket((s, last), t2).items():
        out[u] = out.get(u, 0) + sgn * c
    return {u: c for u, c in out.items() if c}


def lie_normal_form(t):
    """Normal form of an arbitrary bracket tree with distinct letters."""
    if is_leaf(t):
        return {t: 1}
    out = {}
    for u, cu in lie_normal_form(t[0]).items():
        for v, cv in lie_normal_form(t[1]).items():
            for w, cw in tree_bracket(u, v).items():
                out[w] = out.get(w, 0) + cu * cv * cw
    return {w: c for w, c in out.items() if c}


# ---------------------------------------------------------------------------
# monomials: tuples of normal trees with disjoint letters, sorted by min leaf


def mono_support(mono):
    out = []
    for t in mono:
        out.extend(tree_leaves(t))
    return frozenset(out)


def mono_degree(mono, b=1):
    return b * sum(tree_nleaves(t) - 1 for t in mono)


def mono_key(mono):
    return tuple(tree_key(t) for t in mono)


def _block_deg_parity(t):
    return (tree_nleaves(t) - 1) % 2


def merge_monos(m1, m2):
    """Merge two sorted block tuples; Koszul sign from odd-degree swaps.

    Returns (sign, merged tuple).  Letters must be disjoint.
    """
    sign = 1
    odd_left = sum(_block_deg_parity(t) for t in m1)
    out = []
    i = j = 0
    oi = odd_left
    while i < len(m1) and j < len(m2):
        if tree_min(m1[i]) < tree_min(m2[j]):
            oi -= _block_deg_parity(m1[i])
            out.append(m1[i])
            i += 1
        else:
            # block from m2 jumps over the remaining odd blocks of m1
            if _block_deg_parity(m2[j]) and oi % 2:
                sign = -sign
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return sign, tuple(out)


# ---------------------------------------------------------------------------
# elements


class PoissonElement:
    """Finitely supported rational combination of normal monomials.

    ``support`` is the frozenset of letters (for operad elements of arity k
    this is {1..k}); all monomials use exactly these letters, once each.
    """

    __slots__ = ("support", "terms")

    def __init__(self, support, terms=None):
        self.support = frozenset(support)
        self.terms = {}
        for mono, c in (terms or {}).items():
            c = Q(c)
            if c:
                self.terms[mono] = c

    @property
    def arity(self):
        k = len(self.support)
        if self.support != frozenset(range(1, k + 1)):
            raise ValueError("support %s is not {1..%d}" % (sorted(self.support), k))
        return k

    def is_zero(self):
        return not self.terms

    def degrees(self, b=1):
        return sorted({mono_degree(m, b) for m in self.terms})

    def degree(self, b=1):
        ds = self.degrees(b)
        if not ds:
            raise ValueError("zero element has no degree")
        if len(ds) > 1:
            raise ValueError("element is not homogeneous: degrees %s" % ds)
        return ds[0]

    def component(self, d, b=1):
        return PoissonElement(
            self.support,
            {m: c for m, c in self.terms.items() if mono_degree(m, b) == d},
        )

    def scale(self, q):
        q = Q(q)
        return PoissonElement(self.support, {m: c * q for m, c in self.terms.items()})

    def __add__(self, other):
        if self.support != other.support:
            raise ValueError("support mismatch in sum")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Q(0)) + c
        return PoissonElement(self.support, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        return (
            isinstance(other, PoissonElement)
            and self.support == other.support
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.support, tuple(sorted(self.terms.items(), key=lambda t: mono_key(t[0])))))

    def mul(self, other):
        """Graded-commutative product; letters must be disjoint."""
        if self.support & other.support:
            raise ValueError(
                "not multilinear: letters %s repeat" % sorted(self.support & other.support)
            )
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = merge_monos(m1, m2)
                out[m] = out.get(m, Q(0)) + sign * c1 * c2
        return PoissonElement(self.support | other.support, out)

    def bracket(self, other):
        """The Lie bracket, extended to products by the Leibniz rule."""
        if self.support & other.support:
            raise ValueError(
                "not multilinear: letters %s repeat" % sorted(self.support & other.support)
            )
        support = self.support | other.support
        out = PoissonElement(support)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out = out + _resupport(_bracket_monos(m1, m2), support).scale(c1 * c2)
        return out

    def __repr__(self):
        from .grammar import element_to_text

        return "<%s>" % element_to_text(self)


def zero(support=()):
    return PoissonElement(support)


def gen(i):
    if i < 1:
        raise ValueError("letters are positive integers")
    return PoissonElement((i,), {(i,): Q(1)})


def unit():
    """Operad unit: the single letter x1 in arity 1."""
    return gen(1)


def from_mono(mono):
    return PoissonElement(mono_support(mono), {tuple(mono): Q(1)})


def _single(tree_terms, support):
    return PoissonElement(support, {(t,): Q(c) for t, c in tree_terms.items()})


def _bracket_monos(m1, m2):
    """Bracket of two monomials; support is exactly their letters."""
    if len(m1) == 1 and len(m2) == 1:
        return _single(tree_bracket(m1[0], m2[0]), mono_support(m1) | mono_support(m2))
    if len(m1) > 1:
        # [B.M', N] = (-1)^{|M'|(|N|+b)} [B,N].M' + B.[M',N]
        b0, rest = m1[0], m1[1:]
        p_rest = sum(_block_deg_parity(t) for t in rest) % 2
        p_nsh = (sum(tree_nleaves(t) - 1 for t in m2) + 1) % 2
        sign = -1 if p_rest and p_nsh else 1
        term1 = _bracket_monos((b0,), m2).mul(from_mono(rest)).scale(sign)
        term2 = from_mono((b0,)).mul(_bracket_monos(rest, m2))
        return term1 + term2
    # len(m2) > 1: [B, C.N'] = [B,C].N' + (-1)^{|C|(|B|+b)} C.[B,N']
    c0, rest = m2[0], m2[1:]
    p_c = _block_deg_parity(c0)
    p_bsh = tree_nleaves(m1[0]) % 2
    sign = -1 if p_c and p_bsh else 1
    term1 = _bracket_monos(m1, (c0,)).mul(from_mono(rest))
    term2 = from_mono((c0,)).mul(_bracket_monos(m1, rest)).scale(sign)
    return term1 + term2


def _resupport(x, support):
    if x.support == support:
        return x
    return PoissonElement(support, x.terms)


# ---------------------------------------------------------------------------
# operad structure


def relabel(x, mapping, renormalize=False):
    """Apply an injective letter mapping; renormalize when it is not
    order-preserving (relabeled trees may stop being normal)."""
    support = frozenset(mapping[i] for i in x.support)
    if not renormalize:
        terms = {}
        for mono, c in x.terms.items():
            m = tuple(relabel_tree(t, mapping) for t in mono)
            terms[m] = c
        return PoissonElement(support, terms)
    out = PoissonElement(support)
    for mono, c in x.terms.items():
        acc = None
        for t in mono:
            block_support = frozenset(mapping[i] for i in tree_leaves(t))
            piece = _single(lie_normal_form(relabel_tree(t, mapping)), block_support)
            acc = piece if acc is None else acc.mul(piece)
        out = out + acc.scale(c)
    return out


def sigma_act(perm, x):
    """Symmetric group action: letter j becomes perm(j); left action."""
    k = x.arity
    if len(perm) != k:
        raise ValueError("permutation size %d does not match arity %d" % (len(perm), k))
    mapping = {j: perm[j - 1] for j in range(1, k + 1)}
    increasing = all(perm[j] > perm[j - 1] for j in range(1, k))
    return relabel(x, mapping, renormalize=not increasing)


def _slot_twist(mono, i):
    """Number of bracket edges enclosing-or-after letter i in the canonical
    edge order (per block innermost first, blocks in order): q - j when i is
    tail letter number j of its block with q edges, q when i is the head,
    plus all edges of later blocks."""
    r = next(idx for idx, t in enumerate(mono) if i in tree_leaves(t))
    head, tail = comb_parts(mono[r])
    q = len(tail)
    a = q if i == head else q - (tail.index(i) + 1)
    return a + sum(tree_nleaves(t) - 1 for t in mono[r + 1:])


def compose_i(x, y, i):
    """Partial composition: substitute y for letter i of x.

    Letters of y become i..i+l-1, letters of x above i shift up by l-1;
    brackets against products expand by the Leibniz rule during rebuild.

    Substituting an element of odd degree for a degree-0 letter transports
    it past the odd bracket edges of the host monomial, so each rebuilt
    term carries the suspension sign (-1)^{A(m,i) e(y)} where e(y) is the
    edge count (degree/b) of the inserted component and A(m,i) counts the
    edges enclosing-or-after slot i (see _slot_twist).  This convention is
    the unique one under which both associativity shapes and equivariance
    hold; it is certified exhaustively over basis triples by the test
    suite rather than asserted termwise.
    """
    k, l = x.arity, y.arity
    if not 1 <= i <= k:
        raise ValueError("slot %d out of range 1..%d" % (i, k))
    xmap = {j: (j if j <= i else j + l - 1) for j in range(1, k + 1)}
    ymap = {j: j + i - 1 for j in range(1, l + 1)}
    xr = relabel(x, xmap)  # order-preserving
    yr = relabel(y, ymap)
    support = frozenset(range(1, k + l))
    out = PoissonElement(support)
    for parity in (0, 1):
        yd = PoissonElement(
            yr.support,
            {m: c for m, c in yr.terms.items() if mono_degree(m) % 2 == parity},
        )
        if yd.is_zero():
            continue
        for mono, c in xr.terms.items():
            if parity and _slot_twist(mono, i) % 2:
                c = -c
            pieces = []
            for t in mono:
                if i in tree_leaves(t):
                    pieces.append(_subst_tree(t, i, yd))
                else:
                    pieces.append(from_mono((t,)))
            acc = pieces[0]
            for p in pieces[1:]:
                acc = acc.mul(p)
            out = out + _resupport(acc, support).scale(c)
    return out


def _subst_tree(t, i, repl):
    if is_leaf(t):
        return repl if t == i else gen(t)
    return _subst_tree(t[0], i, repl).bracket(_subst_tree(t[1], i, repl))


# ---------------------------------------------------------------------------
# basis enumeration and dimension counts


def set_partitions(items):
    """All partitions of ``items`` (a sorted tuple) into blocks, each block a
    sorted tuple, blocks ordered by minimum; deterministic order."""
    items = tuple(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for sub in set_partitions(rest):
        # first joins an existing block or opens its own
        yield ((first,),) + sub
        for j in range(len(sub)):
            block = tuple(sorted((first,) + sub[j]))
            blocks = sub[:j] + (block,) + sub[j + 1 :]
            yield tuple(sorted(blocks, key=lambda bl: bl[0]))


def enumerate_basis(k, degree=None, b=1):
    """All normal-form monomials of arity k, optionally degree-filtered.

    Deterministic order: partitions in generator order, then tail
    permutations lexicographically block by block.
    """
    out = []
    for blocks in set_partitions(tuple(range(1, k + 1))):
        if degree is not None and b * (k - len(blocks)) != degree:
            continue
        tail_choices = [list(itertools.permutations(bl[1:])) for bl in blocks]
        for tails in itertools.product(*tail_choices):
            out.append(tuple(comb(bl[0], tail) for bl, tail in zip(blocks, tails)))
    return out


def poincare_polynomial(k, b=1):
    """Degree -> dimension table of e_b(k) by direct normal-form enumeration."""
    from .exact import GradedDims

    if k < 1:
        raise ValueError("arity must be >= 1")
    counts = {}
    for blocks in set_partitions(tuple(range(1, k + 1))):
        n = 1
        for bl in blocks:
            for m in range(1, len(bl)):
                n *= m
        d = b * (k - len(blocks))
        counts[d] = counts.get(d, 0) + n
    return GradedDims(counts)


def random_element(k, rng, terms=3, coeff_bound=3, homogeneous=True):
    """Random rational combination of normal monomials of arity k.

    Homogeneous by default (Koszul-signed identities need a degree).
    """
    basis = enumerate_basis(k)
    if homogeneous:
        d = rng.choice(sorted({mono_degree(m) for m in basis}))
        basis = [m for m in basis if mono_degree(m) == d]
    out = {}
    for _ in range(min(terms, len(basis))):
        m = rng.choice(basis)
        c = rng.randint(-coeff_bound, coeff_bound) or 1
        out[m] = out.get(m, Q(0)) + c
    return PoissonElement(range(1, k + 1), out)


def operad_instance():
    """Harness adapter for this operad."""
    from .operads import OperadInstance

    return OperadInstance(
        name="bracket-product",
        compose=compose_i,
        act=sigma_act,
        arity=lambda x: x.arity,
        degree=lambda x: x.degree() if not x.is_zero() else 0,
        scale=lambda x, s: x.scale(s),
        unit=unit(),
    )


class EngineConfig:
    """Bracket degree parameter; only odd degrees are meaningful here."""

    __slots__ = ("bracket_degree",)

    def __init__(self, bracket_degree=1):
        if bracket_degree < 1 or bracket_degree % 2 == 0:
            raise ValueError("bracket degree must be odd and positive")
        self.bracket_degree = bracket_degree

    def __repr__(self):
        return "EngineConfig(bracket_degree=%d)" % self.bracket_degree
