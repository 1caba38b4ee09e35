"""Independent tensor-word oracle for the Lie layer.

A bracket tree on distinct letters expands into the free associative algebra
by [u, v] = uv - (-1)^{||u|| ||v||} vu, where ||.|| is the shifted parity
(leaf count mod 2, the bracket having odd degree).  Words are tuples of
letters; an expansion is a dict word -> integer.

Left-combed trees with minimal head are triangular in this model: the comb
(m, t1, ..., tn) contains the word (m, t1, ..., tn) with coefficient +1 and
no other word starting with the minimal letter m.  Reading off the m-leading
words of an expansion therefore reconstructs the normal form, and re-expanding
the reconstruction checks it against the full word data.  This path shares no
code with the rewriting engine.
"""

from __future__ import annotations

from .poisson import comb, is_leaf, tree_nleaves


def tree_to_words(t):
    """Expansion of a bracket tree; dict word tuple -> int coefficient."""
    if is_leaf(t):
        return {(t,): 1}
    wl = tree_to_words(t[0])
    wr = tree_to_words(t[1])
    # -(-1)^{||left|| ||right||}
    sign = 1 if (tree_nleaves(t[0]) * tree_nleaves(t[1])) % 2 else -1
    out = {}
    for u, cu in wl.items():
        for v, cv in wr.items():
            out[u + v] = out.get(u + v, 0) + cu * cv
            out[v + u] = out.get(v + u, 0) + sign * cu * cv
    return {w: c for w, c in out.items() if c}


def combination_to_words(trees):
    """Expansion of a dict {tree: coefficient}."""
    out = {}
    for t, c in trees.items():
        for w, cw in tree_to_words(t).items():
            out[w] = out.get(w, 0) + c * cw
    return {w: c for w, c in out.items() if c}


def lie_from_words(words):
    """Reconstruct {normal comb: coefficient} from a full word expansion.

    Reads the words led by the minimal letter, then re-expands and demands
    exact agreement with the input, so a wrong reconstruction cannot pass.
    """
    if not words:
        return {}
    support = set(next(iter(words)))
    for w in words:
        if set(w) != support or len(w) != len(support):
            raise ValueError("words are not permutations of a fixed letter set")
    m = min(support)
    trees = {}
    for w, c in words.items():
        if w[0] == m:
            trees[comb(m, w[1:])] = c
    if combination_to_words(trees) != words:
        raise ValueError("word data is not the expansion of a Lie element")
    return trees
