"""Gravity structure: the kernel of the circle operator.

Grav(k) is computed literally as ker Delta inside the arity-k component of
the bracket-product model, degree by degree, over exact rationals.  The
module verifies, rather than assumes: ker Delta = im Delta in every degree
(the rational shadow of freeness over the exterior algebra on Delta), the
k!/2 total dimension with per-degree counts matching the independent
polynomial oracle t^b prod_{j=2}^{k-1}(1 + j t^b), closure of the kernel
under partial composition, the generalized Jacobi relations for the
bracket family iota_k = Delta(x1...xk), generation of the kernel by that
family, the embedded bracket suboperad of dimension (k-1)!, and the
agreement of the b=3 and b=1 dimension tables under degree tripling.

Arity 1 is rejected throughout: Delta vanishes on the one-dimensional
unary component, so its kernel is not the image and the unary gravity
term lies outside this finite model.
"""

from __future__ import annotations

import itertools

from .bv import delta_apply
from .exact import GradedDims, Q, SparseMatrix, poly_coeffs_product, span_rank
from .operads import CheckReport
from .poisson import (
    PoissonElement,
    compose_i,
    enumerate_basis,
    from_mono,
    mono_degree,
    sigma_act,
)


def _basis_elements(k, degree, b=1):
    support = frozenset(range(1, k + 1))
    return [
        (mono, PoissonElement(support, {mono: Q(1)}))
        for mono in enumerate_basis(k, degree=degree, b=b)
    ]


def _delta_matrix(k, degree, b=1):
    """Matrix of Delta from the degree slice to the degree+b slice, columns
    and rows in enumeration order."""
    cols = enumerate_basis(k, degree=degree, b=b)
    rows = enumerate_basis(k, degree=degree + b, b=b)
    row_index = {mono: r for r, mono in enumerate(rows)}
    support = frozenset(range(1, k + 1))
    entries = {}
    for c, mono in enumerate(cols):
        image = delta_apply(PoissonElement(support, {mono: Q(1)}))
        for m, v in image.terms.items():
            entries[(row_index[m], c)] = v
    return SparseMatrix(len(rows), len(cols), entries), cols, rows


class GravityBasis:
    """Per-degree spanning sets of ker Delta in arity k, each element
    carrying an exact Delta-closedness certificate."""

    def __init__(self, arity, bracket_degree, elements):
        self.arity = arity
        self.bracket_degree = bracket_degree
        self.elements = dict(elements)  # degree -> list of PoissonElement

    def dims(self):
        return GradedDims({d: len(v) for d, v in self.elements.items()})

    def all_elements(self):
        for d in sorted(self.elements):
            for x in self.elements[d]:
                yield d, x


def gravity_basis(k, b=1):
    """Exact kernel of Delta per degree; rejects the unary arity."""
    if k < 2:
        raise ValueError("gravity model starts at arity 2")
    support = frozenset(range(1, k + 1))
    elements = {}
    for j in range(k):
        degree = b * j
        matrix, cols, _ = _delta_matrix(k, degree, b)
        kernel = matrix.kernel_basis()
        if not kernel:
            continue
        span = []
        for vec in kernel:
            x = PoissonElement(
                support, {cols[c]: vec[c] for c in range(len(cols)) if vec[c]}
            )
            if not delta_apply(x).is_zero():
                raise AssertionError("kernel vector fails its certificate")
            span.append(x)
        elements[degree] = span
    return GravityBasis(k, b, elements)


def moduli_dimension_oracle(k, b=1):
    """Independent per-degree dimension table: coefficients of
    t^b prod_{j=2}^{k-1}(1 + j t^b)."""
    if k < 2:
        raise ValueError("oracle starts at arity 2")
    shift = [0] * b + [1]
    factors = [shift]
    for j in range(2, k):
        factors.append([1] + [0] * (b - 1) + [j])
    return poly_coeffs_product(factors)


def check_free_module(k, b=1):
    """ker Delta = im Delta per degree, and total kernel dimension k!/2."""
    if k < 2:
        raise ValueError(
            "arity 1 rejected: Delta = 0 there, so the kernel is not the image"
        )
    rep = CheckReport(
        "gravity-free-module-%d-b%d" % (k, b),
        "ker Delta equals im Delta in every degree and has total dimension k!/2",
        {"arity": k, "bracket_degree": b},
    )
    total = 0
    dims = {}
    ranks = {}
    for j in range(k):
        degree = b * j
        matrix, cols, _ = _delta_matrix(k, degree, b)
        ranks[degree] = matrix.rank()
        dims[degree] = len(cols)
    for j in range(k):
        degree = b * j
        ker_dim = dims[degree] - ranks[degree]
        im_dim = ranks.get(degree - b, 0)
        total += ker_dim
        ok = ker_dim == im_dim
        rep.count(
            ok,
            None
            if ok
            else "degree %d: dim ker = %d, dim im = %d" % (degree, ker_dim, im_dim),
        )
    expected = 1
    for j in range(2, k + 1):
        expected *= j
    expected //= 2
    rep.count(
        total == expected,
        None if total == expected else "total %d != %d" % (total, expected),
    )
    return rep


def borel_homology(k, b=1):
    """Cokernel dimensions of Delta per degree; for k >= 2 they reproduce
    the kernel table shifted down by b."""
    if k < 1:
        raise ValueError("arity must be positive")
    out = {}
    prev_rank = 0
    for j in range(k):
        degree = b * j
        matrix, cols, _ = _delta_matrix(k, degree, b)
        out[degree] = len(cols) - prev_rank
        prev_rank = matrix.rank()
    return GradedDims(out)


def bracket_generator(k, b=1):
    """The degree-b class Delta(x1...xk) generating the bracket family."""
    if k < 2:
        raise ValueError("bracket generator needs arity >= 2")
    mono = tuple(range(1, k + 1))
    iota = delta_apply(from_mono(mono))
    if not delta_apply(iota).is_zero():
        raise AssertionError("generator is not Delta-closed")
    return iota


def _routed_bracket(k, l, pair, b=1):
    """sigma-routed copy of iota_{k+l-1} o_1 iota_2 whose bracket pair is
    (i, j) and whose remaining slots stay ascending.  The unary circle
    class is outside this finite model and is taken to act as zero, the
    same convention that sets the l = 0 left side to zero."""
    i, j = pair
    if k + l - 1 < 2:
        return PoissonElement(range(1, k + l + 1))
    base = compose_i(bracket_generator(k + l - 1, b), bracket_generator(2, b), 1)
    rest = [m for m in range(1, k + l + 1) if m not in (i, j)]
    perm = tuple([i, j] + rest)
    return sigma_act(perm, base)


def verify_generalized_jacobi(k, l, b=1):
    """The bracket family's quadratic relation in arity k+l.

    LHS = iota_{l+1} o_1 iota_k (zero when l = 0 by convention); RHS is the
    sum over pairs i < j <= k of the routed iota_{k+l-1} o_1 iota_2.  Dummy
    slots are degree 0, so the Koszul prefactors reduce to the engine's own
    routing signs.  The report records the single global sign at which the
    identity holds; acceptance asserts that sign is consistent across all
    checked (k, l), not any termwise convention.
    """
    if k < 2 or l < 0:
        raise ValueError("need k >= 2 and l >= 0")
    rep = CheckReport(
        "gravity-generalized-jacobi-%d-%d-b%d" % (k, l, b),
        "the bracket family satisfies the quadratic relation in arity k+l",
        {"k": k, "l": l, "bracket_degree": b},
    )
    if l == 0:
        lhs = PoissonElement(range(1, k + 1))
    else:
        lhs = compose_i(bracket_generator(l + 1, b), bracket_generator(k, b), 1)
    rhs = None
    for i, j in itertools.combinations(range(1, k + 1), 2):
        term = _routed_bracket(k, l, (i, j), b)
        rhs = term if rhs is None else rhs + term
    if l == 0:
        sign = 0 if rhs.is_zero() else None
        rep.params["relation_sign"] = sign
        rep.count(sign == 0, None if sign == 0 else "l=0: sum of pair terms is nonzero")
        return rep
    if lhs == rhs:
        sign = 1
    elif lhs == rhs.scale(-1):
        sign = -1
    else:
        sign = None
    rep.params["relation_sign"] = sign
    rep.count(sign is not None, None if sign is not None else "no global sign matches")
    return rep


def check_suboperad_closure(max_arity, b=1):
    """Partial composition of Delta-closed elements stays Delta-closed."""
    if max_arity < 2:
        raise ValueError("need max_arity >= 2")
    rep = CheckReport(
        "gravity-closure-%d-b%d" % (max_arity, b),
        "compose_i of kernel basis elements lands in ker Delta",
        {"max_arity": max_arity, "bracket_degree": b},
    )
    bases = {k: gravity_basis(k, b) for k in range(2, max_arity)}
    for k in range(2, max_arity):
        for l in range(2, max_arity):
            if k + l - 1 > max_arity:
                continue
            for _, x in bases[k].all_elements():
                for _, y in bases[l].all_elements():
                    for i in range(1, k + 1):
                        z = compose_i(x, y, i)
                        ok = delta_apply(z).is_zero()
                        rep.count(
                            ok,
                            None
                            if ok
                            else "k=%d l=%d i=%d x=%r y=%r" % (k, l, i, x, y),
                        )
    return rep


def _closure_dims(generators, max_arity, b=1):
    """Per-arity per-degree dimensions of the symmetric sub-sequence
    generated by ``generators`` under composition and relabeling."""
    span = {k: [] for k in range(1, max_arity + 1)}
    for k, x in generators:
        span[k].append(x)

    def orbit_closure():
        for k in range(2, max_arity + 1):
            extended = list(span[k])
            for x in span[k]:
                for perm in itertools.permutations(range(1, k + 1)):
                    extended.append(sigma_act(perm, x))
            span[k] = _reduce_span(k, extended, b)

    def _dims():
        return {
            k: _span_dims(k, span[k], b) for k in range(1, max_arity + 1)
        }

    orbit_closure()
    current = _dims()
    while True:
        new_elements = {k: list(span[k]) for k in span}
        for k in range(2, max_arity + 1):
            for l in range(2, max_arity + 1):
                if k + l - 1 > max_arity:
                    continue
                for x in span[k]:
                    for y in span[l]:
                        for i in range(1, k + 1):
                            new_elements[k + l - 1].append(compose_i(x, y, i))
        for k in new_elements:
            span[k] = _reduce_span(k, new_elements[k], b)
        orbit_closure()
        nxt = _dims()
        if nxt == current:
            return {k: GradedDims(v) for k, v in current.items()}
        current = nxt


def _vector(x, index, size):
    vec = {}
    for m, c in x.terms.items():
        vec[index[m]] = c
    return vec


def _span_dims(k, elements, b=1):
    by_degree = {}
    for x in elements:
        if x.is_zero():
            continue
        d = x.degree(b)
        by_degree.setdefault(d, []).append(x)
    dims = {}
    for d, xs in by_degree.items():
        basis = enumerate_basis(k, degree=d, b=b)
        index = {m: c for c, m in enumerate(basis)}
        dims[d] = span_rank([_vector(x, index, len(basis)) for x in xs])
    return {d: n for d, n in dims.items() if n}


def _reduce_span(k, elements, b=1):
    """Independent subset of the given elements, per degree, keeping the
    first spanning occurrences (deterministic)."""
    by_degree = {}
    out = []
    for x in elements:
        if x.is_zero():
            continue
        d = x.degree(b)
        by_degree.setdefault(d, []).append(x)
    for d in sorted(by_degree):
        basis = enumerate_basis(k, degree=d, b=b)
        index = {m: c for c, m in enumerate(basis)}
        kept = []
        vecs = []
        for x in by_degree[d]:
            trial = vecs + [_vector(x, index, len(basis))]
            if span_rank(trial) > len(vecs):
                vecs = trial
                kept.append(x)
        out.extend(kept)
    return out


def check_lie_embedding(max_arity, b=1):
    """The sub-sequence generated by iota_2 alone has dimension (k-1)! in
    arity k, concentrated in the top kernel degree b(k-1)."""
    if max_arity < 2:
        raise ValueError("need max_arity >= 2")
    rep = CheckReport(
        "gravity-lie-embedding-%d-b%d" % (max_arity, b),
        "the binary bracket generates a (k-1)!-dimensional top-degree suboperad",
        {"max_arity": max_arity, "bracket_degree": b},
    )
    dims = _closure_dims([(2, bracket_generator(2, b))], max_arity, b)
    for k in range(2, max_arity + 1):
        expected = 1
        for j in range(1, k):
            expected *= j
        got = dims[k]
        ok = got == GradedDims({b * (k - 1): expected})
        rep.count(
            ok,
            None if ok else "arity %d: got %r, expected {%d: %d}"
            % (k, got, b * (k - 1), expected),
        )
    return rep


def check_generation(max_arity, b=1):
    """The bracket family iota_m (m >= 2) generates the whole kernel."""
    if max_arity < 2:
        raise ValueError("need max_arity >= 2")
    rep = CheckReport(
        "gravity-generation-%d-b%d" % (max_arity, b),
        "the bracket family generates ker Delta dimension-for-dimension",
        {"max_arity": max_arity, "bracket_degree": b},
    )
    gens = [(m, bracket_generator(m, b)) for m in range(2, max_arity + 1)]
    dims = _closure_dims(gens, max_arity, b)
    for k in range(2, max_arity + 1):
        target = gravity_basis(k, b).dims()
        ok = dims[k] == target
        rep.count(
            ok,
            None if ok else "arity %d: generated %r != kernel %r" % (k, dims[k], target),
        )
    return rep


def grav4_table(max_arity):
    """The b=3 dimension tables are the b=1 tables with degrees tripled."""
    if max_arity < 2:
        raise ValueError("need max_arity >= 2")
    rep = CheckReport(
        "gravity-degree-tripling-%d" % max_arity,
        "b=3 kernel dimensions equal the b=1 dimensions under degree tripling",
        {"max_arity": max_arity},
    )
    for k in range(2, max_arity + 1):
        d1 = gravity_basis(k, 1).dims()
        d3 = gravity_basis(k, 3).dims()
        ok = d3 == d1.scaled_degrees(3)
        rep.count(
            ok,
            None if ok else "arity %d: %r vs scaled %r" % (k, d3, d1),
        )
    return rep
