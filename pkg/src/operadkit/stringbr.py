"""Data-driven string brackets on finite BV presentations.

A presentation is a graded basis with product structure constants and a
degree +1 square-zero operator D.  The loop bracket is the deviation of D
from being a derivation,

    [a, c] = D(a.c) - D(a).c - (-1)^{|a|} a.D(c),

and its graded antisymmetry, Jacobi and Leibniz laws are checked at the
shifted degrees |a| + 1, reported as findings with witness triples rather
than raised: the laws hold for honest BV data but can fail for data that
merely satisfies the loader invariants.

A transfer pair adds a graded module B with maps tau: B -> A of degree +1
and p: A -> B of degree 0 subject to D = tau o p and p o tau = 0 (verified
at load).  The string operations are

    m_bar_k(a_1, ..., a_k) = p(tau(a_1) ... tau(a_k)),  k >= 2,

graded symmetric at the shifted degrees, and they satisfy the generalized
Jacobi relation of a gravity algebra, which verify_gravity_algebra sweeps
over all basis argument tuples.  transfer_lie_check confirms the forced
identity tau(m_bar_2(a, b)) = D(tau(a).tau(b)).

Matrix convention for data files: column j of "delta" is D applied to the
j-th basis element, column j of "tau" is the tau-image of the j-th
B-element, column j of "p" is the p-image of the j-th A-element.  Missing
product entries default to zero; a missing (j, i) entry is filled from
(i, j) by graded commutativity.  Rationals are "p/q" strings or integers.
"""

from __future__ import annotations

import itertools

from .exact import Q, format_rational, parse_rational
from .operads import CheckReport


def _vec_add(u, v, scale=Q(1)):
    out = dict(u)
    for i, c in v.items():
        out[i] = out.get(i, Q(0)) + scale * c
    return {i: c for i, c in out.items() if c}


def _vec_scale(u, c):
    return {} if not c else {i: c * x for i, x in u.items()}


def _vec_eq(u, v):
    return _vec_add(u, v, Q(-1)) == {}


def _format_vec(vec, names):
    if not vec:
        return "0"
    parts = []
    for i in sorted(vec):
        c = vec[i]
        parts.append("%s*%s" % (format_rational(c), names[i]))
    return " + ".join(parts)


class BVAlgebraData:
    """Finite graded-commutative associative algebra with a square-zero
    degree +1 operator; the four laws are verified at construction."""

    __slots__ = ("names", "degrees", "product", "delta")

    def __init__(self, names, degrees, product, delta, check=True):
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.product = product
        self.delta = delta
        if check:
            errors = structure_errors(self)
            if errors:
                raise ValueError("; ".join(errors[:4]))

    @property
    def dim(self):
        return len(self.names)

    def mul(self, u, v):
        out = {}
        for i, ci in u.items():
            for j, cj in v.items():
                entry = self.product.get((i, j))
                if entry:
                    out = _vec_add(out, entry, ci * cj)
        return out

    def delta_vec(self, u):
        out = {}
        for j, c in u.items():
            out = _vec_add(out, self.delta.get(j, {}), c)
        return out

    def bracket(self, i, j):
        """Deviation bracket of two basis elements."""
        a, c = {i: Q(1)}, {j: Q(1)}
        out = self.delta_vec(self.mul(a, c))
        out = _vec_add(out, self.mul(self.delta_vec(a), c), Q(-1))
        sign = Q(-1) if self.degrees[i] % 2 else Q(1)
        return _vec_add(out, self.mul(a, self.delta_vec(c)), -sign)

    def bracket_vec(self, u, v):
        out = {}
        for i, ci in u.items():
            for j, cj in v.items():
                out = _vec_add(out, self.bracket(i, j), ci * cj)
        return out


def structure_errors(data):
    """Witness strings for every violated loader invariant."""
    errors = []
    n = data.dim
    names, deg = data.names, data.degrees
    for (i, j), entry in sorted(data.product.items()):
        for m, c in sorted(entry.items()):
            if c and deg[m] != deg[i] + deg[j]:
                errors.append(
                    "product %s*%s hits %s of wrong degree"
                    % (names[i], names[j], names[m])
                )
    for i in range(n):
        for j in range(n):
            lhs = data.product.get((i, j), {})
            sign = Q(-1) if (deg[i] % 2) and (deg[j] % 2) else Q(1)
            rhs = _vec_scale(data.product.get((j, i), {}), sign)
            if not _vec_eq(lhs, rhs):
                errors.append(
                    "graded commutativity fails at (%s, %s)" % (names[i], names[j])
                )
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = data.mul(data.product.get((i, j), {}), {k: Q(1)})
                rhs = data.mul({i: Q(1)}, data.product.get((j, k), {}))
                if not _vec_eq(lhs, rhs):
                    errors.append(
                        "associativity fails at (%s, %s, %s)"
                        % (names[i], names[j], names[k])
                    )
    for j, col in sorted(data.delta.items()):
        for r, c in sorted(col.items()):
            if c and deg[r] != deg[j] + 1:
                errors.append("delta(%s) has a degree %d term" % (names[j], deg[r]))
    for j in range(n):
        if not _vec_eq(data.delta_vec(data.delta.get(j, {})), {}):
            errors.append("delta^2(%s) is nonzero" % names[j])
    return errors


# ---------------------------------------------------------------------------
# loading from plain dictionaries


def _parse_basis(raw):
    names, degrees = [], []
    for entry in raw:
        names.append(str(entry["name"]))
        degrees.append(int(entry["degree"]))
    if len(set(names)) != len(names):
        raise ValueError("duplicate basis names")
    return tuple(names), tuple(degrees)


def _parse_matrix_cols(rows, nrows, ncols, what):
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise ValueError("%s matrix must be %d x %d" % (what, nrows, ncols))
    cols = {}
    for r, row in enumerate(rows):
        for c, val in enumerate(row):
            q = parse_rational(val)
            if q:
                cols.setdefault(c, {})[r] = q
    return cols


def bv_data_from_dict(raw, check=True):
    names, degrees = _parse_basis(raw["basis"])
    n = len(names)
    product = {}
    for item in raw.get("product", []):
        i, j, coeffs = item
        if not (0 <= i < n and 0 <= j < n) or len(coeffs) != n:
            raise ValueError("product entry (%r, %r) is malformed" % (i, j))
        entry = {m: parse_rational(c) for m, c in enumerate(coeffs)}
        product[(i, j)] = {m: c for m, c in entry.items() if c}
    for (i, j) in list(product):
        if (j, i) not in product:
            sign = Q(-1) if (degrees[i] % 2) and (degrees[j] % 2) else Q(1)
            product[(j, i)] = _vec_scale(product[(i, j)], sign)
    delta = _parse_matrix_cols(raw.get("delta", [[0] * n for _ in range(n)]), n, n, "delta")
    return BVAlgebraData(names, degrees, product, delta, check=check)


def bv_data_to_dict(data):
    n = data.dim
    out = {
        "basis": [
            {"name": nm, "degree": d} for nm, d in zip(data.names, data.degrees)
        ],
        "product": [],
        "delta": [
            [
                format_rational(data.delta.get(j, {}).get(r, Q(0)))
                for j in range(n)
            ]
            for r in range(n)
        ],
    }
    for (i, j), entry in sorted(data.product.items()):
        if not entry:
            continue
        coeffs = [format_rational(entry.get(m, Q(0))) for m in range(n)]
        out["product"].append([i, j, coeffs])
    return out


# ---------------------------------------------------------------------------
# validation with findings


class BVValidation:
    """Outcome of validating raw presentation data: hard loader errors, or
    a loaded algebra plus law findings for the derived bracket."""

    __slots__ = ("errors", "findings", "data", "bracket_table")

    def __init__(self, errors, findings, data, bracket_table):
        self.errors = errors
        self.findings = findings
        self.data = data
        self.bracket_table = bracket_table

    @property
    def accepted(self):
        return not self.errors

    def lines(self):
        out = []
        if self.errors:
            out.append("REJECT %d structural errors" % len(self.errors))
            out.extend("  " + e for e in self.errors)
            return out
        out.append("ACCEPT dim %d presentation" % self.data.dim)
        for (i, j), vec in sorted(self.bracket_table.items()):
            if vec:
                out.append(
                    "  [%s, %s] = %s"
                    % (
                        self.data.names[i],
                        self.data.names[j],
                        _format_vec(vec, self.data.names),
                    )
                )
        for law, witness in self.findings:
            out.append("  FINDING %s fails at %s" % (law, witness))
        return out


def validate_bv(raw):
    """Load raw data and derive the deviation bracket; bracket-law failures
    are findings with witness triples, not errors.

    The reported bracket is the deviation itself.  The odd Lie laws are
    stated for its normalization (-1)^{|a|} [a, c], which removes the
    left-degree twist the deviation formula carries; at that normalization
    antisymmetry, Jacobi and Leibniz take the usual shifted-degree form.
    """
    try:
        data = bv_data_from_dict(raw, check=False)
    except (ValueError, KeyError, TypeError) as err:
        return BVValidation(["unreadable data: %s" % err], [], None, {})
    errors = structure_errors(data)
    if errors:
        return BVValidation(errors, [], None, {})
    names, deg, n = data.names, data.degrees, data.dim
    table = {(i, j): data.bracket(i, j) for i in range(n) for j in range(n)}

    def nb(u, v):
        out = {}
        for i, ci in u.items():
            for j, cj in v.items():
                c = ci * cj
                if deg[i] % 2:
                    c = -c
                out = _vec_add(out, table[(i, j)], c)
        return out

    def shift_sign(d1, d2):
        return Q(-1) if (d1 % 2) and (d2 % 2) else Q(1)

    findings = []
    for i in range(n):
        for j in range(n):
            sign = shift_sign(deg[i] + 1, deg[j] + 1)
            lhs = nb({i: Q(1)}, {j: Q(1)})
            rhs = _vec_scale(nb({j: Q(1)}, {i: Q(1)}), -sign)
            if not _vec_eq(lhs, rhs):
                findings.append(("antisymmetry", "(%s, %s)" % (names[i], names[j])))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                ei, ej, ek = {i: Q(1)}, {j: Q(1)}, {k: Q(1)}
                lhs = nb(ei, nb(ej, ek))
                rhs = nb(nb(ei, ej), ek)
                sign = shift_sign(deg[i] + 1, deg[j] + 1)
                rhs = _vec_add(rhs, nb(ej, nb(ei, ek)), sign)
                if not _vec_eq(lhs, rhs):
                    findings.append(
                        ("jacobi", "(%s, %s, %s)" % (names[i], names[j], names[k]))
                    )
                lhs = nb(ei, data.product.get((j, k), {}))
                rhs = data.mul(nb(ei, ej), ek)
                sign = shift_sign(deg[i] + 1, deg[j])
                rhs = _vec_add(rhs, data.mul(ej, nb(ei, ek)), sign)
                if not _vec_eq(lhs, rhs):
                    findings.append(
                        ("leibniz", "(%s, %s, %s)" % (names[i], names[j], names[k]))
                    )
    return BVValidation([], findings, data, table)


# ---------------------------------------------------------------------------
# transfer pairs


class EquivariantPair:
    """Algebra A with module B, transfer tau (degree +1) and projection p
    (degree 0) satisfying D = tau o p and p o tau = 0."""

    __slots__ = ("A", "b_names", "b_degrees", "tau", "p")

    def __init__(self, A, b_names, b_degrees, tau, p):
        self.A = A
        self.b_names = tuple(b_names)
        self.b_degrees = tuple(b_degrees)
        self.tau = tau
        self.p = p
        errors = pair_errors(self)
        if errors:
            raise ValueError("; ".join(errors[:4]))

    @property
    def b_dim(self):
        return len(self.b_names)

    def tau_vec(self, u):
        out = {}
        for j, c in u.items():
            out = _vec_add(out, self.tau.get(j, {}), c)
        return out

    def p_vec(self, u):
        out = {}
        for j, c in u.items():
            out = _vec_add(out, self.p.get(j, {}), c)
        return out


def pair_errors(pair):
    errors = []
    A = pair.A
    for j, col in sorted(pair.tau.items()):
        for r, c in sorted(col.items()):
            if c and A.degrees[r] != pair.b_degrees[j] + 1:
                errors.append("tau(%s) is not of degree +1" % pair.b_names[j])
    for j, col in sorted(pair.p.items()):
        for r, c in sorted(col.items()):
            if c and pair.b_degrees[r] != A.degrees[j]:
                errors.append("p(%s) is not of degree 0" % A.names[j])
    for j in range(A.dim):
        lhs = A.delta.get(j, {})
        rhs = pair.tau_vec(pair.p.get(j, {}))
        if not _vec_eq(lhs, rhs):
            errors.append("delta != tau o p at %s" % A.names[j])
    for j in range(pair.b_dim):
        if not _vec_eq(pair.p_vec(pair.tau.get(j, {})), {}):
            errors.append("p o tau != 0 at %s" % pair.b_names[j])
    return errors


def pair_from_dict(raw):
    A = bv_data_from_dict(raw)
    if "B" not in raw:
        raise ValueError("pair data needs a B block")
    b_names, b_degrees = _parse_basis(raw["B"]["basis"])
    tau = _parse_matrix_cols(raw["tau"], A.dim, len(b_names), "tau")
    p = _parse_matrix_cols(raw["p"], len(b_names), A.dim, "p")
    return EquivariantPair(A, b_names, b_degrees, tau, p)


def pair_to_dict(pair):
    out = bv_data_to_dict(pair.A)
    out["B"] = {
        "basis": [
            {"name": nm, "degree": d}
            for nm, d in zip(pair.b_names, pair.b_degrees)
        ]
    }
    out["tau"] = [
        [
            format_rational(pair.tau.get(j, {}).get(r, Q(0)))
            for j in range(pair.b_dim)
        ]
        for r in range(pair.A.dim)
    ]
    out["p"] = [
        [format_rational(pair.p.get(j, {}).get(r, Q(0))) for j in range(pair.A.dim)]
        for r in range(pair.b_dim)
    ]
    return out


def m_bar(pair, k, args):
    """p applied to the ordered product of tau-images; args are B-indices
    or sparse B-vectors, extended multilinearly."""
    if k < 2:
        raise ValueError("string operations start at arity 2")
    if len(args) != k:
        raise ValueError("need %d arguments" % k)
    vecs = [a if isinstance(a, dict) else {a: Q(1)} for a in args]
    prod = None
    for v in vecs:
        tv = pair.tau_vec(v)
        prod = tv if prod is None else pair.A.mul(prod, tv)
    return pair.p_vec(prod)


def _koszul_front_sign(shifted, i, j):
    """Sign for pulling positions i < j to the front in a word whose letter
    degrees are the shifted list."""
    exp = shifted[i] * sum(shifted[:i]) + shifted[j] * (
        sum(shifted[:j]) - shifted[i]
    )
    return Q(-1) if exp % 2 else Q(1)


def verify_gravity_algebra(pair, k, l, check_id=None):
    """Generalized Jacobi for the string operations over every tuple of
    basis arguments: the bracket-first sum equals m_bar(m_bar_k, ...) when
    l >= 1 and vanishes when l = 0."""
    if k < 2 or l < 0:
        raise ValueError("need k >= 2 and l >= 0")
    rep = CheckReport(
        check_id or "string-gravity-%d-%d" % (k, l),
        "generalized Jacobi for m_bar over all basis tuples",
        {"k": k, "l": l, "b_dim": pair.b_dim},
    )
    nb = pair.b_dim
    for tup in itertools.product(range(nb), repeat=k + l):
        avec, bvec = tup[:k], tup[k:]
        shifted = [pair.b_degrees[a] + 1 for a in avec]
        lhs = {}
        for i in range(k):
            for j in range(i + 1, k):
                sign = _koszul_front_sign(shifted, i, j)
                head = m_bar(pair, 2, [avec[i], avec[j]])
                rest = [avec[m] for m in range(k) if m not in (i, j)]
                if k + l - 1 < 2:
                    continue
                term = m_bar(pair, k + l - 1, [head] + rest + list(bvec))
                lhs = _vec_add(lhs, term, sign)
        if l == 0:
            rhs = {}
        else:
            rhs = m_bar(pair, l + 1, [m_bar(pair, k, list(avec))] + list(bvec))
        ok = _vec_eq(lhs, rhs)
        names = tuple(pair.b_names[a] for a in tup)
        rep.count(ok, None if ok else "args=%r" % (names,))
    return rep


def transfer_lie_check(pair, a, b):
    """tau(m_bar_2(a, b)) = delta(tau(a).tau(b)); forced by the pair
    invariants."""
    ta = pair.tau.get(a, {})
    tb = pair.tau.get(b, {})
    lhs = pair.tau_vec(m_bar(pair, 2, [a, b]))
    rhs = pair.A.delta_vec(pair.A.mul(ta, tb))
    return _vec_eq(lhs, rhs)


def check_transfer_lie(pair, check_id="string-transfer-lie"):
    rep = CheckReport(
        check_id,
        "tau sends the string bracket to the loop bracket on all basis pairs",
        {"b_dim": pair.b_dim},
    )
    for a in range(pair.b_dim):
        for b in range(pair.b_dim):
            ok = transfer_lie_check(pair, a, b)
            rep.count(
                ok,
                None if ok else "(%s, %s)" % (pair.b_names[a], pair.b_names[b]),
            )
    return rep


def check_m_bar_symmetry(pair, k=2, check_id=None):
    rep = CheckReport(
        check_id or "string-mbar-symmetry-%d" % k,
        "m_bar is graded symmetric at the shifted degrees",
        {"k": k, "b_dim": pair.b_dim},
    )
    nb = pair.b_dim
    for tup in itertools.product(range(nb), repeat=k):
        base = m_bar(pair, k, list(tup))
        for i in range(k - 1):
            swapped = list(tup)
            swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
            s1 = pair.b_degrees[tup[i]] + 1
            s2 = pair.b_degrees[tup[i + 1]] + 1
            sign = Q(-1) if (s1 % 2) and (s2 % 2) else Q(1)
            ok = _vec_eq(base, _vec_scale(m_bar(pair, k, swapped), sign))
            rep.count(ok, None if ok else "swap %d in %r" % (i, tup))
    return rep


def m_bar_table(pair, k):
    """Structure constants of m_bar_k: nonzero outputs per basis tuple."""
    out = {}
    for tup in itertools.product(range(pair.b_dim), repeat=k):
        vec = m_bar(pair, k, list(tup))
        if vec:
            out[tup] = vec
    return out


# ---------------------------------------------------------------------------
# constraint-satisfying generator


def free_bv_presentation(k, supports=None):
    """Multilinear algebra on k letters: basis elements are bracket
    monomials on a family of letter subsets, the product concatenates
    blocks when the letter sets are disjoint and stay in the family, and
    the operator acts blockwise.  Honest BV data for every k.

    The default family is every nonempty subset.  A restricted family must
    be closed under disjoint unions so that it spans a subalgebra.  The
    wire format pins the operator degree at +1, so only the degree-1
    bracket model is generated here."""
    from .bv import delta_apply
    from .poisson import PoissonElement, enumerate_basis, mono_degree

    if k < 1:
        raise ValueError("need at least one letter")
    if supports is None:
        family = [
            frozenset(sub)
            for r in range(1, k + 1)
            for sub in itertools.combinations(range(1, k + 1), r)
        ]
    else:
        family = sorted({frozenset(s) for s in supports}, key=lambda s: (len(s), sorted(s)))
        for s in family:
            if not s or not s <= frozenset(range(1, k + 1)):
                raise ValueError("support %r out of range" % sorted(s))
        for s in family:
            for t in family:
                if not (s & t) and (s | t) not in family:
                    raise ValueError(
                        "family not closed under the disjoint union %r"
                        % sorted(s | t)
                    )
    basis = []
    for support in family:
        sub = tuple(sorted(support))
        for x in enumerate_basis(len(sub)):
            mono = _relabel_mono(x, sub)
            basis.append((support, mono))
    index = {key: n for n, key in enumerate(basis)}
    names = tuple("m%d" % n for n in range(len(basis)))
    degrees = tuple(mono_degree(mono) for _, mono in basis)

    def as_element(n):
        support, mono = basis[n]
        return PoissonElement(support, {mono: Q(1)})

    def to_vec(el):
        return {
            index[(el.support, mono)]: c for mono, c in el.terms.items() if c
        }

    product = {}
    for i, (si, mi) in enumerate(basis):
        for j, (sj, mj) in enumerate(basis):
            if si & sj:
                continue
            entry = to_vec(as_element(i).mul(as_element(j)))
            if entry:
                product[(i, j)] = entry
    delta = {}
    for j in range(len(basis)):
        col = to_vec(delta_apply(as_element(j)))
        if col:
            delta[j] = col
    return BVAlgebraData(names, degrees, product, delta)


def _relabel_mono(mono, sub):
    """Rename the letters 1..r of a basis monomial to the ordered subset
    sub; order-preserving, so normal forms are stable."""
    from .poisson import from_mono, relabel

    mapping = {n + 1: lab for n, lab in enumerate(sub)}
    out = relabel(from_mono(mono), mapping)
    ((mono2, c),) = out.terms.items()
    if c != Q(1):
        raise AssertionError("order-preserving relabel changed a coefficient")
    return mono2


def pair_from_presentation(data):
    """Split off a complement of the kernel: B is spanned by basis columns
    whose images under the operator are independent, tau restricts the
    operator to them, and p solves delta(x) = tau(p(x)).  The pair laws
    hold by construction."""
    n = data.dim
    pivots = []
    span = []
    for j in range(n):
        col = data.delta.get(j, {})
        if not col:
            continue
        if _extend_span(span, col):
            pivots.append(j)
    b_names = tuple("t_" + data.names[j] for j in pivots)
    b_degrees = tuple(data.degrees[j] for j in pivots)
    tau = {m: dict(data.delta[j]) for m, j in enumerate(pivots)}
    images = [data.delta[j] for j in pivots]
    p = {}
    for j in range(n):
        target = data.delta.get(j, {})
        if not target:
            continue
        coeffs = _solve_in_span(images, target)
        p[j] = {m: c for m, c in enumerate(coeffs) if c}
    return EquivariantPair(data, b_names, b_degrees, tau, p)


def _extend_span(span, vec):
    """Reduce vec against the row-echelon span; append and report True if
    independent."""
    v = dict(vec)
    for piv, row in span:
        if piv in v:
            v = _vec_add(v, row, -v[piv])
    if not v:
        return False
    piv = min(v)
    span.append((piv, _vec_scale(v, Q(1) / v[piv])))
    return True


def _solve_in_span(images, target):
    """Exact coefficients writing target as a combination of the
    independent images."""
    cols = list(images)
    rows = sorted({r for col in cols for r in col} | set(target))
    mat = [[col.get(r, Q(0)) for col in cols] + [target.get(r, Q(0))] for r in rows]
    m, n = len(mat), len(cols)
    row = 0
    where = [-1] * n
    for col in range(n):
        sel = next((r for r in range(row, m) if mat[r][col]), None)
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        inv = Q(1) / mat[row][col]
        mat[row] = [x * inv for x in mat[row]]
        for r in range(m):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[row])]
        where[col] = row
        row += 1
    coeffs = [mat[where[c]][n] if where[c] >= 0 else Q(0) for c in range(n)]
    # consistency: residual rows must be zero
    for r in range(row, m):
        if mat[r][n]:
            raise ArithmeticError("target lies outside the image span")
    return coeffs


def check_nested_gravity(k, l, check_id=None):
    """Nonvacuous instance of the generalized Jacobi: the arguments are
    bracket classes on disjoint letter blocks, so the nested operations do
    not collapse.  Since tau is injective and tau o p is the operator, the
    relation is checked after applying tau, where every m_bar composite
    becomes an exact bracket-calculus expression."""
    from .bv import delta_apply
    from .poisson import gen

    if k < 3:
        raise ValueError("the relation is a tautology for k = 2")
    rep = CheckReport(
        check_id or "string-gravity-nested-%d-%d" % (k, l),
        "generalized Jacobi on disjoint bracket blocks, via the transfer",
        {"k": k, "l": l, "letters": 2 * (k + l)},
    )
    n = k + l
    taus = [gen(2 * r + 1).bracket(gen(2 * r + 2)) for r in range(n)]
    a_s, b_s = taus[:k], taus[k:]
    shifted = [1] * k  # each tau-image has degree 1, so B-degree 0

    def ordered_product(factors):
        out = factors[0]
        for f in factors[1:]:
            out = out.mul(f)
        return out

    lhs = None
    nonzero_terms = 0
    for i in range(k):
        for j in range(i + 1, k):
            sign = _koszul_front_sign(shifted, i, j)
            head = delta_apply(a_s[i].mul(a_s[j]))
            rest = [a_s[m] for m in range(k) if m not in (i, j)]
            term = delta_apply(ordered_product([head] + rest + b_s))
            if not term.is_zero():
                nonzero_terms += 1
            term = term.scale(sign)
            lhs = term if lhs is None else lhs + term
    if l == 0:
        ok = lhs.is_zero()
    else:
        rhs = delta_apply(delta_apply(ordered_product(a_s)).mul(ordered_product(b_s)))
        ok = (lhs + rhs.scale(Q(-1))).is_zero()
    rep.count(ok and nonzero_terms > 0, None if ok else "relation fails")
    rep.params["nonzero_terms"] = nonzero_terms
    if nonzero_terms == 0:
        rep.count(False, "all nested terms vanished; check is vacuous")
    return rep
