"""Exact scalars, graded bookkeeping, Koszul signs, and exact linear algebra.

Everything downstream computes over the rationals with no rounding anywhere:
scalars are ``fractions.Fraction``, dimensions live in ``GradedDims`` (a thin
degree -> dimension mapping), permutations are index tuples, and null spaces
are computed by sparse Gaussian elimination with a deterministic pivot order
so that identical inputs always produce identical bases.
"""

from __future__ import annotations

from fractions import Fraction

Q = Fraction

# ---------------------------------------------------------------------------
# graded dimension tables


class GradedDims(dict):
    """Finitely supported mapping degree -> nonnegative dimension.

    Zero values are dropped so equality is support equality.
    """

    def __init__(self, items=()):
        super().__init__()
        data = dict(items)
        for d, n in data.items():
            if n < 0:
                raise ValueError("negative dimension at degree %s" % d)
            if n:
                self[int(d)] = int(n)

    def total(self):
        return sum(self.values())

    def shifted(self, by):
        """Same table with every degree translated by ``by``."""
        return GradedDims({d + by: n for d, n in self.items()})

    def scaled_degrees(self, factor):
        """Same table with every degree multiplied by ``factor``."""
        return GradedDims({d * factor: n for d, n in self.items()})

    def __repr__(self):
        inner = ", ".join("%d: %d" % (d, self[d]) for d in sorted(self))
        return "GradedDims({%s})" % inner


def poly_coeffs_product(factors):
    """Coefficient table of a product of integer polynomials in t.

    ``factors`` is an iterable of coefficient lists (index = exponent).
    Returns a GradedDims keyed by exponent.  Pure integer arithmetic,
    independent of any basis enumeration; used as a dimension oracle.
    """
    coeffs = [1]
    for f in factors:
        out = [0] * (len(coeffs) + len(f) - 1)
        for i, a in enumerate(coeffs):
            if not a:
                continue
            for j, b in enumerate(f):
                out[i + j] += a * b
        coeffs = out
    return GradedDims({i: c for i, c in enumerate(coeffs) if c})


# ---------------------------------------------------------------------------
# permutations
#
# A permutation of {1..k} is a tuple p of length k with p[i-1] = image of i.


def perm_identity(k):
    return tuple(range(1, k + 1))


def perm_check(perm):
    k = len(perm)
    if sorted(perm) != list(range(1, k + 1)):
        raise ValueError("not a bijection of {1..%d}: %r" % (k, perm))
    return perm


def perm_compose(sigma, tau):
    """sigma after tau: (sigma o tau)(i) = sigma(tau(i))."""
    if len(sigma) != len(tau):
        raise ValueError("size mismatch")
    return tuple(sigma[t - 1] for t in tau)


def perm_inverse(perm):
    out = [0] * len(perm)
    for i, v in enumerate(perm):
        out[v - 1] = i + 1
    return tuple(out)


def perm_transposition(k, a, b):
    out = list(range(1, k + 1))
    out[a - 1], out[b - 1] = b, a
    return tuple(out)


def perm_apply(perm, i):
    return perm[i - 1]


def perm_permute_list(perm, values):
    """Place values[i] at position perm(i); the list indexed by positions."""
    out = [None] * len(perm)
    for i, v in enumerate(values):
        out[perm[i] - 1] = v
    return out


def perm_block_insert(sigma, i, tau):
    """The permutation of {1..k+l-1} obtained by inserting the block ``tau``
    (of size l) at slot ``i`` of ``sigma`` (of size k).

    This is the index bookkeeping of partial composition: slots of the
    composite are x's slots below i, then y's l slots, then x's slots above
    i; the image positions expand sigma(i) into an l-wide block ordered by
    tau and shift everything above sigma(i) up by l-1.
    """
    k, l = len(sigma), len(tau)
    si = sigma[i - 1]

    def out_of(v):
        return v if v < si else v + l - 1

    images = []
    for pos in range(1, k + l):
        if pos < i:
            images.append(out_of(sigma[pos - 1]))
        elif pos < i + l:
            images.append(si - 1 + tau[pos - i])
        else:
            images.append(out_of(sigma[pos - l]))
    return tuple(images)


def koszul_sign(perm, degrees):
    """Sign of permuting graded symbols: symbol at position i (degree
    degrees[i-1]) moves to position perm(i); each transposed odd-odd pair
    contributes -1.
    """
    if len(perm) != len(degrees):
        raise ValueError("size mismatch: %d vs %d" % (len(perm), len(degrees)))
    sign = 1
    k = len(perm)
    for i in range(k):
        if degrees[i] % 2 == 0:
            continue
        for j in range(i + 1, k):
            if degrees[j] % 2 and perm[i] > perm[j]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# sparse exact linear algebra


class SparseMatrix:
    """Immutable-by-convention sparse matrix over Fraction.

    Entries live in a dict (row, col) -> Fraction with no stored zeros.
    Rows and columns are 0-indexed.
    """

    def __init__(self, rows, cols, entries=None):
        self.rows = int(rows)
        self.cols = int(cols)
        self.entries = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError("entry (%d,%d) out of range" % (r, c))
            v = Q(v)
            if v:
                self.entries[(r, c)] = v

    def __getitem__(self, rc):
        return self.entries.get(rc, Q(0))

    def mat_vec(self, vec):
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [Q(0)] * self.rows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] += v * vec[c]
        return out

    def _row_list(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def rank(self):
        return len(_eliminate(self._row_list())[0])

    def kernel_basis(self):
        """Basis of the null space, deterministic.

        Elimination takes rows in natural order and pivots each row at its
        smallest-index nonzero column (first nonzero pivot).  Free columns
        get one basis vector each, normalized with a 1 in the free slot.
        """
        pivots, reduced = _eliminate(self._row_list())
        pivot_cols = dict(pivots)  # col -> row dict
        basis = []
        for c in range(self.cols):
            if c in pivot_cols:
                continue
            vec = [Q(0)] * self.cols
            vec[c] = Q(1)
            for pc, row in pivots:
                if c in row:
                    vec[pc] = -row[c]
            basis.append(tuple(vec))
        return basis


def _eliminate(rows):
    """Reduced row echelon on a list of sparse row dicts (in place).

    Returns (pivots, rows) where pivots is a list of (pivot_col, row_dict)
    in the deterministic order they were found.  Rows are scanned in their
    given order; each surviving row pivots at its first nonzero column.
    """
    pivots = []
    for row in rows:
        for pc, prow in pivots:
            f = row.get(pc)
            if f:
                for c, v in prow.items():
                    nv = row.get(c, Q(0)) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        if not row:
            continue
        pc = min(row)
        inv = Q(1) / row[pc]
        for c in list(row):
            row[c] *= inv
        # back-substitute into earlier pivot rows to get fully reduced form
        for _, prow in pivots:
            f = prow.get(pc)
            if f:
                for c, v in row.items():
                    nv = prow.get(c, Q(0)) - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivots.append((pc, row))
    pivots.sort(key=lambda p: p[0])
    return pivots, rows


def span_rank(vectors):
    """Rank of a list of dense Fraction tuples (or dicts col->Fraction)."""
    rows = []
    for v in vectors:
        if isinstance(v, dict):
            rows.append({c: Q(x) for c, x in v.items() if x})
        else:
            rows.append({c: Q(x) for c, x in enumerate(v) if x})
    return len(_eliminate(rows)[0])


def parse_rational(text):
    """Parse 'p/q' or 'p' into a Fraction (exact)."""
    if isinstance(text, int):
        return Q(text)
    s = str(text).strip()
    if "/" in s:
        p, q = s.split("/")
        return Q(int(p), int(q))
    return Q(int(s))


def format_rational(q):
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)
