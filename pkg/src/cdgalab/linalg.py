"""Exact linear algebra over the rationals.

Matrices are lists of rows of ``Fraction``.  Elimination keeps rows in
sparse dict form internally (the boundary matrices this package produces
are mostly zeros) and picks pivots by a smallest-denominator heuristic so
that results are deterministic and coefficient growth stays tame.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def _sparse_rows(mat):
    return [{j: x for j, x in enumerate(row) if x} for row in mat]


def _axpy(target, factor, source):
    """target -= factor * source, in place on sparse dict rows."""
    for j, x in source.items():
        v = target.get(j, ZERO) - factor * x
        if v:
            target[j] = v
        else:
            target.pop(j, None)


def _pivot_key(row, col, order):
    x = row[col]
    return (x.denominator, abs(x.numerator), order)


def rank(mat):
    """Rank by forward elimination; pivots chosen by smallest denominator."""
    rows = [r for r in _sparse_rows(mat) if r]
    rk = 0
    while rows:
        col = min(min(r) for r in rows)
        cands = [(i, r) for i, r in enumerate(rows) if col in r]
        i, piv = min(cands, key=lambda t: _pivot_key(t[1], col, t[0]))
        rows.pop(i)
        inv = ONE / piv[col]
        nxt = []
        for r in rows:
            f = r.get(col)
            if f:
                _axpy(r, f * inv, piv)
            if r:
                nxt.append(r)
        rows = nxt
        rk += 1
    return rk


def _rref_sparse(rows):
    """Fully reduced echelon form of sparse rows.

    Returns a list of (pivot column, row dict) sorted by pivot column; each
    pivot entry is 1 and is cleared from every other returned row.
    """
    rows = [dict(r) for r in rows if r]
    done = []
    while rows:
        col = min(min(r) for r in rows)
        cands = [(i, r) for i, r in enumerate(rows) if col in r]
        i, piv = min(cands, key=lambda t: _pivot_key(t[1], col, t[0]))
        rows.pop(i)
        inv = ONE / piv[col]
        if inv != ONE:
            piv = {j: x * inv for j, x in piv.items()}
        nxt = []
        for r in rows:
            f = r.get(col)
            if f:
                _axpy(r, f, piv)
            if r:
                nxt.append(r)
        rows = nxt
        for _, r in done:
            f = r.get(col)
            if f:
                _axpy(r, f, piv)
        done.append((col, piv))
    done.sort()
    return done


def rref(mat, ncols=None):
    """Reduced row echelon form.

    Returns (rows, pivot_columns) with the nonzero rows as dense lists.
    """
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    done = _rref_sparse(_sparse_rows(mat))
    rows = []
    for _, r in done:
        dense = [ZERO] * ncols
        for j, x in r.items():
            dense[j] = x
        rows.append(dense)
    return rows, [c for c, _ in done]


def nullspace(mat, ncols):
    """Deterministic kernel basis of an (nrows x ncols) matrix.

    One vector per free column, in ascending column order, with a 1 in the
    free slot; an empty matrix yields the standard basis.
    """
    done = _rref_sparse(_sparse_rows(mat))
    pivcols = {c for c, _ in done}
    basis = []
    for f in range(ncols):
        if f in pivcols:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for c, r in done:
            x = r.get(f)
            if x:
                v[c] = -x
        basis.append(v)
    return basis


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    if not a or not b:
        return []
    nb = len(b[0])
    out = []
    for row in a:
        acc = [ZERO] * nb
        for k, x in enumerate(row):
            if x:
                brow = b[k]
                for j in range(nb):
                    if brow[j]:
                        acc[j] += x * brow[j]
        out.append(acc)
    return out


def mat_inverse(mat):
    """Inverse of a square matrix, or None if singular."""
    n = len(mat)
    aug = [list(row) + ident for row, ident in zip(mat, identity(n))]
    rows, pivots = rref(aug, 2 * n)
    if len(rows) < n or pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in rows[:n]]


class SpanSolver:
    """Answers membership and coordinates in the span of fixed columns."""

    def __init__(self, columns):
        self.ncols = len(columns)
        # rows of [column^T | e_i] echelonized by pivot column; the right
        # block records how each row combines the original columns.  A row
        # only has entries at columns >= its pivot, so reducing a vector by
        # repeatedly clearing its smallest entry terminates and decides
        # membership.
        self._rows = {}  # pivot column -> (left dict, right dict)
        for i, col in enumerate(columns):
            left = {j: x for j, x in enumerate(col) if x}
            right = {i: ONE}
            left, right = self._reduce(left, right)
            if not left:
                raise ValueError("columns are linearly dependent")
            piv = min(left)
            inv = ONE / left[piv]
            if inv != ONE:
                left = {j: x * inv for j, x in left.items()}
                right = {j: x * inv for j, x in right.items()}
            self._rows[piv] = (left, right)

    def _reduce(self, left, right):
        while left:
            piv = min(left)
            row = self._rows.get(piv)
            if row is None:
                break
            f = left[piv]
            _axpy(left, f, row[0])
            _axpy(right, f, row[1])
        return left, right

    def coords(self, vector):
        """Coefficients expressing ``vector`` in the columns, or None."""
        left = {j: x for j, x in enumerate(vector) if x}
        right = {}
        left, right = self._reduce(left, right)
        if left:
            return None
        out = [ZERO] * self.ncols
        for i, x in right.items():
            out[i] = -x
        return out
