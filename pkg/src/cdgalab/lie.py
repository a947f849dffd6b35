"""Finite-dimensional Lie algebras by rational structure constants.

Brackets are stored on i < j pairs and antisymmetrized on input.  Besides
the usual invariants (Jacobi check, lower central series, derived algebra
and center) this module builds the dual differential complex of an algebra
and decides whether a nilpotent algebra splits as a Heisenberg algebra times
an abelian factor, which is exactly when the dual complex compresses to a
single non-closed generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cdga import CDGA, CdgaError
from .gca import Element, EngineError, GeneratorSet

ZERO = Fraction(0)
ONE = Fraction(1)


class LieError(EngineError):
    pass


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^m given by an ordered, independent basis."""

    ambient_dim: int
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)


def _echelon_subspace(ambient_dim, vectors):
    rows = [list(v) for v in vectors if any(v)]
    reduced, _ = linalg.rref(rows, ambient_dim) if rows else ([], [])
    return Subspace(ambient_dim, tuple(tuple(r) for r in reduced))


class LieAlgebraSpec:
    """Structure constants [e_i, e_j] = sum_k c_ij^k e_k with exact entries."""

    def __init__(self, dim, brackets=None, names=None):
        if not isinstance(dim, int) or dim < 0:
            raise LieError("dimension must be a non-negative integer")
        self.dim = dim
        if names is None:
            names = tuple(f"e{i + 1}" for i in range(dim))
        names = tuple(names)
        if len(names) != dim or len(set(names)) != dim:
            raise LieError("need one distinct name per basis vector")
        self.names = names
        table = {}
        for (i, j), comps in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise LieError(f"bracket index ({i}, {j}) out of range")
            vec = self._as_vector(comps)
            if i == j:
                if any(vec):
                    raise LieError(f"[e_{i + 1}, e_{i + 1}] must vanish")
                continue
            if i > j:
                i, j = j, i
                vec = [-x for x in vec]
            if (i, j) in table:
                if table[(i, j)] != tuple(vec):
                    raise LieError(
                        f"inconsistent duplicate bracket for ({i + 1}, {j + 1})"
                    )
                continue
            if any(vec):
                table[(i, j)] = tuple(vec)
        self.table = table

    def _as_vector(self, comps):
        vec = [ZERO] * self.dim
        if isinstance(comps, dict):
            items = comps.items()
        else:
            items = enumerate(comps)
        for k, c in items:
            if not 0 <= k < self.dim:
                raise LieError(f"component index {k} out of range")
            vec[k] = Fraction(c)
        return vec

    def basis_bracket(self, i, j):
        """[e_i, e_j] as a coefficient vector."""
        if i == j:
            return [ZERO] * self.dim
        if i < j:
            return list(self.table.get((i, j), (ZERO,) * self.dim))
        return [-x for x in self.table.get((j, i), (ZERO,) * self.dim)]

    def bracket(self, x, y):
        """Bracket of two coefficient vectors."""
        out = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for k, c in enumerate(self.basis_bracket(i, j)):
                    if c:
                        out[k] += xi * yj * c
        return out

    def __repr__(self):
        return f"<LieAlgebraSpec dim {self.dim}, {len(self.table)} brackets>"


@dataclass
class JacobiViolation:
    triple: tuple
    residue: list

    def __str__(self):
        i, j, k = self.triple
        return f"Jacobi fails on (e{i + 1}, e{j + 1}, e{k + 1}): residue {self.residue}"


def check_jacobi(spec):
    """None when the Jacobi identity holds, else the first violating triple."""
    m = spec.dim

    def basis_vec(i):
        return [ONE if t == i else ZERO for t in range(m)]

    for i in range(m):
        for j in range(i + 1, m):
            bij = spec.basis_bracket(i, j)
            for k in range(j + 1, m):
                first = spec.bracket(basis_vec(i), spec.basis_bracket(j, k))
                second = spec.bracket(basis_vec(j), spec.basis_bracket(k, i))
                third = spec.bracket(basis_vec(k), bij)
                residue = [a + b + c for a, b, c in zip(first, second, third)]
                if any(residue):
                    return JacobiViolation((i, j, k), residue)
    return None


def require_valid(spec):
    violation = check_jacobi(spec)
    if violation is not None:
        raise LieError(str(violation))


def lower_central_series(spec):
    """Subspaces g >= [g, g] >= [g, [g, g]] >= ... down to the stable term."""
    m = spec.dim
    full = Subspace(m, tuple(tuple(row) for row in linalg.identity(m)))
    series = [full]
    current = full
    while True:
        vectors = []
        for i in range(m):
            ei = [ONE if t == i else ZERO for t in range(m)]
            for v in current.basis:
                vectors.append(spec.bracket(ei, list(v)))
        nxt = _echelon_subspace(m, vectors)
        if nxt.basis == current.basis:
            break
        series.append(nxt)
        current = nxt
        if nxt.dim == 0:
            break
    return series


def is_nilpotent(spec):
    return lower_central_series(spec)[-1].dim == 0


def derived_and_center(spec):
    """The derived subalgebra and the center, both as echelonized subspaces."""
    m = spec.dim
    derived = _echelon_subspace(
        m, [spec.basis_bracket(i, j) for i in range(m) for j in range(i + 1, m)]
    )
    # center: kernel of x -> ([x, e_1], ..., [x, e_m]) stacked into one matrix
    rows = []
    for j in range(m):
        for k in range(m):
            rows.append([spec.basis_bracket(i, j)[k] for i in range(m)])
    kernel = linalg.nullspace(rows, m)
    return derived, Subspace(m, tuple(tuple(v) for v in kernel))


def classify_heisenberg_type(spec):
    """The Heisenberg index l when the algebra is nilpotent with derived
    dimension <= 1, else None.

    When the derived algebra vanishes the index is 0; when it is a line, the
    index is half the (even) rank of the skew form picking out the bracket
    coefficient on the derived generator.
    """
    require_valid(spec)
    if not is_nilpotent(spec):
        return None
    derived, _ = derived_and_center(spec)
    if derived.dim == 0:
        return 0
    if derived.dim > 1:
        return None
    w = derived.basis[0]
    lead = next(i for i, x in enumerate(w) if x)
    m = spec.dim
    skew = []
    for i in range(m):
        row = []
        for j in range(m):
            b = spec.basis_bracket(i, j)
            t = b[lead] / w[lead]
            if any(x - t * wx for x, wx in zip(b, w)):
                raise LieError("internal error: bracket outside the derived line")
            row.append(t)
        skew.append(row)
    rank = linalg.rank(skew)
    if rank % 2:
        raise LieError("internal error: skew form has odd rank")
    return rank // 2


def skew_normal_form(skew):
    """Hyperbolic pairs and a radical basis of a skew form over Q.

    Pivots are taken in lexicographic order on the current vector list and
    normalized so each pair (p, q) satisfies B(p, q) = 1; remaining vectors
    are corrected to be B-orthogonal to the pair.
    """
    m = len(skew)

    def form(x, y):
        acc = ZERO
        for i, xi in enumerate(x):
            if xi:
                row = skew[i]
                for j, yj in enumerate(y):
                    if yj and row[j]:
                        acc += xi * row[j] * yj
        return acc

    vectors = [list(row) for row in linalg.identity(m)]
    pairs = []
    while True:
        found = None
        for a in range(len(vectors)):
            for b in range(a + 1, len(vectors)):
                if form(vectors[a], vectors[b]):
                    found = (a, b)
                    break
            if found:
                break
        if found is None:
            break
        a, b = found
        p = vectors[a]
        val = form(p, vectors[b])
        q = [x / val for x in vectors[b]]
        rest = [v for t, v in enumerate(vectors) if t not in (a, b)]
        corrected = []
        for v in rest:
            fq = form(v, q)
            fp = form(v, p)
            corrected.append(
                [x - fq * px + fp * qx for x, px, qx in zip(v, p, q)]
            )
        pairs.append((p, q))
        vectors = corrected
    return pairs, vectors


def heisenberg_adapted_basis(spec):
    """Index l and a basis change aligning the algebra with its normal form.

    Returns (l, P) where the columns of P list hyperbolic pairs p_1..p_l,
    q_1..q_l, then the derived generator, then central complements; None when
    the algebra is not of Heisenberg-plus-abelian type.  For an already
    adapted algebra P is the identity.
    """
    l = classify_heisenberg_type(spec)
    if l is None:
        return None
    m = spec.dim
    if l == 0:
        return 0, linalg.identity(m)
    derived, _ = derived_and_center(spec)
    w = list(derived.basis[0])
    lead = next(i for i, x in enumerate(w) if x)
    skew = []
    for i in range(m):
        skew.append(
            [spec.basis_bracket(i, j)[lead] / w[lead] for j in range(m)]
        )
    pairs, radical = skew_normal_form(skew)
    if len(pairs) != l:
        raise LieError("internal error: skew rank disagrees with classifier")
    # put the derived generator first among the radical vectors
    solver = linalg.SpanSolver([list(v) for v in radical]) if radical else None
    coords = solver.coords(w) if solver else None
    if coords is None:
        raise LieError("internal error: derived generator outside the radical")
    swap = next(i for i, c in enumerate(coords) if c)
    others = [v for i, v in enumerate(radical) if i != swap]
    columns = [p for p, _ in pairs] + [q for _, q in pairs] + [w] + others
    p_matrix = [[columns[j][i] for j in range(m)] for i in range(m)]
    return l, p_matrix


def chevalley_eilenberg(spec):
    """The dual differential complex: m odd degree-1 generators with
    d a_k = -sum_{i<j} c_ij^k a_i a_j.  A Jacobi failure surfaces as a
    failing d^2 check naming the offending generator."""
    gens = GeneratorSet([(name, 1) for name in spec.names])
    diffs = {}
    for k, name in enumerate(spec.names):
        acc = Element.zero(gens)
        for (i, j), vec in sorted(spec.table.items()):
            c = vec[k]
            if c:
                mono = tuple(
                    1 if t in (i, j) else 0 for t in range(spec.dim)
                )
                acc = acc + Element.monomial(gens, mono, -c)
        if not acc.is_zero():
            diffs[name] = acc
    algebra = CDGA(gens, diffs)
    report = algebra.check_d_squared()
    if not report.ok:
        raise CdgaError(str(report))
    return algebra


def heisenberg_sum(l, r):
    """The (2l + 1 + r)-dimensional algebra with basis p_1..p_l, q_1..q_l, h,
    u_1..u_r and brackets [p_i, q_i] = h, everything else central."""
    if l < 0 or r < 0:
        raise LieError("heisenberg_sum takes non-negative arguments")
    names = (
        [f"p{i + 1}" for i in range(l)]
        + [f"q{i + 1}" for i in range(l)]
        + ["h"]
        + [f"u{i + 1}" for i in range(r)]
    )
    brackets = {(i, l + i): {2 * l: ONE} for i in range(l)}
    return LieAlgebraSpec(2 * l + 1 + r, brackets, names)


def change_basis(spec, p_matrix):
    """Transport structure constants along an invertible matrix whose columns
    are the new basis vectors in old coordinates."""
    m = spec.dim
    if len(p_matrix) != m or any(len(row) != m for row in p_matrix):
        raise LieError("basis change matrix has the wrong shape")
    p = [[Fraction(x) for x in row] for row in p_matrix]
    inv = linalg.mat_inverse(p)
    if inv is None:
        raise LieError("basis change matrix is singular")
    columns = [[p[i][j] for i in range(m)] for j in range(m)]
    brackets = {}
    for i in range(m):
        for j in range(i + 1, m):
            old = spec.bracket(columns[i], columns[j])
            new = [
                sum(inv[k][t] * old[t] for t in range(m)) for k in range(m)
            ]
            if any(new):
                brackets[(i, j)] = {k: c for k, c in enumerate(new) if c}
    return LieAlgebraSpec(m, brackets)
