"""Per-degree cohomology of CDGAs and SubCDGAs over the rationals.

Betti numbers come from exact kernel/rank computations on the boundary
matrices; representatives are kernel vectors reduced against a row-echelon
basis of the image, picked by lexicographically smallest support so output
is reproducible across runs.  Classes are coordinate vectors against the
chosen representatives; the cup product and powers of a class are computed
on representatives and projected back.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .gca import Element, EngineError


class HomologyError(EngineError):
    pass


def boundary_matrix(source, k):
    """Matrix of d from the degree-k basis to the degree-(k+1) basis.

    Columns follow the source basis order in degree k, rows the basis order
    in degree k+1.
    """
    cols = source.basis_elements(k)
    nrows = source.dim(k + 1)
    mat = [[Fraction(0)] * len(cols) for _ in range(nrows)]
    for j, b in enumerate(cols):
        db = source.d(b)
        if db.is_zero():
            continue
        coords = source.coords(k + 1, db)
        if coords is None:
            raise HomologyError(
                f"differential of basis element {b} leaves the complex"
            )
        for i, x in enumerate(coords):
            if x:
                mat[i][j] = x
    return mat


def _support_key(vec):
    support = tuple(i for i, x in enumerate(vec) if x)
    return support, tuple(vec[i] for i in support)


class _RowSpan:
    """Incrementally maintained reduced echelon span used for representatives."""

    def __init__(self):
        self.rows = []  # (pivot, dense row with pivot entry 1)

    def reduce(self, vec):
        v = list(vec)
        for piv, row in self.rows:
            f = v[piv]
            if f:
                for j, x in enumerate(row):
                    if x:
                        v[j] -= f * x
        return v

    def add(self, vec):
        v = self.reduce(vec)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = Fraction(1) / v[piv]
        v = [x * inv for x in v]
        for _, row in self.rows:
            f = row[piv]
            if f:
                for j, x in enumerate(v):
                    if x:
                        row[j] -= f * x
        self.rows.append((piv, v))
        self.rows.sort(key=lambda t: t[0])
        return True


class CohomologyClass:
    """A class in a fixed degree, as coordinates on the representative basis."""

    __slots__ = ("data", "degree", "coords")

    def __init__(self, data, degree, coords):
        self.data = data
        self.degree = degree
        self.coords = tuple(Fraction(c) for c in coords)

    def is_zero(self):
        return not any(self.coords)

    def representative(self):
        if self.degree > self.data.top:
            return Element.zero(self.data.source.gens)
        reps = self.data.representatives[self.degree]
        acc = Element.zero(self.data.source.gens)
        for c, rep in zip(self.coords, reps):
            if c:
                acc = acc + rep * c
        return acc

    def cup(self, other):
        return self.data.cup(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, CohomologyClass)
            and self.data is other.data
            and self.degree == other.degree
            and self.coords == other.coords
        )

    def __repr__(self):
        return f"<H^{self.degree} class {list(self.coords)}>"


class CohomologyData:
    """Betti numbers, representative cocycles and class coordinates."""

    def __init__(self, source, top):
        source.require_valid()
        self.source = source
        self.top = top
        if source.dim(0) != 1:
            raise HomologyError("source is not connected in degree 0")
        mats = [boundary_matrix(source, k) for k in range(top + 1)]
        self.betti = []
        self.representatives = []
        self._solvers = []
        prev_rank = 0
        prev_mat = None
        for k in range(top + 1):
            dim_k = source.dim(k)
            rank_k = linalg.rank(mats[k])
            b_k = dim_k - rank_k - prev_rank
            kernel = linalg.nullspace(mats[k], dim_k)
            image_cols = []
            if prev_mat is not None and prev_mat and prev_mat[0]:
                ncols_prev = len(prev_mat[0])
                raw = [
                    [prev_mat[i][j] for i in range(dim_k)] for j in range(ncols_prev)
                ]
                image_cols, _ = linalg.rref(raw, dim_k)
            span = _RowSpan()
            for row in image_cols:
                span.add(row)
            reps = []
            rep_vecs = []
            while len(reps) < b_k:
                best = None
                for v in kernel:
                    r = span.reduce(v)
                    if any(r):
                        key = _support_key(r)
                        if best is None or key < best[0]:
                            best = (key, r)
                if best is None:
                    raise HomologyError(
                        f"internal error: rank bookkeeping failed in degree {k}"
                    )
                piv = next(i for i, x in enumerate(best[1]) if x)
                inv = Fraction(1) / best[1][piv]
                vec = [x * inv for x in best[1]]
                rep_vecs.append(vec)
                span.add(vec)
                reps.append(_vector_to_element(source, k, vec))
            self.betti.append(b_k)
            self.representatives.append(reps)
            columns = rep_vecs + image_cols
            self._solvers.append(
                (len(reps), linalg.SpanSolver(columns) if columns else None)
            )
            prev_rank = rank_k
            prev_mat = mats[k]

    def class_of(self, element, degree=None):
        """Coordinates of a cocycle; the zero vector iff it is exact."""
        if element.is_zero():
            if degree is None:
                raise HomologyError(
                    "the zero element needs an explicit degree for its class"
                )
        else:
            actual = element.degree()
            if degree is not None and degree != actual:
                raise HomologyError(
                    f"element has degree {actual}, not the requested {degree}"
                )
            degree = actual
        if not 0 <= degree <= self.top:
            raise HomologyError(f"degree {degree} is outside 0..{self.top}")
        nreps, solver = self._solvers[degree]
        if element.is_zero():
            return CohomologyClass(self, degree, [Fraction(0)] * nreps)
        residue = self.source.d(element)
        if not residue.is_zero():
            raise HomologyError(f"not a cocycle: d gives {residue}")
        vec = self.source.coords(degree, element)
        if vec is None:
            raise HomologyError("element does not lie in the complex")
        coords = solver.coords(vec) if solver else []
        if coords is None:
            raise HomologyError("internal error: cocycle not in kernel span")
        return CohomologyClass(self, degree, coords[:nreps])

    def cup(self, c1, c2):
        """Class of the product of representatives."""
        if c1.data is not self or c2.data is not self:
            raise HomologyError("classes belong to a different cohomology")
        degree = c1.degree + c2.degree
        if degree > self.top:
            return CohomologyClass(self, degree, [])
        product = c1.representative() * c2.representative()
        return self.class_of(product, degree=degree)

    def class_power_index(self, cls, max_power):
        """Largest l <= max_power with the l-th cup power nonzero."""
        if cls.degree % 2:
            raise HomologyError("power index is defined for even-degree classes")
        if max_power < 0:
            raise HomologyError("max_power must be >= 0")
        if cls.is_zero():
            return 0
        limit = max_power
        if cls.degree > 0:
            limit = min(limit, self.top // cls.degree)
        rep = cls.representative()
        largest = 0
        acc = Element.unit(self.source.gens)
        for l in range(1, limit + 1):
            acc = acc * rep
            if self.class_of(acc, degree=l * cls.degree).is_zero():
                return largest
            largest = l
        return largest

    def summary_lines(self):
        """One line per degree in the CLI-facing format."""
        lines = []
        for k in range(self.top + 1):
            reps = ", ".join(str(r) for r in self.representatives[k])
            lines.append(f"H^{k}: dim={self.betti[k]}, reps=[{reps}]")
        return lines


def _vector_to_element(source, k, vec):
    basis = source.basis_elements(k)
    acc = Element.zero(source.gens)
    for x, b in zip(vec, basis):
        if x:
            acc = acc + b * x
    return acc


def cohomology(source, top=None):
    """Betti numbers and representatives of a CDGA or SubCDGA up to ``top``."""
    if top is None:
        top = source.natural_top()
    if top is None:
        raise HomologyError(
            "a top degree is required when even generators are present"
        )
    return CohomologyData(source, top)


def class_of(data, element, degree=None):
    return data.class_of(element, degree)


def cup(c1, c2):
    return c1.data.cup(c1, c2)


def class_power_index(cls, max_power):
    return cls.data.class_power_index(cls, max_power)
