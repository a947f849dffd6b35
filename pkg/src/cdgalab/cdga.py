"""Differential graded structure on top of the free algebra core.

A :class:`CDGA` is a generator set plus a degree +1 differential given on
generators and extended by the graded Leibniz rule; ``d(d(g)) = 0`` on
generators is checked once and cached, which suffices for the whole algebra.
:class:`Derivation` covers the degree -1 contractions and the degree 0
operators obtained as graded commutators.  A :class:`SubCDGA` stores explicit
per-degree bases of a d-stable subspace of an ambient CDGA, which is what all
the downstream linear algebra consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .gca import Element, EngineError, GcaError, GeneratorSet, parse_element


class CdgaError(EngineError):
    pass


def _leibniz_apply(gens, op_degree, values, element):
    """Extend a generator assignment to ``element`` by the graded Leibniz rule.

    ``values`` maps generator name -> Element (missing means zero).  Each
    slot of a monomial contributes with sign (-1)^(op_degree * prefix degree).
    """
    out = Element.zero(gens)
    names = gens.names
    degrees = gens.degrees
    n = len(gens)
    for mono, coeff in element.terms.items():
        prefix = [0] * n
        prefix_deg = 0
        for i in range(n):
            e = mono[i]
            if not e:
                continue
            val = values.get(names[i])
            for _ in range(e):
                if val is not None and not val.is_zero():
                    suffix = list(mono)
                    for j in range(i):
                        suffix[j] -= prefix[j]
                    suffix[i] -= prefix[i] + 1
                    sign = -1 if (op_degree * prefix_deg) % 2 else 1
                    term = (
                        Element.monomial(gens, tuple(prefix), coeff * sign)
                        * val
                        * Element.monomial(gens, tuple(suffix), 1)
                    )
                    out = out + term
                prefix[i] += 1
                prefix_deg += degrees[i]
    return out


@dataclass
class DSquaredReport:
    """Outcome of checking d(d(g)) = 0 on every generator."""

    ok: bool
    failures: list  # (generator name, nonzero residue Element)

    def __str__(self):
        if self.ok:
            return "d^2 = 0 on all generators"
        parts = ", ".join(f"d(d({g})) = {r}" for g, r in self.failures)
        return f"d^2 != 0: {parts}"


class CDGA:
    """A free graded-commutative algebra with a generator-level differential."""

    def __init__(self, gens, differentials=None):
        self.gens = gens
        d_values = {}
        for name, value in (differentials or {}).items():
            idx = gens.index_of(name)
            if value.gens != gens:
                raise CdgaError(
                    f"differential of {name!r} is over a different generator set"
                )
            if value.is_zero():
                continue
            deg = value.degree()
            if deg != gens.degrees[idx] + 1:
                raise CdgaError(
                    f"d({name}) must be homogeneous of degree"
                    f" {gens.degrees[idx] + 1}, got {value}"
                )
            d_values[name] = value
        self.d_values = d_values
        self._d2_report = None

    @classmethod
    def from_pairs(cls, generator_pairs, differential_texts=None):
        """Build from (name, degree) pairs and textual differentials."""
        gens = GeneratorSet(generator_pairs)
        diffs = {
            name: parse_element(gens, text)
            for name, text in (differential_texts or {}).items()
        }
        return cls(gens, diffs)

    def zero(self):
        return Element.zero(self.gens)

    def unit(self):
        return Element.unit(self.gens)

    def generator(self, name):
        return Element.generator(self.gens, name)

    def element(self, text):
        return parse_element(self.gens, text)

    def d_of_generator(self, name):
        self.gens.index_of(name)
        return self.d_values.get(name, Element.zero(self.gens))

    def d(self, element):
        if element.gens != self.gens:
            raise CdgaError("element is over a different generator set")
        return _leibniz_apply(self.gens, 1, self.d_values, element)

    def differential(self):
        return Derivation(self, 1, self.d_values)

    def check_d_squared(self):
        """Verify d(d(g)) = 0 for every generator; the result is cached."""
        if self._d2_report is None:
            failures = []
            for name in self.gens.names:
                residue = self.d(self.d_of_generator(name))
                if not residue.is_zero():
                    failures.append((name, residue))
            self._d2_report = DSquaredReport(not failures, failures)
        return self._d2_report

    def require_valid(self):
        report = self.check_d_squared()
        if not report.ok:
            raise CdgaError(str(report))

    def natural_top(self):
        """Top nonzero degree when all generators are odd, else None."""
        return self.gens.total_degree() if self.gens.all_odd() else None

    def dim(self, k):
        return len(self.gens.degree_basis(k))

    def basis_elements(self, k):
        return [Element.monomial(self.gens, m, 1) for m in self.gens.degree_basis(k)]

    def coords(self, k, element):
        """Coefficient vector of a homogeneous degree-k element."""
        basis = self.gens.degree_basis(k)
        index = {m: i for i, m in enumerate(basis)}
        out = [Fraction(0)] * len(basis)
        for mono, coeff in element.terms.items():
            i = index.get(mono)
            if i is None:
                return None
            out[i] = coeff
        return out

    def __repr__(self):
        return f"<CDGA on {', '.join(self.gens.names)}>"


def apply_differential(cdga, element):
    return cdga.d(element)


class Derivation:
    """A degree-k derivation of a CDGA, fixed by its generator values."""

    def __init__(self, cdga, degree, values=None):
        self.cdga = cdga
        self.degree = degree
        gens = cdga.gens
        clean = {}
        for name, value in (values or {}).items():
            idx = gens.index_of(name)
            if value.gens != gens:
                raise CdgaError(
                    f"derivation value on {name!r} is over a different generator set"
                )
            if value.is_zero():
                continue
            if value.degree() != gens.degrees[idx] + degree:
                raise CdgaError(
                    f"derivation value on {name!r} must have degree"
                    f" {gens.degrees[idx] + degree}, got {value}"
                )
            clean[name] = value
        self.values = clean

    def value_on(self, name):
        self.cdga.gens.index_of(name)
        return self.values.get(name, Element.zero(self.cdga.gens))

    def __call__(self, element):
        if element.gens != self.cdga.gens:
            raise CdgaError("element is over a different generator set")
        return _leibniz_apply(self.cdga.gens, self.degree, self.values, element)

    def is_zero_on_generators(self):
        return not self.values

    def __repr__(self):
        return f"<Derivation degree {self.degree} on {len(self.values)} generators>"


def apply_derivation(derivation, element):
    return derivation(element)


def graded_commutator(d1, d2):
    """[D1, D2] = D1 D2 - (-1)^(k l) D2 D1, itself a derivation."""
    if d1.cdga is not d2.cdga and d1.cdga.gens != d2.cdga.gens:
        raise CdgaError("derivations live on different CDGAs")
    sign = -1 if (d1.degree * d2.degree) % 2 else 1
    values = {}
    for name in d1.cdga.gens.names:
        gen = d1.cdga.generator(name)
        value = d1(d2(gen)) - sign * d2(d1(gen))
        if not value.is_zero():
            values[name] = value
    return Derivation(d1.cdga, d1.degree + d2.degree, values)


def contraction_dual_to(cdga, name):
    """The degree -1 derivation pairing the named degree-1 generator to 1."""
    idx = cdga.gens.index_of(name)
    if cdga.gens.degrees[idx] != 1:
        raise CdgaError(f"contraction pairs a degree-1 generator, {name!r} is not")
    return Derivation(cdga, -1, {name: cdga.unit()})


class ContractionFamily:
    """Degree -1 derivations for the basis directions of an abelian algebra.

    Construction verifies that every contraction squares to zero and that all
    pairs anticommute; with ``invariant=True`` each commutator with the
    differential must also kill every generator.
    """

    def __init__(self, cdga, contractions, invariant=True, top=None):
        self.cdga = cdga
        self.contractions = list(contractions)
        self.invariant = invariant
        if top is None:
            top = cdga.natural_top()
        if top is None:
            raise CdgaError(
                "a top degree is required when even generators are present"
            )
        self.top = top
        gens = cdga.gens
        for pos, D in enumerate(self.contractions):
            if D.degree != -1:
                raise CdgaError(f"contraction #{pos} has degree {D.degree}, not -1")
            for name, value in D.values.items():
                if gens.degrees[gens.index_of(name)] != 1 and not value.is_zero():
                    raise CdgaError(
                        f"contraction #{pos} must vanish on generators of degree"
                        f" >= 2, but acts on {name!r}"
                    )
        self._verify()

    def _verify(self):
        ds = self.contractions
        for pos, D in enumerate(ds):
            for k in range(self.top + 1):
                for b in self.cdga.basis_elements(k):
                    if not D(D(b)).is_zero():
                        raise CdgaError(
                            f"contraction #{pos} does not square to zero on {b}"
                        )
        for a in range(len(ds)):
            for b in range(a + 1, len(ds)):
                comm = graded_commutator(ds[a], ds[b])
                if not comm.is_zero_on_generators():
                    raise CdgaError(
                        f"contractions #{a} and #{b} do not anticommute"
                    )
        if self.invariant:
            d = self.cdga.differential()
            for pos, D in enumerate(ds):
                lie = graded_commutator(D, d)
                if not lie.is_zero_on_generators():
                    raise CdgaError(
                        f"[contraction #{pos}, d] is nonzero although the family"
                        " was declared invariant"
                    )

    def lie_operator(self, pos):
        return graded_commutator(self.contractions[pos], self.cdga.differential())


class SubCDGA:
    """A d-stable, per-degree subspace of an ambient CDGA with ordered bases."""

    def __init__(self, ambient, bases, top):
        self.ambient = ambient
        self.top = top
        self.bases = [list(bases[k]) if k < len(bases) else [] for k in range(top + 1)]
        self._solvers = {}

    @property
    def gens(self):
        return self.ambient.gens

    def natural_top(self):
        return self.top

    def dim(self, k):
        return len(self.bases[k]) if 0 <= k <= self.top else 0

    def basis_elements(self, k):
        return list(self.bases[k]) if 0 <= k <= self.top else []

    def d(self, element):
        return self.ambient.d(element)

    def unit(self):
        return self.ambient.unit()

    def element(self, text):
        return self.ambient.element(text)

    def require_valid(self):
        self.ambient.require_valid()

    def _solver(self, k):
        if k not in self._solvers:
            columns = [self.ambient.coords(k, b) for b in self.bases[k]]
            self._solvers[k] = linalg.SpanSolver(columns) if columns else None
        return self._solvers[k]

    def coords(self, k, element):
        """Coordinates of an ambient element in the degree-k basis, or None."""
        if element.is_zero():
            return [Fraction(0)] * self.dim(k)
        if not (0 <= k <= self.top):
            return None
        ambient_coords = self.ambient.coords(k, element)
        if ambient_coords is None:
            return None
        solver = self._solver(k)
        if solver is None:
            return None
        return solver.coords(ambient_coords)

    def contains(self, element):
        parts = element.homogeneous_components()
        return all(self.coords(k, part) is not None for k, part in parts.items())

    def __repr__(self):
        dims = ", ".join(str(self.dim(k)) for k in range(self.top + 1))
        return f"<SubCDGA dims [{dims}]>"


def make_subcdga(ambient, bases, top=None):
    """Validate per-degree bases and assemble a SubCDGA.

    Checks homogeneity, linear independence, that degree 0 is spanned by the
    unit, and d-stability; the first basis element whose differential leaves
    the span of the next degree is reported.
    """
    if top is None:
        top = max(len(bases) - 1, 0)
    listed = [list(bases[k]) if k < len(bases) else [] for k in range(top + 1)]
    for k, basis in enumerate(listed):
        for b in basis:
            if b.gens != ambient.gens:
                raise CdgaError("basis element over a different generator set")
            if b.is_zero():
                raise CdgaError(f"zero element listed in degree-{k} basis")
            if not b.is_homogeneous():
                raise CdgaError(f"basis element {b} is not homogeneous")
            if b.degree() != k:
                raise CdgaError(
                    f"element {b} listed in degree {k} has degree {b.degree()}"
                )
    if len(listed[0]) != 1:
        raise CdgaError("degree-0 basis must consist of the unit alone")
    # accept any nonzero multiple of the unit, store normalized
    listed[0] = [ambient.unit()]
    sub = SubCDGA(ambient, listed, top)
    for k in range(top + 1):
        if listed[k]:
            try:
                sub._solver(k)
            except ValueError:
                raise CdgaError(
                    f"degree-{k} basis elements are linearly dependent"
                ) from None
    for k in range(top + 1):
        for b in listed[k]:
            db = ambient.d(b)
            if db.is_zero():
                continue
            if k == top or sub.coords(k + 1, db) is None:
                raise CdgaError(
                    f"not d-stable: d({b}) = {db} leaves the degree-{k + 1} span"
                )
    return sub


def kernel_subcdga(ambient, derivations, top=None):
    """The joint kernel of degree -1 derivations, as a SubCDGA.

    Every derivation must commute with d (graded commutator zero), which
    makes the kernel d-stable.
    """
    if top is None:
        top = ambient.natural_top()
    if top is None:
        raise CdgaError("a top degree is required when even generators are present")
    d = ambient.differential()
    for pos, D in enumerate(derivations):
        if D.degree != -1:
            raise CdgaError(f"derivation #{pos} has degree {D.degree}, not -1")
        comm = graded_commutator(D, d)
        if not comm.is_zero_on_generators():
            raise CdgaError(
                f"derivation #{pos} does not commute with d;"
                " its kernel need not be d-stable"
            )
    bases = []
    for k in range(top + 1):
        basis_elems = ambient.basis_elements(k)
        if not derivations or k == 0:
            bases.append(basis_elems)
            continue
        per_target = len(ambient.gens.degree_basis(k - 1))
        matrix = []
        for D in derivations:
            block = [[Fraction(0)] * len(basis_elems) for _ in range(per_target)]
            for j, b in enumerate(basis_elems):
                img = D(b)
                if img.is_zero():
                    continue
                col = ambient.coords(k - 1, img)
                for i, x in enumerate(col):
                    if x:
                        block[i][j] = x
            matrix.extend(block)
        kernel = linalg.nullspace(matrix, len(basis_elems))
        elems = []
        for vec in kernel:
            acc = Element.zero(ambient.gens)
            for j, x in enumerate(vec):
                if x:
                    acc = acc + basis_elems[j] * x
            elems.append(acc)
        bases.append(elems)
    return make_subcdga(ambient, bases, top)
