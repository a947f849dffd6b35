"""Model constructions on top of the CDGA engine.

The pieces here fit together as follows: a Hirsch extension adjoins odd
generators whose differentials land on cocycles of a base; an almost-formal
presentation is a zero-differential subalgebra together with a distinguished
degree-2 element whose power index is the model's invariant; the kernel of a
degree -1 derivation paired against a degree-1 element splits a CDGA as an
extension of that kernel, with an explicit inverse; invariant subcomplexes
of finite-order automorphisms feed the mapping-torus construction; and
quasi-isomorphism checking compares induced maps on cohomology degree by
degree, all in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cdga import (
    CDGA,
    CdgaError,
    Derivation,
    SubCDGA,
    graded_commutator,
    kernel_subcdga,
    make_subcdga,
)
from .gca import Element, EngineError, GeneratorSet
from .homology import cohomology
from .lie import chevalley_eilenberg, heisenberg_adapted_basis, heisenberg_sum


class ModelError(EngineError):
    pass


@dataclass
class HirschData:
    """A base (CDGA or SubCDGA) plus new odd generators mapped to cocycles.

    Each extension entry is (name, degree, image); the image must be a
    cocycle of the base of degree one more than the new generator.
    """

    base: object
    extensions: list

    def validate(self):
        base = self.base
        taken = set(base.gens.names)
        for name, degree, image in self.extensions:
            if name in taken:
                raise ModelError(f"generator name {name!r} collides")
            taken.add(name)
            if degree % 2 == 0 or degree < 1:
                raise ModelError(
                    f"new generator {name!r} must have odd positive degree"
                )
            if not image.is_zero():
                if image.degree() != degree + 1:
                    raise ModelError(
                        f"image of {name!r} must have degree {degree + 1}"
                    )
                if not base.d(image).is_zero():
                    raise ModelError(
                        f"image of {name!r} is not a cocycle:"
                        f" d gives {base.d(image)}"
                    )
                if isinstance(base, SubCDGA) and not base.contains(image):
                    raise ModelError(
                        f"image of {name!r} lies outside the base subcomplex"
                    )


def _check_product_closure(sub):
    """Every pairwise product of basis elements must stay in the span."""
    for k1 in range(sub.top + 1):
        for b1 in sub.basis_elements(k1):
            for k2 in range(k1, sub.top + 1):
                for b2 in sub.basis_elements(k2):
                    prod = b1 * b2
                    if prod.is_zero():
                        continue
                    k = k1 + k2
                    if k > sub.top or sub.coords(k, prod) is None:
                        raise ModelError(
                            f"basis is not product-closed: {b1} * {b2} = {prod}"
                            " leaves the span"
                        )


def hirsch_extend(data):
    """Adjoin the new generators with d(new) = image.

    A CDGA base yields a CDGA with the generators appended.  A SubCDGA base
    must be product-closed; the result is the subcomplex of the extended
    ambient algebra spanned, per degree, by the old basis times the unit and
    the new generators (old basis first, then, for each new generator in
    order, the shifted copies).
    """
    data.validate()
    base = data.base
    if isinstance(base, CDGA):
        pairs = list(zip(base.gens.names, base.gens.degrees)) + [
            (name, degree) for name, degree, _ in data.extensions
        ]
        gens = GeneratorSet(pairs)
        diffs = {
            name: value.embedded_in(gens) for name, value in base.d_values.items()
        }
        for name, _, image in data.extensions:
            if not image.is_zero():
                diffs[name] = image.embedded_in(gens)
        out = CDGA(gens, diffs)
        out.require_valid()
        return out

    _check_product_closure(base)
    ambient = base.ambient
    pairs = list(zip(ambient.gens.names, ambient.gens.degrees)) + [
        (name, degree) for name, degree, _ in data.extensions
    ]
    gens = GeneratorSet(pairs)
    diffs = {
        name: value.embedded_in(gens) for name, value in ambient.d_values.items()
    }
    for name, _, image in data.extensions:
        if not image.is_zero():
            diffs[name] = image.embedded_in(gens)
    big = CDGA(gens, diffs)
    big.require_valid()
    bases = [[b.embedded_in(gens) for b in base.basis_elements(k)]
             for k in range(base.top + 1)]
    top = base.top
    for name, degree, _ in data.extensions:
        y = big.generator(name)
        new_top = top + degree
        grown = []
        for k in range(new_top + 1):
            level = list(bases[k]) if k <= top else []
            if 0 <= k - degree <= top:
                level += [b * y for b in bases[k - degree]]
            grown.append(level)
        bases = grown
        top = new_top
    return make_subcdga(big, bases, top)


@dataclass
class AlmostFormalPresentation:
    """A zero-differential connected part, a degree-2 element z of it, and
    the name of the single extension generator y with d(y) = z."""

    closed_part: SubCDGA
    z: Element
    y_name: str
    basis_change: list = None  # optional: columns adapting the original basis

    def __post_init__(self):
        part = self.closed_part
        for k in range(part.top + 1):
            for b in part.basis_elements(k):
                if not part.d(b).is_zero():
                    raise ModelError(
                        f"the closed part has a non-closed basis element {b}"
                    )
        if part.dim(0) != 1:
            raise ModelError("the closed part must be connected")
        if not self.z.is_zero():
            if self.z.degree() != 2:
                raise ModelError("z must be homogeneous of degree 2")
            if not part.contains(self.z):
                raise ModelError("z must lie in the closed part")
        part.ambient.gens.index_of(self.y_name)

    def ambient(self):
        return self.closed_part.ambient


def almost_formal_index(presentation, max_power=None):
    """Largest l with z^l nonzero; zero differential makes element powers
    agree with class powers."""
    z = presentation.z
    if z.is_zero():
        return 0
    if max_power is None:
        top = presentation.closed_part.top
        max_power = top // 2
    power = Element.unit(z.gens)
    largest = 0
    for l in range(1, max_power + 1):
        power = power * z
        if power.is_zero():
            return largest
        largest = l
    return largest


def ce_almost_formal_presentation(spec):
    """Build the compressed presentation of the dual complex of a nilpotent
    Lie algebra, or None when no such presentation exists.

    The output lives on the dual complex of the adapted basis (hyperbolic
    pairs first, then the derived generator, then central directions), whose
    generator set carries canonical names p1.., q1.., h, u1..; for an abelian
    algebra the last generator plays the role of y and z = 0.
    """
    adapted = heisenberg_adapted_basis(spec)
    if adapted is None:
        return None
    l, p_matrix = adapted
    m = spec.dim
    if m == 0:
        raise ModelError("the zero algebra has no extension generator")
    if l == 0:
        algebra = chevalley_eilenberg(spec)
        y_index = m - 1
        y_name = spec.names[y_index]
        z = Element.zero(algebra.gens)
    else:
        algebra = chevalley_eilenberg(heisenberg_sum(l, m - 2 * l - 1))
        y_index = 2 * l
        y_name = "h"
        z = algebra.d_of_generator("h")
    bases = []
    for k in range(m):
        level = [
            Element.monomial(algebra.gens, mono, 1)
            for mono in algebra.gens.degree_basis(k)
            if mono[y_index] == 0
        ]
        bases.append(level)
    closed = make_subcdga(algebra, bases, m - 1)
    return AlmostFormalPresentation(closed, z, y_name, basis_change=p_matrix)


class MorphismSpec:
    """A CDGA morphism out of a free source, fixed on generators."""

    def __init__(self, source, target, assignment):
        self.source = source
        self.target = target
        self.assignment = {}
        tgens = target.gens
        for name, value in assignment.items():
            idx = source.gens.index_of(name)
            if value.gens != tgens:
                raise ModelError(
                    f"image of {name!r} is not over the target's generators"
                )
            if not value.is_zero() and value.degree() != source.gens.degrees[idx]:
                raise ModelError(
                    f"image of {name!r} must preserve degree"
                    f" {source.gens.degrees[idx]}"
                )
            self.assignment[name] = value
        for name in source.gens.names:
            if name not in self.assignment:
                raise ModelError(f"no image given for generator {name!r}")
        if isinstance(target, SubCDGA):
            for name, value in self.assignment.items():
                if not value.is_zero() and not target.contains(value):
                    raise ModelError(
                        f"image of {name!r} lies outside the target subcomplex"
                    )

    def apply(self, element):
        """Multiplicative extension to an arbitrary source element."""
        if element.gens != self.source.gens:
            raise ModelError("element is not over the source generators")
        tgens = self.target.gens
        out = Element.zero(tgens)
        names = self.source.gens.names
        for mono, coeff in element.terms.items():
            acc = Element.unit(tgens) * coeff
            for i, e in enumerate(mono):
                for _ in range(e):
                    acc = acc * self.assignment[names[i]]
                    if acc.is_zero():
                        break
                if acc.is_zero():
                    break
            out = out + acc
        return out

    def verify_chain_map(self):
        """d o f = f o d, checked on generators (enough by Leibniz)."""
        for name in self.source.gens.names:
            lhs = self.apply(self.source.d_of_generator(name))
            rhs = self.target.d(self.apply(self.source.generator(name)))
            if lhs != rhs:
                raise ModelError(
                    f"not a chain map on {name!r}: f(dg) = {lhs} but"
                    f" d(f(g)) = {rhs}"
                )

    def compose_self(self, times):
        """Iterated self-composition; source and target must coincide."""
        assignment = {
            name: self.source.generator(name) for name in self.source.gens.names
        }
        for _ in range(times):
            assignment = {
                name: self.apply(value) for name, value in assignment.items()
            }
        return assignment


class AutomorphismSpec(MorphismSpec):
    """A finite-order chain automorphism of a CDGA, given on generators."""

    def __init__(self, source, assignment, order):
        if order < 1:
            raise ModelError("order must be at least 1")
        super().__init__(source, source, assignment)
        self.order = order
        self.verify_chain_map()
        final = self.compose_self(order)
        for name, value in final.items():
            if value != source.generator(name):
                raise ModelError(
                    f"declared order {order} fails: the composite sends"
                    f" {name} to {value}"
                )


class LinearChainMap:
    """A linear map between complexes given per degree on basis elements."""

    def __init__(self, source, target, images, top):
        self.source = source
        self.target = target
        self.top = top
        self.images = images
        for k in range(top + 1):
            if len(images[k]) != source.dim(k):
                raise ModelError(
                    f"degree {k}: expected {source.dim(k)} images,"
                    f" got {len(images[k])}"
                )
            for img in images[k]:
                if not img.is_zero() and img.degree() != k:
                    raise ModelError(f"degree {k}: image {img} has wrong degree")

    def apply(self, element):
        """Apply to a homogeneous source element via basis coordinates."""
        if element.is_zero():
            return Element.zero(self.target.gens)
        k = element.degree()
        if k > self.top:
            raise ModelError(f"degree {k} beyond the map's top {self.top}")
        coords = self.source.coords(k, element)
        if coords is None:
            raise ModelError("element does not lie in the source complex")
        acc = Element.zero(self.target.gens)
        for c, img in zip(coords, self.images[k]):
            if c:
                acc = acc + img * c
        return acc

    def verify_chain_map(self):
        for k in range(self.top):
            for b, img in zip(self.source.basis_elements(k), self.images[k]):
                lhs = self.apply(self.source.d(b))
                rhs = self.target.d(img)
                if lhs != rhs:
                    raise ModelError(
                        f"not a chain map on {b}: f(db) = {lhs},"
                        f" d(f(b)) = {rhs}"
                    )


def inclusion_map(sub, top=None):
    """The inclusion of a SubCDGA into its ambient CDGA as a chain map."""
    if top is None:
        top = sub.top
    images = [sub.basis_elements(k) for k in range(top + 1)]
    return LinearChainMap(sub, sub.ambient, images, top)


def invariant_subcomplex(algebra, automorphism, top=None):
    """Per-degree kernel of (f - id) for a finite-order chain automorphism."""
    if automorphism.source is not algebra and automorphism.source.gens != algebra.gens:
        raise ModelError("automorphism does not act on the given algebra")
    if top is None:
        top = algebra.natural_top()
    if top is None:
        raise ModelError("a top degree is required when even generators are present")
    bases = []
    for k in range(top + 1):
        basis = algebra.basis_elements(k)
        mat = [[Fraction(0)] * len(basis) for _ in range(len(basis))]
        for j, b in enumerate(basis):
            diff = automorphism.apply(b) - b
            if diff.is_zero():
                continue
            col = algebra.coords(k, diff)
            for i, x in enumerate(col):
                if x:
                    mat[i][j] = x
        kernel = linalg.nullspace(mat, len(basis))
        level = []
        for vec in kernel:
            acc = Element.zero(algebra.gens)
            for x, b in zip(vec, basis):
                if x:
                    acc = acc + b * x
            level.append(acc)
        bases.append(level)
    return make_subcdga(algebra, bases, top)


def mapping_torus_model(invariant_part, y_name):
    """Adjoin a closed odd generator to an invariant subcomplex (or CDGA)."""
    zero = Element.zero(invariant_part.gens)
    return hirsch_extend(HirschData(invariant_part, [(y_name, 1, zero)]))


@dataclass
class DecompositionResult:
    """Outcome of splitting off a degree-1 direction along a contraction."""

    kernel: SubCDGA
    model: SubCDGA
    iso: LinearChainMap       # model -> original algebra
    inverse: LinearChainMap   # original algebra -> model
    y_name: str


def chevalley_decompose(algebra, contraction, eta, y_name="y", top=None):
    """Split ``algebra`` as (ker D) tensor a line on y with d(y) = d(eta).

    Requires D of degree -1 with D^2 = 0, [D, d] = 0 and D(eta) = 1.  The
    isomorphism sends a + b*y to a + b*eta; its inverse sends b to
    D(eta*b) + (-1)^(k-1) D(b)*y in degree k.  Both directions are verified
    to be mutually inverse chain maps on every basis element up to ``top``.
    """
    if top is None:
        top = algebra.natural_top()
    if top is None:
        raise ModelError("a top degree is required when even generators are present")
    if contraction.degree != -1:
        raise ModelError("the contraction must have degree -1")
    for name in algebra.gens.names:
        res = contraction(contraction(algebra.generator(name)))
        if not res.is_zero():
            raise ModelError(f"D^2 is nonzero on {name!r}: {res}")
    comm = graded_commutator(contraction, algebra.differential())
    if not comm.is_zero_on_generators():
        raise ModelError("[D, d] must vanish")
    if eta.is_zero() or eta.degree() != 1:
        raise ModelError("eta must be homogeneous of degree 1")
    d_eta_pairing = contraction(eta)
    if d_eta_pairing != algebra.unit():
        raise ModelError(f"D(eta) must be 1, got {d_eta_pairing}")
    kernel = kernel_subcdga(algebra, [contraction], top)
    d_eta = algebra.d(eta)
    name = y_name
    counter = 0
    while name in algebra.gens.names:
        counter += 1
        name = f"{y_name}{counter}"
    model = hirsch_extend(HirschData(kernel, [(name, 1, d_eta)]))
    big = model.ambient

    iso_images = []
    for k in range(model.top + 1):
        level = list(kernel.basis_elements(k)) if k <= kernel.top else []
        if 0 <= k - 1 <= kernel.top:
            level += [b * eta for b in kernel.basis_elements(k - 1)]
        iso_images.append(level)
    iso = LinearChainMap(model, algebra, iso_images, model.top)

    y_elem = big.generator(name)
    inverse_images = []
    for k in range(model.top + 1):
        level = []
        for b in algebra.basis_elements(k):
            main = contraction(eta * b).embedded_in(big.gens)
            tail = contraction(b)
            img = main
            if not tail.is_zero():
                sign = 1 if (k - 1) % 2 == 0 else -1
                img = img + tail.embedded_in(big.gens) * y_elem * sign
            level.append(img)
        inverse_images.append(level)
    inverse = LinearChainMap(algebra, model, inverse_images, model.top)

    iso.verify_chain_map()
    inverse.verify_chain_map()
    for k in range(model.top + 1):
        for b in model.basis_elements(k):
            back = inverse.apply(iso.apply(b))
            if back != b:
                raise ModelError(
                    f"inverse o iso is not the identity on {b}: got {back}"
                )
        for b in algebra.basis_elements(k):
            back = iso.apply(inverse.apply(b))
            if back != b:
                raise ModelError(
                    f"iso o inverse is not the identity on {b}: got {back}"
                )
    return DecompositionResult(kernel, model, iso, inverse, name)


@dataclass
class DegreeVerdict:
    degree: int
    source_dim: int
    target_dim: int
    rank: int

    @property
    def bijective(self):
        return self.source_dim == self.target_dim == self.rank


@dataclass
class QuasiIsoReport:
    is_quasi_iso: bool
    degrees: list  # DegreeVerdict per degree
    matrices: list  # induced map on cohomology per degree

    def lines(self):
        out = [f"QISO: {'yes' if self.is_quasi_iso else 'no'}"]
        for v in self.degrees:
            out.append(
                f"H^{v.degree}: {v.source_dim} -> {v.target_dim}"
                f" rank={v.rank} bijective={'yes' if v.bijective else 'no'}"
            )
        return out


def check_quasi_iso(morphism, top=None):
    """Exact induced maps on cohomology and a per-degree bijectivity verdict."""
    source, target = morphism.source, morphism.target
    if top is None:
        tops = [source.natural_top(), target.natural_top()]
        finite = [t for t in tops if t is not None]
        if not finite:
            raise ModelError("a top degree is required")
        top = min(finite)
    morphism.verify_chain_map()
    h_source = cohomology(source, top)
    h_target = cohomology(target, top)
    verdicts = []
    matrices = []
    ok = True
    for k in range(top + 1):
        cols = []
        for rep in h_source.representatives[k]:
            image = morphism.apply(rep)
            cls = h_target.class_of(image, degree=k)
            cols.append(list(cls.coords))
        nrows = h_target.betti[k]
        mat = [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]
        rank = linalg.rank(mat)
        verdict = DegreeVerdict(k, h_source.betti[k], h_target.betti[k], rank)
        ok = ok and verdict.bijective
        verdicts.append(verdict)
        matrices.append(mat)
    return QuasiIsoReport(ok, verdicts, matrices)


@dataclass
class RankResult:
    """Largest p with (d eta)^p nonzero, reported as an odd rank 2p + 1."""

    p: int
    rank: int
    eta_wedge_nonzero: bool


def rank_of_form(algebra, eta, max_power=None):
    """Power index of d(eta) as an element, plus whether eta wedge (d eta)^p
    survives (reported, not assumed)."""
    if not eta.is_zero() and eta.degree() != 1:
        raise ModelError("eta must be homogeneous of degree 1")
    if max_power is None:
        top = algebra.natural_top()
        if top is None:
            raise ModelError("a maximum power is required with even generators")
        max_power = top // 2
    d_eta = algebra.d(eta)
    p = 0
    power = Element.unit(algebra.gens)
    for l in range(1, max_power + 1):
        nxt = power * d_eta
        if nxt.is_zero():
            break
        power = nxt
        p = l
    wedge = eta * power
    return RankResult(p, 2 * p + 1, not wedge.is_zero())
