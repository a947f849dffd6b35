"""Free graded-commutative algebras over the rationals, with exact arithmetic.

A :class:`GeneratorSet` fixes an ordered list of named generators with
positive integer degrees.  Monomials are exponent vectors over that list
(odd-degree generators are capped at exponent one), kept in ascending
generator order; products acquire the usual sign when odd factors pass each
other.  An :class:`Element` is a finite rational combination of monomials in
canonical form, so equality is a plain map comparison and every result is
exact.

The textual syntax accepted by :func:`parse_element` and produced by
:func:`format_element` round-trips exactly: terms ``c*g1^e1*g2^e2`` joined
by ``+``/``-``, with ``1`` for the unit monomial and coefficients written as
``p/q``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache


class EngineError(Exception):
    """Base class for all errors raised by this package."""


class GcaError(EngineError):
    """Structural error in the core algebra layer."""


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_ZERO = Fraction(0)
_ONE = Fraction(1)


class GeneratorSet:
    """Ordered, uniquely named generators with positive degrees."""

    __slots__ = ("names", "degrees", "_index")

    def __init__(self, pairs):
        names = []
        degrees = []
        for name, degree in pairs:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise GcaError(f"invalid generator name {name!r}")
            if not isinstance(degree, int) or degree < 1:
                raise GcaError(
                    f"generator {name!r} has degree {degree!r}; degrees must be"
                    " integers >= 1"
                )
            names.append(name)
            degrees.append(degree)
        if len(set(names)) != len(names):
            raise GcaError("generator names must be unique")
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return (
            isinstance(other, GeneratorSet)
            and self.names == other.names
            and self.degrees == other.degrees
        )

    def __hash__(self):
        return hash((self.names, self.degrees))

    def __repr__(self):
        inner = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"GeneratorSet({inner})"

    def index_of(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise GcaError(f"unknown generator {name!r}") from None

    def monomial_degree(self, mono):
        return sum(e * d for e, d in zip(mono, self.degrees))

    def unit_monomial(self):
        return (0,) * len(self.names)

    def validate_monomial(self, mono):
        if len(mono) != len(self.names):
            raise GcaError("monomial length does not match generator set")
        for e, d in zip(mono, self.degrees):
            if e < 0:
                raise GcaError("negative exponent in monomial")
            if d % 2 and e > 1:
                raise GcaError("odd generator with exponent > 1")

    def degree_basis(self, k):
        """All monomials of degree exactly k, lexicographic by exponent vector."""
        if k < 0:
            return []
        return list(_degree_basis(self, k))

    def all_odd(self):
        return all(d % 2 for d in self.degrees)

    def total_degree(self):
        """Sum of generator degrees: the top nonzero degree when all are odd."""
        return sum(self.degrees)


@lru_cache(maxsize=None)
def _degree_basis(gens, k):
    n = len(gens)
    degrees = gens.degrees
    out = []

    def rec(i, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc) + (0,) * (n - i))
            return
        if i == n:
            return
        d = degrees[i]
        cap = remaining // d
        if d % 2:
            cap = min(cap, 1)
        for e in range(cap + 1):
            acc.append(e)
            rec(i + 1, remaining - e * d, acc)
            acc.pop()

    rec(0, k, [])
    out.sort()
    return tuple(out)


def koszul_product(gens, m1, m2):
    """Product of two canonical monomials.

    Returns None when an odd generator appears in both factors, else
    (sign, monomial) with the sign counting odd-odd transpositions needed to
    interleave the factors back into ascending generator order.
    """
    n = len(gens)
    if len(m1) != n or len(m2) != n:
        raise GcaError("monomials over mismatched generator sets")
    degrees = gens.degrees
    result = []
    odd_total = 0
    for i in range(n):
        a, b = m1[i], m2[i]
        if degrees[i] % 2:
            if a and b:
                return None
            odd_total += a
        result.append(a + b)
    inv = 0
    seen = 0
    for i in range(n):
        if degrees[i] % 2:
            seen += m1[i]
            if m2[i]:
                inv += odd_total - seen
    return (-1 if inv % 2 else 1), tuple(result)


class Element:
    """A rational linear combination of canonical monomials.

    Immutable in spirit: all operations return fresh elements, and no stored
    coefficient is zero, so ``==`` compares canonical forms.
    """

    __slots__ = ("gens", "terms")

    def __init__(self, gens, terms=None):
        self.gens = gens
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                gens.validate_monomial(mono)
                c = Fraction(coeff)
                if c:
                    clean[tuple(mono)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, gens, terms):
        el = object.__new__(cls)
        el.gens = gens
        el.terms = terms
        return el

    @classmethod
    def zero(cls, gens):
        return cls._raw(gens, {})

    @classmethod
    def unit(cls, gens):
        return cls._raw(gens, {gens.unit_monomial(): _ONE})

    @classmethod
    def generator(cls, gens, name):
        i = gens.index_of(name)
        mono = tuple(1 if j == i else 0 for j in range(len(gens)))
        return cls._raw(gens, {mono: _ONE})

    @classmethod
    def monomial(cls, gens, mono, coeff=1):
        gens.validate_monomial(mono)
        c = Fraction(coeff)
        return cls._raw(gens, {tuple(mono): c} if c else {})

    def is_zero(self):
        return not self.terms

    def is_homogeneous(self):
        return len({self.gens.monomial_degree(m) for m in self.terms}) <= 1

    def degree(self):
        """Degree of a homogeneous element; None for zero."""
        degs = {self.gens.monomial_degree(m) for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise GcaError(f"element is not homogeneous: {self}")
        return degs.pop()

    def homogeneous_components(self):
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(self.gens.monomial_degree(m), {})[m] = c
        return {k: Element._raw(self.gens, t) for k, t in sorted(parts.items())}

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), _ZERO)

    def _check_gens(self, other):
        if self.gens != other.gens:
            raise GcaError("elements over mismatched generator sets")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check_gens(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, _ZERO) + c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return Element._raw(self.gens, terms)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Element._raw(self.gens, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Element.zero(self.gens)
            return Element._raw(self.gens, {m: v * c for m, v in self.terms.items()})
        if not isinstance(other, Element):
            return NotImplemented
        self._check_gens(other)
        out = {}
        gens = self.gens
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                prod = koszul_product(gens, m1, m2)
                if prod is None:
                    continue
                sign, mono = prod
                v = out.get(mono, _ZERO) + (c1 * c2 if sign > 0 else -c1 * c2)
                if v:
                    out[mono] = v
                else:
                    del out[mono]
        return Element._raw(self.gens, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise GcaError("element powers take a non-negative integer")
        out = Element.unit(self.gens)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.gens == other.gens
            and self.terms == other.terms
        )

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<Element {format_element(self)}>"

    def embedded_in(self, new_gens):
        """The same element over a generator set extending this one."""
        n = len(self.gens)
        if (
            new_gens.names[:n] != self.gens.names
            or new_gens.degrees[:n] != self.gens.degrees
        ):
            raise GcaError("target generator set does not extend the current one")
        pad = (0,) * (len(new_gens) - n)
        return Element._raw(new_gens, {m + pad: c for m, c in self.terms.items()})


def multiply(a, b):
    """Bilinear Koszul-signed product of two elements."""
    return a * b


def format_monomial(gens, mono):
    if not any(mono):
        return "1"
    parts = []
    for name, e in zip(gens.names, mono):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_element(el):
    if not el.terms:
        return "0"
    gens = el.gens
    items = sorted(el.terms.items(), key=lambda t: (gens.monomial_degree(t[0]), t[0]))
    chunks = []
    for i, (mono, coeff) in enumerate(items):
        mag = abs(coeff)
        body = format_monomial(gens, mono)
        if body == "1":
            body = str(mag)
        elif mag != 1:
            body = f"{mag}*{body}"
        if i == 0:
            chunks.append(("-" if coeff < 0 else "") + body)
        else:
            chunks.append((" - " if coeff < 0 else " + ") + body)
    return "".join(chunks)


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise GcaError(f"cannot tokenize element text at {rest[:10]!r}")
        if m.group("num") is not None:
            tokens.append(("num", m.group("num")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name")))
        else:
            tokens.append(("op", m.group("op")))
        pos = m.end()
    return tokens


def _parse_term(gens, tokens, pos):
    coeff = _ONE
    expo = [0] * len(gens)
    expect_factor = True
    while pos < len(tokens):
        kind, val = tokens[pos]
        if expect_factor:
            if kind == "num":
                num = int(val)
                pos += 1
                if pos < len(tokens) and tokens[pos] == ("op", "/"):
                    pos += 1
                    if pos >= len(tokens) or tokens[pos][0] != "num":
                        raise GcaError("expected denominator after '/'")
                    den = int(tokens[pos][1])
                    pos += 1
                    if den == 0:
                        raise GcaError("zero denominator in coefficient")
                    coeff *= Fraction(num, den)
                else:
                    coeff *= num
            elif kind == "name":
                idx = gens.index_of(val)
                pos += 1
                e = 1
                if pos < len(tokens) and tokens[pos] == ("op", "^"):
                    pos += 1
                    if pos >= len(tokens) or tokens[pos][0] != "num":
                        raise GcaError("expected exponent after '^'")
                    e = int(tokens[pos][1])
                    pos += 1
                expo[idx] += e
            else:
                raise GcaError(f"unexpected {val!r} in element term")
            expect_factor = False
        elif kind == "op" and val == "*":
            pos += 1
            expect_factor = True
        else:
            break
    if expect_factor:
        raise GcaError("unexpected end of element term")
    return coeff, expo, pos


def parse_element(gens, text):
    """Parse the textual element syntax over the given generators."""
    tokens = _tokenize(text)
    if not tokens:
        raise GcaError("empty element expression")
    terms = {}
    pos = 0
    first = True
    while pos < len(tokens):
        sign = 1
        kind, val = tokens[pos]
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            pos += 1
        elif not first:
            raise GcaError(f"expected '+' or '-' before {val!r}")
        coeff, expo, pos = _parse_term(gens, tokens, pos)
        first = False
        if any(
            e > 1 and d % 2 for e, d in zip(expo, gens.degrees)
        ):
            continue  # a repeated odd factor multiplies to zero
        mono = tuple(expo)
        v = terms.get(mono, _ZERO) + sign * coeff
        if v:
            terms[mono] = v
        else:
            terms.pop(mono, None)
    return Element._raw(gens, terms)
