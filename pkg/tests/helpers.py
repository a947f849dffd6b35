"""Shared generators for the randomized suites; everything is seeded."""

from fractions import Fraction

from cdgalab import (
    CDGA,
    Derivation,
    Element,
    GeneratorSet,
    LieAlgebraSpec,
    heisenberg_sum,
)


def random_generator_set(rng, max_gens=4, max_degree=3, odd_only=False):
    n = rng.randint(1, max_gens)
    pairs = []
    for i in range(n):
        degree = 1 if odd_only else rng.randint(1, max_degree)
        if odd_only and rng.random() < 0.3:
            degree = 3
        pairs.append((f"g{i}", degree))
    return GeneratorSet(pairs)


def random_monomial(rng, gens, max_degree=6):
    for _ in range(40):
        expo = []
        for d in gens.degrees:
            if d % 2:
                expo.append(rng.randint(0, 1))
            else:
                expo.append(rng.randint(0, 2))
        mono = tuple(expo)
        if gens.monomial_degree(mono) <= max_degree:
            return mono
    return gens.unit_monomial()


def random_scalar(rng):
    num = rng.randint(-4, 4)
    den = rng.randint(1, 4)
    return Fraction(num, den)


def random_element(rng, gens, terms=3, max_degree=6):
    acc = Element.zero(gens)
    for _ in range(rng.randint(0, terms)):
        mono = random_monomial(rng, gens, max_degree)
        acc = acc + Element.monomial(gens, mono, random_scalar(rng))
    return acc


def random_homogeneous(rng, gens, degree, terms=3):
    basis = gens.degree_basis(degree)
    acc = Element.zero(gens)
    if not basis:
        return acc
    for _ in range(rng.randint(1, terms)):
        acc = acc + Element.monomial(gens, rng.choice(basis), random_scalar(rng))
    return acc


def random_derivation(rng, cdga, degree):
    values = {}
    gens = cdga.gens
    for name, gdeg in zip(gens.names, gens.degrees):
        target = gdeg + degree
        if target < 0 or rng.random() < 0.3:
            continue
        value = random_homogeneous(rng, gens, target)
        if not value.is_zero():
            values[name] = value
    return Derivation(cdga, degree, values)


def random_unimodular(rng, m):
    """Product of elementary integer operations; determinant is +-1."""
    mat = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    for _ in range(2 * m + rng.randint(0, m)):
        op = rng.randrange(3)
        if op == 0 and m > 1:
            i, j = rng.sample(range(m), 2)
            c = rng.randint(-3, 3)
            if c:
                for t in range(m):
                    mat[t][j] += c * mat[t][i]
        elif op == 1 and m > 1:
            i, j = rng.sample(range(m), 2)
            for t in range(m):
                mat[t][i], mat[t][j] = mat[t][j], mat[t][i]
        else:
            i = rng.randrange(m)
            for t in range(m):
                mat[t][i] = -mat[t][i]
    return mat


def filiform(n):
    """[e1, e_i] = e_{i+1} for 2 <= i < n; nilpotent with derived dim n - 2."""
    return LieAlgebraSpec(n, {(0, i): {i + 1: 1} for i in range(1, n - 1)})


def random_two_step(rng, base=3, central=2, min_derived=2):
    """A 2-step nilpotent algebra: random brackets of base vectors landing in
    a central complement; retried until the derived dimension is as asked."""
    m = base + central
    for _ in range(50):
        brackets = {}
        for i in range(base):
            for j in range(i + 1, base):
                vec = {base + k: rng.randint(-2, 2) for k in range(central)}
                vec = {k: v for k, v in vec.items() if v}
                if vec:
                    brackets[(i, j)] = vec
        spec = LieAlgebraSpec(m, brackets)
        from cdgalab import derived_and_center

        if derived_and_center(spec)[0].dim >= min_derived:
            return spec
    raise RuntimeError("could not build a two-step algebra with the asked rank")


def random_nilpotent(rng):
    """A nilpotent algebra from a small zoo, for d^2 = 0 suites."""
    kind = rng.randrange(4)
    if kind == 0:
        return heisenberg_sum(rng.randint(0, 2), rng.randint(0, 2))
    if kind == 1:
        return filiform(rng.randint(3, 5))
    if kind == 2:
        return random_two_step(rng, base=rng.randint(2, 3), central=rng.randint(1, 2),
                               min_derived=1)
    return LieAlgebraSpec(rng.randint(1, 4))
