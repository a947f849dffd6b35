import random
from fractions import Fraction

import pytest

from cdgalab import (
    CdgaError,
    LieAlgebraSpec,
    LieError,
    change_basis,
    check_jacobi,
    chevalley_eilenberg,
    classify_heisenberg_type,
    cohomology,
    derived_and_center,
    heisenberg_adapted_basis,
    heisenberg_sum,
    is_nilpotent,
    lower_central_series,
    skew_normal_form,
)
from helpers import filiform, random_two_step, random_unimodular


def test_jacobi_passes_on_heisenberg():
    assert check_jacobi(heisenberg_sum(1, 0)) is None


def test_jacobi_passes_on_abelian():
    assert check_jacobi(LieAlgebraSpec(4)) is None


def test_jacobi_violation_detected():
    # [e1,e2]=e3 and [e1,e3]=e1 give Jacobiator [e2,[e3,e1]] = e3 != 0
    spec = LieAlgebraSpec(3, {(0, 1): {2: 1}, (0, 2): {0: 1}})
    violation = check_jacobi(spec)
    assert violation is not None
    assert violation.triple == (0, 1, 2)
    assert violation.residue == [0, 0, Fraction(1)]


def test_rescaled_cyclic_constants_still_satisfy_jacobi():
    # on three generators the cyclic bracket shape is Jacobi for any scaling:
    # every [e_i, [e_j, e_k]] pairs a vector with a multiple of itself
    spec = LieAlgebraSpec(3, {(0, 1): {2: 1}, (0, 2): {1: -1}, (1, 2): {0: 2}})
    assert check_jacobi(spec) is None


def test_antisymmetrization_and_consistency():
    spec = LieAlgebraSpec(3, {(1, 0): {2: -1}})
    assert spec.basis_bracket(0, 1) == [0, 0, Fraction(1)]
    with pytest.raises(LieError):
        LieAlgebraSpec(3, {(0, 1): {2: 1}, (1, 0): {2: 1}})


def test_lower_central_series_heisenberg():
    for l in (1, 2):
        series = lower_central_series(heisenberg_sum(l, 1))
        assert [s.dim for s in series] == [2 * l + 2, 1, 0]
    assert is_nilpotent(heisenberg_sum(2, 0))


def test_lower_central_series_abelian():
    series = lower_central_series(LieAlgebraSpec(3))
    assert [s.dim for s in series] == [3, 0]


def test_solvable_not_nilpotent():
    spec = LieAlgebraSpec(2, {(0, 1): {1: 1}})
    series = lower_central_series(spec)
    assert [s.dim for s in series] == [2, 1]
    assert not is_nilpotent(spec)


def test_derived_and_center_heisenberg_sum():
    spec = heisenberg_sum(1, 2)
    derived, center = derived_and_center(spec)
    assert derived.dim == 1
    assert center.dim == 3  # h, u1, u2


def test_derived_and_center_abelian():
    derived, center = derived_and_center(LieAlgebraSpec(4))
    assert derived.dim == 0
    assert center.dim == 4


def test_derived_double_heisenberg():
    a = heisenberg_sum(1, 0)
    brackets = {(0, 1): {2: 1}, (3, 4): {5: 1}}
    spec = LieAlgebraSpec(6, brackets)
    derived, _ = derived_and_center(spec)
    assert derived.dim == 2
    assert classify_heisenberg_type(spec) is None
    assert classify_heisenberg_type(a) == 1


def test_classify_fixtures():
    assert classify_heisenberg_type(heisenberg_sum(2, 3)) == 2
    assert classify_heisenberg_type(LieAlgebraSpec(5)) == 0
    assert classify_heisenberg_type(filiform(4)) is None
    spec = LieAlgebraSpec(2, {(0, 1): {1: 1}})  # solvable, not nilpotent
    assert classify_heisenberg_type(spec) is None


def test_classify_invariant_under_basis_change():
    rng = random.Random(41)
    for l, r in ((1, 0), (2, 1), (0, 3)):
        spec = heisenberg_sum(l, r)
        for _ in range(10):
            p = random_unimodular(rng, spec.dim)
            assert classify_heisenberg_type(change_basis(spec, p)) == l


def test_change_basis_identity_and_abelian():
    spec = heisenberg_sum(1, 1)
    from cdgalab import linalg

    same = change_basis(spec, linalg.identity(spec.dim))
    assert same.table == spec.table
    rng = random.Random(43)
    abelian = LieAlgebraSpec(4)
    moved = change_basis(abelian, random_unimodular(rng, 4))
    assert moved.table == {}


def test_change_basis_rejects_singular():
    with pytest.raises(LieError):
        change_basis(LieAlgebraSpec(2), [[1, 1], [1, 1]])


def test_chevalley_eilenberg_heisenberg_sum():
    algebra = chevalley_eilenberg(heisenberg_sum(2, 1))
    assert algebra.d_of_generator("h") == algebra.element("-p1*q1 - p2*q2")
    for name in ("p1", "p2", "q1", "q2", "u1"):
        assert algebra.d_of_generator(name).is_zero()


def test_chevalley_eilenberg_abelian_zero_differential():
    algebra = chevalley_eilenberg(LieAlgebraSpec(3))
    assert not algebra.d_values


def test_chevalley_eilenberg_jacobi_failure_surfaces():
    spec = LieAlgebraSpec(3, {(0, 1): {2: 1}, (0, 2): {0: 1}})
    with pytest.raises(CdgaError) as err:
        chevalley_eilenberg(spec)
    assert "e3" in str(err.value)


def test_d_squared_iff_jacobi_random():
    rng = random.Random(47)
    for _ in range(40):
        dim = rng.randint(3, 4)
        brackets = {}
        for i in range(dim):
            for j in range(i + 1, dim):
                if rng.random() < 0.4:
                    vec = {k: rng.randint(-2, 2) for k in rng.sample(range(dim), 2)}
                    vec = {k: v for k, v in vec.items() if v}
                    if vec:
                        brackets[(i, j)] = vec
        spec = LieAlgebraSpec(dim, brackets)
        jacobi_ok = check_jacobi(spec) is None
        if jacobi_ok:
            chevalley_eilenberg(spec)
        else:
            with pytest.raises(CdgaError):
                chevalley_eilenberg(spec)


def test_b1_equals_dim_minus_derived():
    for spec in (heisenberg_sum(1, 2), heisenberg_sum(2, 0), filiform(4), filiform(5)):
        derived, _ = derived_and_center(spec)
        betti = cohomology(chevalley_eilenberg(spec)).betti
        assert betti[1] == spec.dim - derived.dim


def test_b1_for_heisenberg_types():
    for l, r in ((1, 0), (2, 2)):
        spec = heisenberg_sum(l, r)
        betti = cohomology(chevalley_eilenberg(spec)).betti
        assert betti[1] == spec.dim - 1
    abelian = LieAlgebraSpec(4)
    assert cohomology(chevalley_eilenberg(abelian)).betti[1] == 4


def test_heisenberg_sum_roundtrip():
    for l in range(4):
        for r in range(3):
            spec = heisenberg_sum(l, r)
            assert spec.dim == 2 * l + 1 + r
            assert classify_heisenberg_type(spec) == l


def test_heisenberg_sum_l0_is_abelian():
    spec = heisenberg_sum(0, 3)
    assert spec.table == {}
    assert spec.dim == 4


def test_skew_normal_form_standard():
    skew = [
        [0, 1, 0],
        [-1, 0, 0],
        [0, 0, 0],
    ]
    skew = [[Fraction(x) for x in row] for row in skew]
    pairs, radical = skew_normal_form(skew)
    assert len(pairs) == 1 and len(radical) == 1
    p, q = pairs[0]
    assert p == [1, 0, 0] and q == [0, 1, 0]
    assert radical[0] == [0, 0, 1]


def test_skew_normal_form_scaled_and_offset():
    rng = random.Random(53)
    for _ in range(30):
        l = rng.randint(1, 2)
        m = 2 * l + rng.randint(0, 2)
        base = [[Fraction(0)] * m for _ in range(m)]
        for i in range(l):
            c = Fraction(rng.randint(1, 3))
            base[2 * i][2 * i + 1] = c
            base[2 * i + 1][2 * i] = -c
        p = random_unimodular(rng, m)
        # congruent transform P^T S P
        pt = [[p[j][i] for j in range(m)] for i in range(m)]
        from cdgalab import linalg

        skew = linalg.mat_mul(pt, linalg.mat_mul(base, p))
        pairs, radical = skew_normal_form(skew)
        assert len(pairs) == l
        assert len(radical) == m - 2 * l

        def form(x, y):
            return sum(
                xi * skew[i][j] * yj
                for i, xi in enumerate(x)
                for j, yj in enumerate(y)
            )

        for a, (pa, qa) in enumerate(pairs):
            assert form(pa, qa) == 1
            for vb in radical:
                assert form(pa, vb) == 0 and form(qa, vb) == 0
            for b, (pb, qb) in enumerate(pairs):
                if a != b:
                    assert form(pa, pb) == 0 and form(pa, qb) == 0


def test_heisenberg_adapted_basis_identity_on_standard():
    from cdgalab import linalg

    spec = heisenberg_sum(2, 1)
    l, p = heisenberg_adapted_basis(spec)
    assert l == 2
    assert p == linalg.identity(spec.dim)


def test_heisenberg_adapted_basis_recovers_form():
    rng = random.Random(59)
    for l, r in ((1, 0), (1, 2), (2, 1)):
        spec = heisenberg_sum(l, r)
        moved = change_basis(spec, random_unimodular(rng, spec.dim))
        got = heisenberg_adapted_basis(moved)
        assert got is not None
        l2, p = got
        assert l2 == l
        adapted = change_basis(moved, p)
        assert adapted.table == heisenberg_sum(l, r).table


def test_heisenberg_adapted_basis_none_for_filiform():
    assert heisenberg_adapted_basis(filiform(4)) is None


def test_two_step_random_has_derived_at_least_two():
    rng = random.Random(61)
    for _ in range(10):
        spec = random_two_step(rng)
        assert check_jacobi(spec) is None
        assert is_nilpotent(spec)
        assert classify_heisenberg_type(spec) is None
