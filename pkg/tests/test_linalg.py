import random
from fractions import Fraction

import pytest

from cdgalab import linalg
from oracle import rank_dense


def _random_matrix(rng, nrows, ncols, density=0.6):
    return [
        [
            Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            if rng.random() < density
            else Fraction(0)
            for _ in range(ncols)
        ]
        for _ in range(nrows)
    ]


def test_rank_against_dense_oracle():
    rng = random.Random(3)
    for _ in range(200):
        nrows = rng.randint(0, 6)
        ncols = rng.randint(1, 6)
        mat = _random_matrix(rng, nrows, ncols)
        assert linalg.rank(mat) == rank_dense(mat)


def test_nullspace_vectors_are_in_kernel():
    rng = random.Random(5)
    for _ in range(200):
        nrows = rng.randint(0, 5)
        ncols = rng.randint(1, 6)
        mat = _random_matrix(rng, nrows, ncols)
        kernel = linalg.nullspace(mat, ncols)
        assert len(kernel) == ncols - linalg.rank(mat)
        for v in kernel:
            for row in mat:
                assert sum(a * b for a, b in zip(row, v)) == 0


def test_nullspace_of_empty_matrix_is_standard_basis():
    assert linalg.nullspace([], 3) == linalg.identity(3)


def test_rref_reproduces_row_space():
    rng = random.Random(7)
    for _ in range(100):
        mat = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        rows, pivots = linalg.rref(mat, len(mat[0]))
        assert len(rows) == linalg.rank(mat)
        for row, piv in zip(rows, pivots):
            assert row[piv] == 1
            for other, other_piv in zip(rows, pivots):
                if other_piv != piv:
                    assert other[piv] == 0


def test_span_solver_roundtrip():
    rng = random.Random(9)
    for _ in range(100):
        n = rng.randint(1, 5)
        ncols = rng.randint(1, n)
        cols = []
        while len(cols) < ncols:
            c = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
            try:
                linalg.SpanSolver(cols + [c])
            except ValueError:
                continue
            cols.append(c)
        solver = linalg.SpanSolver(cols)
        weights = [Fraction(rng.randint(-3, 3)) for _ in cols]
        v = [sum(w * c[i] for w, c in zip(weights, cols)) for i in range(n)]
        assert solver.coords(v) == weights


def test_span_solver_rejects_outside_vector():
    solver = linalg.SpanSolver([[Fraction(1), Fraction(0)]])
    assert solver.coords([Fraction(0), Fraction(1)]) is None
    assert solver.coords([Fraction(5), Fraction(0)]) == [Fraction(5)]


def test_span_solver_rejects_dependent_columns():
    with pytest.raises(ValueError):
        linalg.SpanSolver([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])


def test_mat_inverse():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(1, 4)
        mat = _random_matrix(rng, n, n, density=0.9)
        inv = linalg.mat_inverse(mat)
        if linalg.rank(mat) < n:
            assert inv is None
        else:
            assert linalg.mat_mul(mat, inv) == linalg.identity(n)


def test_mat_mul_shapes():
    a = [[Fraction(1), Fraction(2)]]
    b = [[Fraction(3)], [Fraction(4)]]
    assert linalg.mat_mul(a, b) == [[Fraction(11)]]
