"""Brute-force cohomology reference used to pin expected values in the tests.

Deliberately primitive and self-contained: monomials are index tuples,
differentials are expanded by textbook sign rules, and ranks come from a
dense Gaussian elimination over ``fractions.Fraction``.  Nothing in here
imports the package under test.
"""

from fractions import Fraction
from itertools import combinations


def sort_with_sign(indices):
    """Sort an index sequence by adjacent swaps.

    Returns (sign, tuple) where sign is the permutation parity, or (0, None)
    if an index repeats (an odd generator squares to zero).
    """
    idx = list(indices)
    sign = 1
    for a in range(1, len(idx)):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            sign = -sign
            b -= 1
    for a in range(1, len(idx)):
        if idx[a - 1] == idx[a]:
            return 0, None
    return sign, tuple(idx)


def ce_generator_differentials(dim, brackets):
    """d of each degree-one generator on the dual of a Lie algebra.

    ``brackets`` maps (i, j) with i < j to {k: coeff}; the dual generator a_k
    picks up -sum c_ij^k a_i a_j.
    """
    d1 = {k: {} for k in range(dim)}
    for (i, j), comps in brackets.items():
        if not i < j:
            raise ValueError("brackets must be keyed by i < j")
        for k, c in comps.items():
            c = Fraction(c)
            if c:
                d1[k][(i, j)] = d1[k].get((i, j), Fraction(0)) - c
    return d1


def ce_boundary_matrices(dim, brackets, top):
    """Dense matrices of d on the exterior algebra of ``dim`` generators.

    Returns (bases, mats) with bases[k] the sorted index tuples of length k
    and mats[k] the matrix from degree k to degree k + 1 (rows indexed by
    bases[k + 1], columns by bases[k]).
    """
    d1 = ce_generator_differentials(dim, brackets)
    bases = [list(combinations(range(dim), k)) for k in range(top + 2)]
    mats = []
    for k in range(top + 1):
        row_index = {t: r for r, t in enumerate(bases[k + 1])}
        mat = [[Fraction(0)] * len(bases[k]) for _ in bases[k + 1]]
        for col, mono in enumerate(bases[k]):
            for pos in range(len(mono)):
                rest = mono[:pos] + mono[pos + 1 :]
                lead = -1 if pos % 2 else 1
                for (i, j), c in d1[mono[pos]].items():
                    sign, target = sort_with_sign((i, j) + rest)
                    if sign:
                        mat[row_index[target]][col] += lead * sign * c
        mats.append(mat)
    return bases, mats


def rank_dense(mat):
    """Rank by forward Gaussian elimination with exact rationals."""
    mat = [row[:] for row in mat]
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        nz = [(c, prow[c]) for c in range(col, ncols) if prow[c]]
        inv = Fraction(1) / prow[col]
        for r in range(rank + 1, nrows):
            f = mat[r][col]
            if f:
                f *= inv
                row = mat[r]
                for c, v in nz:
                    row[c] -= f * v
        rank += 1
        if rank == nrows:
            break
    return rank


def betti_from_matrices(dims, mats):
    """Betti numbers of a finite complex given per-degree boundary matrices.

    ``dims[k]`` is the dimension in degree k; ``mats[k]`` maps degree k to
    degree k + 1.  b_k = dim_k - rank d_k - rank d_{k-1}.
    """
    ranks = [rank_dense(m) for m in mats]
    betti = []
    prev = 0
    for k, dim in enumerate(dims):
        r = ranks[k] if k < len(ranks) else 0
        betti.append(dim - r - prev)
        prev = r
    return betti


def ce_betti(dim, brackets):
    """Betti numbers of the dual complex of a Lie algebra, degrees 0..dim."""
    bases, mats = ce_boundary_matrices(dim, brackets, dim)
    return betti_from_matrices([len(b) for b in bases[: dim + 1]], mats)


def heisenberg_sum_brackets(l, r):
    """Structure constants of the (2l+1+r)-dimensional Heisenberg-plus-abelian
    algebra: basis p_1..p_l, q_1..q_l, h, u_1..u_r with [p_i, q_i] = h."""
    return {(i, l + i): {2 * l: Fraction(1)} for i in range(l)}
