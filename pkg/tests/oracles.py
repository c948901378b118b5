"""Independent reference computations used only by the tests."""

from __future__ import annotations

import itertools
import math


def bareiss_rank_modp(rows, p):
    """Rank over GF(p) by fraction-free elimination on plain Python ints.

    Rows are combined by cross-multiplication, so no field inverse is ever
    taken; this keeps it independent of the modular RREF under test.
    """
    m = [[int(x) % p for x in r] for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][c] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[rank][c] * m[i][j] - m[i][c] * m[rank][j]) % p
            m[i][c] = 0
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_qq_via_det(rows):
    """Largest nonvanishing minor size, by brute force (tiny matrices only)."""
    from fractions import Fraction

    n, m = len(rows), len(rows[0]) if rows else 0

    def det(mat):
        mat = [[Fraction(x) for x in r] for r in mat]
        k = len(mat)
        d = Fraction(1)
        for c in range(k):
            piv = next((i for i in range(c, k) if mat[i][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                mat[c], mat[piv] = mat[piv], mat[c]
                d = -d
            d *= mat[c][c]
            for i in range(c + 1, k):
                f = mat[i][c] / mat[c][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
        return d

    for k in range(min(n, m), 0, -1):
        for rs in itertools.combinations(range(n), k):
            for cs in itertools.combinations(range(m), k):
                if det([[rows[i][j] for j in cs] for i in rs]) != 0:
                    return k
    return 0


def num_monomials(nvars, d):
    return math.comb(nvars - 1 + d, d)


def twisted_cubic_hf(j):
    return 3 * j + 1
