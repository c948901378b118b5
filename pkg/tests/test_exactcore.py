import os
import random
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from apolar.exactcore import (
    BACKEND, GF, QQ, CharacteristicError, DimensionMismatch, ExactMatrix, FieldMismatch, Mod,
    SparseEchelon, mat_kernel_basis, mat_rank, mat_rref, mat_solve, parse_field,
)
from apolar.exactcore import _rref_py
from apolar.exactcore.matrix import rref_modp
from oracles import bareiss_rank_modp, rank_qq_via_det

P = 31991
F = GF(P)


def low_rank(rng, r, c, k, p=P):
    A = np.array([[rng.randrange(p) for _ in range(k)] for _ in range(r)], dtype=object)
    B = np.array([[rng.randrange(p) for _ in range(c)] for _ in range(k)], dtype=object)
    return [[int(x) % p for x in row] for row in A.dot(B)]


def test_mod_arithmetic():
    a, b = Mod(5, 7), Mod(4, 7)
    assert a + b == Mod(2, 7)
    assert a * b == Mod(6, 7)
    assert a / b * b == a
    assert (-a).lift() == 2
    assert Mod(6, 7).lift() == -1
    assert a ** 6 == Mod(1, 7)


def test_mixed_fields_refused():
    with pytest.raises(FieldMismatch):
        Mod(1, 7) + Mod(1, 11)
    with pytest.raises(FieldMismatch):
        Mod(1, 7) + Fraction(1, 2)


def test_parse_field_and_guard(monkeypatch):
    assert parse_field("Q") == QQ
    assert parse_field("gfp:101") == GF(101)
    assert parse_field("GF(19)") == GF(19)
    monkeypatch.setenv("APOLAR_DEFAULT_PRIME", "101")
    assert parse_field(None) == GF(101)
    with pytest.raises(CharacteristicError):
        GF(5).require_char_above(5)
    GF(7).require_char_above(5)
    QQ.require_char_above(100)
    with pytest.raises(ValueError):
        parse_field("R")


def test_rank_matches_fraction_free_oracle():
    rng = random.Random(1)
    for _ in range(30):
        rows = low_rank(rng, 20, 30, rng.randint(1, 20))
        assert mat_rank(ExactMatrix.from_rows(F, rows)) == bareiss_rank_modp(rows, P)


@pytest.mark.parametrize("p", [7, P, 2**31 - 1])
def test_backends_agree(p):
    rng = random.Random(2)
    for _ in range(10):
        rows = low_rank(rng, 40, 35, rng.randint(5, 35), p)
        a = np.array(rows, dtype=np.int64)
        b = a.copy()
        piv_a = _rref_py.rref_modp(a, p)
        piv_b = rref_modp(b, p)
        assert piv_a == list(piv_b)
        assert (a == b).all()
        assert len(piv_a) == bareiss_rank_modp(rows, p)


def test_backend_is_reported():
    assert BACKEND in ("cython", "python")


def test_identity_rref():
    I = ExactMatrix.identity(F, 5)
    R, piv = mat_rref(I)
    assert R == I and piv == list(range(5))


def test_kernel_is_canonical_and_annihilated():
    m = ExactMatrix.from_rows(F, [[1, 1]])
    K = mat_kernel_basis(m)
    assert K.column(0) == [F(-1), F(1)]
    rng = random.Random(3)
    rows = low_rank(rng, 8, 12, 5)
    M = ExactMatrix.from_rows(F, rows)
    K = mat_kernel_basis(M)
    assert K.ncols == 12 - 5
    prod = M @ K
    assert all(prod[i, j] == 0 for i in range(prod.nrows) for j in range(prod.ncols))


def test_rational_rank_and_solve():
    rows = [[Fraction(1, 2), 1, 0], [1, 2, 0], [0, 0, 3]]
    M = ExactMatrix.from_rows(QQ, rows)
    assert mat_rank(M) == 2 == rank_qq_via_det(rows)
    x = mat_solve(M, [1, 2, 3])
    assert [sum(M[i, j] * x[j] for j in range(3)) for i in range(3)] == [1, 2, 3]
    assert mat_solve(M, [1, 0, 0]) is None


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        ExactMatrix.identity(F, 2) @ ExactMatrix.identity(F, 3)


def test_sparse_echelon_normal_form():
    e = SparseEchelon(4)
    assert e.add({0: Fraction(2), 1: Fraction(2)})
    assert not e.add({0: Fraction(1), 1: Fraction(1)})
    assert e.reduce({0: Fraction(1)}) == {1: Fraction(-1)}
    assert e.free_columns() == [1, 2, 3]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**32))
def test_rank_nullity(r, c, seed):
    rng = random.Random(seed)
    rows = [[rng.randrange(7) for _ in range(c)] for _ in range(r)]
    M = ExactMatrix.from_rows(GF(7), rows)
    assert mat_rank(M) + mat_kernel_basis(M).ncols == c
    assert mat_rank(M) == bareiss_rank_modp(rows, 7)
    assert mat_rank(M) == mat_rank(M.transpose())


def test_forced_python_backend_end_to_end():
    code = ("from apolar.exactcore import BACKEND; from apolar.reproduce import betti_tables; "
            "r = betti_tables(); print(BACKEND, r.ok)")
    env = dict(os.environ, APOLAR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "True"]
