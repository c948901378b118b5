"""Dense exact matrices and their reduced row echelon forms.

Over GF(p) entries live in an ``int64`` numpy array with values in ``[0, p)``
and elimination goes through :func:`rref_modp` (compiled when available).
Over QQ entries are :class:`fractions.Fraction` in nested lists.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _rref_py
from .fields import Field, FieldMismatch, Mod, PrimeField

try:
    if os.environ.get("APOLAR_PURE_PYTHON"):
        raise ImportError("pure-Python backend requested")
    from ._rref import rref_modp as _rref_compiled
except ImportError:
    _rref_compiled = None

BACKEND = "cython" if _rref_compiled is not None else "python"
MAX_PRIME = 2**31


def rref_modp(a: np.ndarray, p: int) -> list:
    """In-place RREF of a C-contiguous int64 array over GF(p)."""
    if p >= MAX_PRIME:
        raise ValueError("primes >= 2^31 overflow the int64 kernels")
    if _rref_compiled is not None:
        return _rref_compiled(a, p)
    return _rref_py.rref_modp(a, p)


class DimensionMismatch(ValueError):
    pass


def _rref_fractions(rows: list, ncols: int):
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        piv = m[r][c]
        if piv != 1:
            inv = 1 / piv
            m[r] = [x * inv for x in m[r]]
        prow = m[r]
        nzj = [j for j in range(c, ncols) if prow[j] != 0]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f != 0:
                    row = m[i]
                    for j in nzj:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return m, pivots


def rref_raw(field: Field, data, ncols: int):
    """RREF of raw storage (numpy array over GF(p), Fraction rows over QQ).

    Returns a fresh copy and the pivot list; the input is untouched.
    """
    if isinstance(field, PrimeField):
        a = np.array(data, dtype=np.int64, order="C", copy=True)
        if a.ndim != 2:
            a = a.reshape(-1, ncols)
        pivots = rref_modp(a, field.p)
        return a, pivots
    return _rref_fractions(data, ncols)


def rank_raw(field: Field, data, ncols: int) -> int:
    if len(data) == 0 or ncols == 0:
        return 0
    return len(rref_raw(field, data, ncols)[1])


def kernel_from_rref(field: Field, red, pivots: Sequence[int], ncols: int) -> list:
    """Canonical right-kernel basis: one vector per free column, in column order.

    Each vector has a 1 in its free column, zeros in the other free columns and
    minus the RREF column entries in the pivot positions.
    """
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    if isinstance(field, PrimeField):
        p = field.p
        for f in free:
            v = np.zeros(ncols, dtype=np.int64)
            v[f] = 1
            for i, pc in enumerate(pivots):
                v[pc] = (-int(red[i][f])) % p
            basis.append(v)
    else:
        for f in free:
            v = [Fraction(0)] * ncols
            v[f] = Fraction(1)
            for i, pc in enumerate(pivots):
                v[pc] = -red[i][f]
            basis.append(v)
    return basis


def kernel_raw(field: Field, data, ncols: int) -> list:
    if len(data) == 0:
        if isinstance(field, PrimeField):
            return [np.eye(1, ncols, k, dtype=np.int64)[0] for k in range(ncols)]
        return [[Fraction(int(i == k)) for i in range(ncols)] for k in range(ncols)]
    red, piv = rref_raw(field, data, ncols)
    return kernel_from_rref(field, red, piv, ncols)


class ExactMatrix:
    """Immutable dense matrix over QQ or GF(p)."""

    __slots__ = ("field", "nrows", "ncols", "_data")

    def __init__(self, field: Field, nrows: int, ncols: int, data):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if isinstance(field, PrimeField):
            arr = np.asarray(data, dtype=np.int64).reshape(nrows, ncols)
            arr = np.ascontiguousarray(arr)
            arr.setflags(write=False)
            self._data = arr
        else:
            self._data = tuple(tuple(r) for r in data)
            if len(self._data) != nrows or any(len(r) != ncols for r in self._data):
                raise DimensionMismatch("entry count != rows * cols")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        conv = [[field(x) for x in r] for r in rows]
        if isinstance(field, PrimeField):
            data = np.array([[x.v for x in r] for r in conv], dtype=np.int64).reshape(len(rows), ncols)
            return cls(field, len(rows), ncols, data)
        return cls(field, len(rows), ncols, conv)

    @classmethod
    def from_array(cls, field: PrimeField, arr: np.ndarray):
        arr = np.asarray(arr, dtype=np.int64) % field.p
        return cls(field, arr.shape[0], arr.shape[1], arr)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int):
        return cls.from_rows(field, [[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int):
        return cls.from_rows(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def raw(self):
        return self._data

    def __getitem__(self, ij):
        i, j = ij
        x = self._data[i][j]
        return Mod(int(x), self.field.p) if isinstance(self.field, PrimeField) else x

    def rows(self) -> list:
        return [[self[i, j] for j in range(self.ncols)] for i in range(self.nrows)]

    def row(self, i: int) -> list:
        return [self[i, j] for j in range(self.ncols)]

    def column(self, j: int) -> list:
        return [self[i, j] for i in range(self.nrows)]

    def transpose(self) -> "ExactMatrix":
        if isinstance(self.field, PrimeField):
            return ExactMatrix(self.field, self.ncols, self.nrows, self._data.T)
        return ExactMatrix(self.field, self.ncols, self.nrows, list(zip(*self._data)) if self.nrows else [[] for _ in range(self.ncols)])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} @ {other.field}")
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        if isinstance(self.field, PrimeField):
            p = self.field.p
            a = self._data.astype(object)
            b = other._data.astype(object)
            return ExactMatrix.from_array(self.field, np.array((a @ b) % p, dtype=np.int64))
        out = [[sum((self._data[i][k] * other._data[k][j] for k in range(self.ncols)), Fraction(0))
                for j in range(other.ncols)] for i in range(self.nrows)]
        return ExactMatrix(self.field, self.nrows, other.ncols, out)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.field != other.field or self.shape != other.shape:
            return False
        if isinstance(self.field, PrimeField):
            return bool(np.array_equal(self._data, other._data))
        return self._data == other._data

    def __hash__(self):
        if isinstance(self.field, PrimeField):
            return hash((self.field, self.shape, self._data.tobytes()))
        return hash((self.field, self.shape, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows())
        return f"ExactMatrix<{self.field} {self.nrows}x{self.ncols}>[{body}]"


def _check(m: ExactMatrix):
    if not isinstance(m, ExactMatrix):
        raise TypeError("expected ExactMatrix")
    if isinstance(m.field, PrimeField):
        return
    for r in m.raw:
        for x in r:
            if not isinstance(x, (int, Fraction)):
                raise FieldMismatch(f"QQ matrix holds {type(x).__name__}")


def mat_rref(m: ExactMatrix):
    """Reduced row echelon form and pivot columns (leftmost pivot, first nonzero row)."""
    _check(m)
    if m.nrows == 0 or m.ncols == 0:
        return m, []
    red, piv = rref_raw(m.field, m.raw, m.ncols)
    return ExactMatrix(m.field, m.nrows, m.ncols, red), list(piv)


def mat_rank(m: ExactMatrix) -> int:
    return len(mat_rref(m)[1])


def mat_kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Matrix whose columns are the canonical basis of the right kernel."""
    _check(m)
    vecs = kernel_raw(m.field, m.raw, m.ncols)
    if not vecs:
        return ExactMatrix(m.field, m.ncols, 0, np.zeros((m.ncols, 0), dtype=np.int64)
                           if isinstance(m.field, PrimeField) else [[] for _ in range(m.ncols)])
    if isinstance(m.field, PrimeField):
        return ExactMatrix(m.field, m.ncols, len(vecs), np.array(vecs, dtype=np.int64).T)
    return ExactMatrix(m.field, m.ncols, len(vecs), [list(r) for r in zip(*vecs)])


def mat_solve(m: ExactMatrix, rhs: Sequence):
    """Particular solution of ``m x = rhs`` with free variables zero, or None if inconsistent."""
    _check(m)
    if len(rhs) != m.nrows:
        raise DimensionMismatch(f"rhs of length {len(rhs)} for {m.nrows} rows")
    field = m.field
    rhs = [field(x) for x in rhs]
    aug_rows = [m.row(i) + [rhs[i]] for i in range(m.nrows)]
    aug = ExactMatrix.from_rows(field, aug_rows, m.ncols + 1)
    red, piv = mat_rref(aug)
    if piv and piv[-1] == m.ncols:
        return None
    x = [field.zero] * m.ncols
    for i, c in enumerate(piv):
        x[c] = red[i, m.ncols]
    return x
