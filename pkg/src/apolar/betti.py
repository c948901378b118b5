"""Graded Betti numbers from Koszul strands.

An ideal is given degree by degree by an oracle.  For the quotient M = R/I the
number beta_{i,i+r} is the homology dimension of the strand

    L^(i+1) V (x) M_(r-1) -> L^i V (x) M_r -> L^(i-1) V (x) M_(r+1),

V being the span of the variables.  Only graded pieces and ranks are needed, so
no resolution or Groebner basis is ever built.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .apolarity import PointSet, as_form, catalecticant, evaluation_matrix
from .exactcore import ExactMatrix, Field, PrimeField, kernel_raw, rref_raw
from .polyring import DUAL, LinearParam, MPoly, monomial_basis, monomial_index, substitute_linear

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


def _dim(nvars: int, j: int) -> int:
    return math.comb(nvars - 1 + j, j) if j >= 0 else 0


def _zeros(field, r, c):
    if isinstance(field, PrimeField):
        return np.zeros((r, c), dtype=np.int64)
    return [[Fraction(0)] * c for _ in range(r)]


def _raw_rows(field, rows, ncols):
    if isinstance(field, PrimeField):
        if not len(rows):
            return np.zeros((0, ncols), dtype=np.int64)
        return np.array([[int(field(x)) for x in r] for r in rows], dtype=np.int64).reshape(len(rows), ncols)
    return [[field(x) for x in r] for r in rows]


def _nonzero_rows(field, red, rank):
    if isinstance(field, PrimeField):
        return np.ascontiguousarray(red[:rank])
    return [list(r) for r in red[:rank]]


@dataclass
class IdealPiece:
    """RREF basis rows of I_j and their pivot columns."""

    rows: object
    pivots: list
    ncols: int

    @property
    def dim(self) -> int:
        return len(self.pivots)


class GradedIdealOracle:
    """Base class: subclasses produce the degree-j piece of a homogeneous ideal."""

    field: Field
    nvars: int

    def __init__(self):
        self._cache: dict = {}

    def _spanning_rows(self, j: int):
        raise NotImplementedError

    def piece(self, j: int) -> IdealPiece:
        if j not in self._cache:
            ncols = _dim(self.nvars, j)
            rows = self._spanning_rows(j)
            if rows is None or len(rows) == 0:
                self._cache[j] = IdealPiece(_zeros(self.field, 0, ncols), [], ncols)
            else:
                red, piv = rref_raw(self.field, rows, ncols)
                self._cache[j] = IdealPiece(_nonzero_rows(self.field, red, len(piv)), list(piv), ncols)
        return self._cache[j]


class Points(GradedIdealOracle):
    """I_Gamma: kernel of evaluation at the points."""

    def __init__(self, points: PointSet):
        super().__init__()
        self.points = points
        self.field = points.field
        self.nvars = points.n + 1

    def _spanning_rows(self, j):
        m = evaluation_matrix(self.points, j)
        return _stack(self.field, kernel_raw(self.field, m.raw, m.ncols), m.ncols)


class Apolar(GradedIdealOracle):
    """F^perp: kernel of the catalecticant, everything above degree d."""

    def __init__(self, F):
        super().__init__()
        self.form = as_form(F)
        self.field = self.form.field
        self.nvars = self.form.n + 1

    def _spanning_rows(self, j):
        ncols = _dim(self.nvars, j)
        if j > self.form.d:
            return _raw_rows(self.field, np.eye(ncols, dtype=np.int64).tolist(), ncols)
        m = catalecticant(self.form, j)
        return _stack(self.field, kernel_raw(self.field, m.raw, m.ncols), m.ncols)


class Generators(GradedIdealOracle):
    """Ideal generated by homogeneous polynomials: span of all monomial multiples."""

    def __init__(self, gens: Sequence[MPoly], field: Field | None = None, nvars: int | None = None):
        super().__init__()
        gens = [g for g in gens if not g.is_zero()]
        if not gens and (field is None or nvars is None):
            raise ValueError("empty generator list needs field and nvars")
        self.gens = list(gens)
        self.field = field or gens[0].field
        self.nvars = nvars or gens[0].nvars
        for g in self.gens:
            if not g.is_homogeneous():
                raise ValueError("generators must be homogeneous")
            if g.nvars != self.nvars or g.field != self.field:
                raise ValueError("generators from different rings")

    def _spanning_rows(self, j):
        return _multiple_rows(self.field, self.gens, self.nvars, j)


class Sum(GradedIdealOracle):
    """base + (extra linear forms)."""

    def __init__(self, base: GradedIdealOracle, linear_forms: Sequence[MPoly]):
        super().__init__()
        self.base = base
        self.linear = list(linear_forms)
        self.field = base.field
        self.nvars = base.nvars
        for l in self.linear:
            if l.degree() != 1 or not l.is_homogeneous():
                raise ValueError("Sum takes linear forms")

    def _spanning_rows(self, j):
        ncols = _dim(self.nvars, j)
        base = self.base.piece(j).rows
        extra = _multiple_rows(self.field, self.linear, self.nvars, j)
        if isinstance(self.field, PrimeField):
            parts = [np.asarray(base).reshape(-1, ncols)]
            if len(extra):
                parts.append(np.asarray(extra).reshape(-1, ncols))
            return np.vstack(parts)
        return list(base) + list(extra)

    def parametrization(self) -> LinearParam:
        """Canonical basis of the common zero space V(linear forms) as a substitution."""
        rows = [l.coefficient_vector(1) for l in self.linear]
        raw = _raw_rows(self.field, rows, self.nvars)
        kern = kernel_raw(self.field, raw, self.nvars)
        cols = [[int(x) if isinstance(self.field, PrimeField) else x for x in v] for v in kern]
        grid = [[cols[j][i] for j in range(len(cols))] for i in range(self.nvars)]
        return LinearParam(grid, self.field, DUAL)

    def artinian_reduction(self) -> "Generators":
        """Base generators pulled back to V(linear forms): an isomorphic graded quotient."""
        if not isinstance(self.base, Generators):
            raise TypeError("artinian_reduction needs a Generators base")
        phi = self.parametrization()
        gens = [substitute_linear(g.with_ring(DUAL), phi) for g in self.base.gens]
        return Generators(gens, self.field, phi.n_target)


def _stack(field, vecs, ncols):
    if isinstance(field, PrimeField):
        return np.array(vecs, dtype=np.int64).reshape(len(vecs), ncols)
    return [list(v) for v in vecs]


def _multiple_rows(field, gens, nvars, j):
    ncols = _dim(nvars, j)
    idx = monomial_index(nvars - 1, j)
    out = []
    gf = isinstance(field, PrimeField)
    for g in gens:
        k = g.degree()
        if k > j:
            continue
        for m in monomial_basis(nvars - 1, j - k):
            row = [0] * ncols if gf else [Fraction(0)] * ncols
            for e, c in g.items():
                row[idx[tuple(a + b for a, b in zip(e, m))]] = int(c) if gf else c
            out.append(row)
    if gf:
        return np.array(out, dtype=np.int64).reshape(len(out), ncols) if out else np.zeros((0, ncols), dtype=np.int64)
    return out


def _reduce_oracle(o: GradedIdealOracle) -> GradedIdealOracle:
    if isinstance(o, Sum) and isinstance(o.base, Generators):
        return o.artinian_reduction()
    return o


def ideal_piece(o: GradedIdealOracle, j: int):
    """Canonical RREF basis of I_j as an ExactMatrix (one row per basis element)."""
    if j < 0:
        raise ValueError("negative degree")
    pc = o.piece(j)
    return ExactMatrix(o.field, pc.dim, pc.ncols, pc.rows)


def quotient_dims(o: GradedIdealOracle, j_max: int) -> tuple:
    """dim R_j - dim I_j for j = 0..j_max.

    A Sum of generators and linear forms is evaluated on the isomorphic quotient
    obtained by restricting to the zero space of the linear forms.
    """
    o = _reduce_oracle(o)
    return tuple(_dim(o.nvars, j) - o.piece(j).dim for j in range(j_max + 1))


class GradedQuotient:
    """M = R/I with standard monomials and multiplication maps."""

    def __init__(self, oracle: GradedIdealOracle):
        self.o = oracle
        self.field = oracle.field
        self.nvars = oracle.nvars
        self._std: dict = {}
        self._mult: dict = {}

    def std(self, j: int) -> list:
        if j < 0:
            return []
        if j not in self._std:
            pc = self.o.piece(j)
            piv = set(pc.pivots)
            self._std[j] = [c for c in range(pc.ncols) if c not in piv]
        return self._std[j]

    def dim(self, j: int) -> int:
        return len(self.std(j))

    def mult(self, k: int, j: int):
        """Matrix of multiplication by variable k from M_j to M_(j+1)."""
        key = (k, j)
        if key in self._mult:
            return self._mult[key]
        src = self.std(j)
        tgt = self.std(j + 1)
        tpos = {c: i for i, c in enumerate(tgt)}
        pc = self.o.piece(j + 1)
        prow = {c: i for i, c in enumerate(pc.pivots)}
        monos = monomial_basis(self.nvars - 1, j)
        idx1 = monomial_index(self.nvars - 1, j + 1)
        gf = isinstance(self.field, PrimeField)
        M = _zeros(self.field, len(tgt), len(src))
        if gf and len(tgt):
            tarr = np.array(tgt, dtype=np.int64)
        for s, c in enumerate(src):
            e = list(monos[c])
            e[k] += 1
            c1 = idx1[tuple(e)]
            if c1 in tpos:
                M[tpos[c1]][s] = 1
            else:
                row = pc.rows[prow[c1]]
                if gf:
                    M[:, s] = (-np.asarray(row)[tarr]) % self.field.p
                else:
                    for i, t in enumerate(tgt):
                        M[i][s] = -row[t]
        self._mult[key] = M
        return M


def _koszul_matrix(Q: GradedQuotient, i: int, r: int, budget: int):
    """d: L^i V (x) M_r -> L^(i-1) V (x) M_(r+1); None when a side is zero."""
    n = Q.nvars
    if i <= 0 or i > n:
        return None
    ms, mt = Q.dim(r), Q.dim(r + 1)
    dom = list(combinations(range(n), i))
    cod = list(combinations(range(n), i - 1))
    ncols, nrows = len(dom) * ms, len(cod) * mt
    if ncols == 0 or nrows == 0:
        return None
    if ncols * nrows > budget:
        raise BudgetExceeded(
            f"Koszul strand (i={i}, r={r}) needs a {nrows}x{ncols} matrix "
            f"(> {budget} entries); compute on an Artinian reduction instead "
            f"(Sum oracle with general linear forms)")
    cpos = {S: t for t, S in enumerate(cod)}
    gf = isinstance(Q.field, PrimeField)
    D = _zeros(Q.field, nrows, ncols)
    for b, S in enumerate(dom):
        for t, k in enumerate(S):
            rest = S[:t] + S[t + 1:]
            a = cpos[rest]
            blk = Q.mult(k, r)
            sign = -1 if t % 2 else 1
            if gf:
                D[a * mt:(a + 1) * mt, b * ms:(b + 1) * ms] = (sign * blk) % Q.field.p
            else:
                for x in range(mt):
                    for y in range(ms):
                        D[a * mt + x][b * ms + y] = sign * blk[x][y]
    return D, nrows, ncols


@dataclass
class BettiTable:
    """beta[i][r] = beta_{i, i+r}; rendered with rows r and columns i."""

    beta: list
    meta: dict = dc_field(default_factory=dict)

    @property
    def i_max(self) -> int:
        return len(self.beta) - 1

    @property
    def r_max(self) -> int:
        return len(self.beta[0]) - 1 if self.beta else -1

    def get(self, i: int, j: int) -> int:
        """beta_{i,j} in the usual (homological, internal degree) indexing."""
        r = j - i
        if 0 <= i < len(self.beta) and 0 <= r < len(self.beta[i]):
            return self.beta[i][r]
        return 0

    def rows(self, trim: bool = True) -> list:
        """Rows r of the display, each a list over i."""
        grid = [[self.beta[i][r] for i in range(len(self.beta))] for r in range(self.r_max + 1)]
        if trim:
            while grid and not any(grid[-1]):
                grid.pop()
            last = max((i for row in grid for i, x in enumerate(row) if x), default=0)
            grid = [row[:last + 1] for row in grid]
        return grid

    def render(self) -> str:
        grid = self.rows()
        cells = [["-" if x == 0 else str(x) for x in row] for row in grid]
        w = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(w) for c in row) for row in cells)

    def to_json(self) -> str:
        return json.dumps({"convention": "rows r, columns i, entry beta_{i,i+r}",
                           "rows": self.rows(), "meta": self.meta}, sort_keys=True)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BettiTable":
        width = max(len(r) for r in rows)
        grid = [list(r) + [0] * (width - len(r)) for r in rows]
        return cls([[grid[r][i] for r in range(len(grid))] for i in range(width)])

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.rows() == other.rows()

    def __str__(self):
        return self.render()


def parse_display(text: str) -> BettiTable:
    """Parse a display like ``"1 - -; - 3 2"`` (rows separated by ';' or newlines)."""
    rows = []
    for line in text.replace(";", "\n").splitlines():
        toks = line.split()
        if toks:
            rows.append([0 if t in ("-", "−") else int(t) for t in toks])
    return BettiTable.from_rows(rows)


def koszul_betti(o: GradedIdealOracle, i_max: int | None = None, r_max: int = 3,
                 budget: int = DEFAULT_BUDGET) -> BettiTable:
    """Betti table of R/I for i <= i_max, r <= r_max.

    A Sum of generators and general linear forms is evaluated on its Artinian
    reduction, whose table over the smaller polynomial ring is the table of the
    original ring when the linear forms form a regular sequence.
    """
    o = _reduce_oracle(o)
    Q = GradedQuotient(o)
    n = Q.nvars
    if i_max is None:
        i_max = n
    ranks: dict = {}

    def rank(i, r):
        if r < 0 or i <= 0 or i > n:
            return 0
        if (i, r) not in ranks:
            km = _koszul_matrix(Q, i, r, budget)
            if km is None:
                ranks[(i, r)] = 0
            else:
                D, nrows, ncols = km
                ranks[(i, r)] = len(rref_raw(Q.field, D, ncols)[1])
        return ranks[(i, r)]

    beta = []
    for i in range(i_max + 1):
        col = []
        for r in range(r_max + 1):
            size = math.comb(n, i) * Q.dim(r) if 0 <= i <= n else 0
            col.append(size - rank(i, r) - rank(i + 1, r - 1) if size else 0)
        beta.append(col)
    return BettiTable(beta, {"nvars": n, "field": str(o.field)})


def hilbert_numerator(table: BettiTable) -> dict:
    """K(t) = sum_i (-1)^i beta_{i,j} t^j as {j: coefficient}."""
    K: dict = {}
    for i, col in enumerate(table.beta):
        for r, b in enumerate(col):
            if b:
                K[i + r] = K.get(i + r, 0) + (-1) ** i * b
    return {j: c for j, c in K.items() if c}


class TableInconsistent(ValueError):
    pass


def degree_from_betti(table: BettiTable, codim: int) -> Fraction:
    """Degree (-1)^c K^(c)(1)/c! of the module resolved by ``table``."""
    K = hilbert_numerator(table)
    # coefficients of K(1+s): sum_j k_j binom(j, m)
    taylor = [sum(c * math.comb(j, m) for j, c in K.items()) for m in range(codim + 1)]
    if any(taylor[m] for m in range(codim)):
        raise TableInconsistent(f"table inconsistent with codim {codim}: Taylor coefficients {taylor}")
    return Fraction((-1) ** codim * taylor[codim])


def euler_check(table: BettiTable, dims: Sequence[int], nvars: int, upto: int) -> bool:
    """Compare sum_i (-1)^i beta_{i,j} with the numerator of the Hilbert series for j <= upto."""
    K = hilbert_numerator(table)
    for j in range(upto + 1):
        h = sum((-1) ** k * math.comb(nvars, k) * dims[j - k] for k in range(min(j, nvars) + 1) if j - k < len(dims))
        if h != K.get(j, 0):
            return False
    return True
