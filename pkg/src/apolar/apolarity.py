"""Catalecticants, apolar ideals and power-sum presentations.

A form f of degree d in S determines its apolar ideal F^perp in T (all operators
killing f).  Its degree-e piece is the kernel of the catalecticant, the matrix
of D -> D(f) from T_e to S_{d-e}.  A set of points Gamma in the dual space is
apolar to f when its ideal I_Gamma sits inside F^perp, which is exactly when f
is a linear combination of the d-th powers of the corresponding linear forms.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .exactcore import (
    ExactMatrix,
    Field,
    PrimeField,
    kernel_raw,
    mat_kernel_basis,
    mat_rank,
    mat_solve,
)
from .exactcore.fields import Mod
from .polyring import (
    DUAL,
    PRIMAL,
    MPoly,
    exp_factorial,
    monomial_basis,
    monomial_index,
    power_of_linear,
)

MAX_RETRIES = 5


class NotPresentable(ValueError):
    """f is not a linear combination of the given powers."""


class SocleError(ValueError):
    """The annihilator of an ideal piece in S_d is not one-dimensional."""


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Form:
    """A nonzero homogeneous form of degree d in n+1 variables."""

    f: MPoly

    def __post_init__(self):
        if self.f.ring != PRIMAL:
            raise ValueError("a Form lives in the primal ring S")
        if self.f.is_zero():
            raise ValueError("a Form must be nonzero")
        if not self.f.is_homogeneous():
            raise ValueError("a Form must be homogeneous")

    @property
    def n(self) -> int:
        return self.f.nvars - 1

    @property
    def d(self) -> int:
        return self.f.degree()

    @property
    def field(self) -> Field:
        return self.f.field


def as_form(F) -> Form:
    return F if isinstance(F, Form) else Form(F)


@dataclass(frozen=True)
class PointSet:
    """Points of the dual projective space, each a nonzero coordinate vector."""

    field: Field
    points: tuple
    allow_duplicates: bool = False

    def __init__(self, field: Field, points: Sequence[Sequence], allow_duplicates: bool = False):
        pts = tuple(tuple(field(c) for c in p) for p in points)
        if not pts:
            raise ValueError("empty point set")
        if len({len(p) for p in pts}) != 1:
            raise ValueError("points of different lengths")
        for p in pts:
            if not any(p):
                raise ValueError("zero vector is not a projective point")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "allow_duplicates", allow_duplicates)
        if not allow_duplicates:
            seen = set()
            for p in pts:
                key = _projective_key(p)
                if key in seen:
                    raise ValueError(f"repeated point {p}: non-reduced input is rejected")
                seen.add(key)

    @property
    def s(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return len(self.points[0]) - 1

    def linear_forms(self) -> list:
        return [MPoly.linear(self.field, p, PRIMAL) for p in self.points]

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def _projective_key(p) -> tuple:
    lead = next(c for c in p if c)
    return tuple(c / lead for c in p)


def _to_scalars(field: Field, vec) -> list:
    if isinstance(field, PrimeField):
        return [Mod(int(x), field.p) for x in vec]
    return list(vec)


def _matrix(field: Field, rows: list, ncols: int) -> ExactMatrix:
    if isinstance(field, PrimeField):
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), ncols) % field.p
        return ExactMatrix(field, len(rows), ncols, arr)
    return ExactMatrix(field, len(rows), ncols, rows)


def _entry(field, c):
    return int(c) if isinstance(field, PrimeField) else c


# --- catalecticants ----------------------------------------------------------

def catalecticant(F, e: int) -> ExactMatrix:
    """Matrix of D -> D(f) from T_e to S_(d-e) in the monomial bases.

    Columns are indexed by ``monomial_basis(n, e)`` and rows by
    ``monomial_basis(n, d-e)``.
    """
    F = as_form(F)
    n, d, field = F.n, F.d, F.field
    if not 0 <= e <= d:
        raise ValueError(f"e={e} outside 0..{d}")
    field.require_char_above(d)
    cols = monomial_index(n, e)
    rows_idx = monomial_index(n, d - e)
    zero = 0 if isinstance(field, PrimeField) else field.zero
    rows = [[zero] * len(cols) for _ in range(len(rows_idx))]
    col_monos = monomial_basis(n, e)
    for beta, c in F.f.items():
        cv = _entry(field, c)
        bf = exp_factorial(beta)
        for alpha in col_monos:
            if all(a <= b for a, b in zip(alpha, beta)):
                gamma = tuple(b - a for a, b in zip(alpha, beta))
                w = bf // exp_factorial(gamma)
                rows[rows_idx[gamma]][cols[alpha]] += cv * w
    return _matrix(field, rows, len(cols))


def apolar_piece(F, e: int) -> list:
    """Canonical basis of (F^perp)_e as operators in T."""
    F = as_form(F)
    m = catalecticant(F, e)
    basis = mat_kernel_basis(m)
    return [MPoly.from_vector(F.field, F.n + 1, e, basis.column(j), DUAL)
            for j in range(basis.ncols)]


def hilbert_function(F) -> tuple:
    """(h_0, ..., h_d) of A^F; h_e is the catalecticant rank in degree e."""
    F = as_form(F)
    return tuple(mat_rank(catalecticant(F, e)) for e in range(F.d + 1))


# --- inverse systems ---------------------------------------------------------

def _multiples_in_degree(gens: Sequence[MPoly], n: int, d: int) -> list:
    """Coefficient rows of every monomial multiple m*g of degree d."""
    rows = []
    idx = monomial_index(n, d)
    for g in gens:
        if g.is_zero():
            continue
        if not g.is_homogeneous():
            raise ValueError("ideal pieces must be homogeneous")
        k = g.degree()
        if k > d:
            continue
        for m in monomial_basis(n, d - k):
            row = [0] * len(idx)
            for e, c in g.items():
                row[idx[tuple(a + b for a, b in zip(e, m))]] = c
            rows.append(row)
    return rows


def dual_socle_generator(pieces: Sequence[MPoly], n: int, d: int) -> Form:
    """The form f in S_d killed by every degree-d multiple of ``pieces``.

    Raises :class:`SocleError` unless that annihilator is one-dimensional.  The
    result is scaled so its leading coefficient (graded lex) is 1.
    """
    if not pieces:
        raise SocleError("no ideal generators given")
    field = pieces[0].field
    field.require_char_above(d)
    for g in pieces:
        if g.ring != DUAL or g.nvars != n + 1:
            raise ValueError("pieces must be operators in T with n+1 variables")
    monos = monomial_basis(n, d)
    rows = _multiples_in_degree(pieces, n, d)
    if isinstance(field, PrimeField):
        rows = [[int(field(c)) for c in r] for r in rows]
    else:
        rows = [[field(c) for c in r] for r in rows]
    # D(f) = sum_alpha D_alpha f_alpha alpha!  on the monomial bases
    kern = kernel_raw(field, rows, len(monos)) if rows else kernel_raw(field, [], len(monos))
    if len(kern) != 1:
        raise SocleError(f"socle not 1-dimensional (annihilator has dim {len(kern)})")
    v = _to_scalars(field, kern[0])
    coeffs = [c / field(exp_factorial(a)) for c, a in zip(v, monos)]
    f = MPoly.from_vector(field, n + 1, d, coeffs, PRIMAL).normalized()
    return Form(f)


# --- points ------------------------------------------------------------------

def evaluation_matrix(points: PointSet, e: int) -> ExactMatrix:
    """Rows: points; columns: monomials of degree e evaluated there."""
    field = points.field
    monos = monomial_basis(points.n, e)
    rows = []
    for p in points:
        row = []
        for m in monos:
            v = field.one
            for x, k in zip(p, m):
                if k:
                    v = v * x ** k
            row.append(_entry(field, v))
        rows.append(row)
    return _matrix(field, rows, len(monos))


def ideal_of_points(points: PointSet, e: int) -> list:
    """Canonical basis of I_Gamma(e) as operators in T."""
    basis = mat_kernel_basis(evaluation_matrix(points, e))
    return [MPoly.from_vector(points.field, points.n + 1, e, basis.column(j), DUAL)
            for j in range(basis.ncols)]


def _ideal_points_dim(points: PointSet, e: int) -> int:
    m = evaluation_matrix(points, e)
    return m.ncols - mat_rank(m)


@dataclass
class ApolarityCertificate:
    apolar: bool
    failing_degree: int | None
    ideal_dims: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.apolar


def is_apolar(F, points: PointSet) -> ApolarityCertificate:
    """Check I_Gamma(e) inside (F^perp)_e for e = 1..d."""
    F = as_form(F)
    if points.n != F.n:
        raise ValueError("points and form live in different spaces")
    if points.field != F.field:
        raise ValueError("points and form over different fields")
    if points.allow_duplicates:
        raise ValueError("degenerate point set (repeated point) rejected")
    F.field.require_char_above(F.d)
    dims = {}
    for e in range(1, F.d + 1):
        ev = evaluation_matrix(points, e)
        kern = mat_kernel_basis(ev)
        dims[e] = kern.ncols
        if kern.ncols == 0:
            continue
        cat = catalecticant(F, e)
        prod = cat @ kern
        if any(prod[i, j] for i in range(prod.nrows) for j in range(prod.ncols)):
            return ApolarityCertificate(False, e, dims)
    return ApolarityCertificate(True, None, dims)


@dataclass
class PowerSum:
    lambdas: list
    solution_dim: int


def powersum_lambda(F, points: PointSet) -> PowerSum:
    """Solve f = sum lambda_i l_i^d; canonical solution (free variables zero)."""
    F = as_form(F)
    if points.n != F.n:
        raise ValueError("points and form live in different spaces")
    field, d = F.field, F.d
    cols = [power_of_linear(l, d).coefficient_vector(d) for l in points.linear_forms()]
    nrows = len(cols[0])
    A = ExactMatrix.from_rows(field, [[cols[j][i] for j in range(len(cols))] for i in range(nrows)], len(cols))
    x = mat_solve(A, F.f.coefficient_vector(d))
    if x is None:
        raise NotPresentable(f"f is not a combination of the {len(cols)} given {d}-th powers")
    return PowerSum(x, A.ncols - mat_rank(A))


# --- projection from partials -----------------------------------------------

def partial_projection(F, e: int):
    """Components of pi_e^F (a basis of (F^perp)_e) and n_e = dim - 1."""
    comps = apolar_piece(F, e)
    return comps, len(comps) - 1


MAX_FIBER_POINTS = 5 * 10**6


def _projective_points(p: int, nvars: int) -> np.ndarray:
    """All points of P^(nvars-1)(GF(p)), normalised so the last nonzero coordinate is 1."""
    blocks = []
    for lead in range(nvars):
        # coordinates after ``lead`` are 0, coordinate ``lead`` is 1, the rest free
        free = lead
        if free:
            grids = np.meshgrid(*[np.arange(p, dtype=np.int64)] * free, indexing="ij")
            pts = np.stack([g.ravel() for g in grids], axis=1)
        else:
            pts = np.zeros((1, 0), dtype=np.int64)
        ones = np.ones((pts.shape[0], 1), dtype=np.int64)
        zeros = np.zeros((pts.shape[0], nvars - lead - 1), dtype=np.int64)
        blocks.append(np.hstack([pts, ones, zeros]))
    return np.vstack(blocks)


def projection_fiber(F, e: int, point: Sequence) -> PointSet:
    """Every point of the dual projective space over GF(p) with the same image as ``point``.

    Plain enumeration, so only for small p and few variables.
    """
    F = as_form(F)
    field = F.field
    if not isinstance(field, PrimeField):
        raise PreconditionError("fiber enumeration needs a prime field")
    p, nv = field.p, F.n + 1
    total = sum(p ** k for k in range(nv))
    if total > MAX_FIBER_POINTS:
        raise PreconditionError(f"{total} points to enumerate; use a smaller prime")
    comps, _ = partial_projection(F, e)
    pts = _projective_points(p, nv)
    vals = np.zeros((pts.shape[0], len(comps)), dtype=np.int64)
    for k, q in enumerate(comps):
        acc = np.zeros(pts.shape[0], dtype=np.int64)
        for ex, c in q.items():
            term = np.full(pts.shape[0], int(c), dtype=np.int64)
            for i, a in enumerate(ex):
                for _ in range(a):
                    term = term * pts[:, i] % p
            acc = (acc + term) % p
        vals[:, k] = acc
    target = np.array([int(poly_eval_mod(q, point, field)) for q in comps], dtype=np.int64)
    if not target.any():
        raise PreconditionError("the point is a base point of the projection")
    # proportional to target: all 2x2 minors vanish and the value is nonzero
    ok = vals.any(axis=1)
    for a in range(len(comps)):
        for b in range(a + 1, len(comps)):
            ok &= (vals[:, a] * target[b] - vals[:, b] * target[a]) % p == 0
    return PointSet(field, [[int(x) for x in row] for row in pts[ok]])


def poly_eval_mod(q: MPoly, point: Sequence, field: Field):
    acc = field.zero
    for ex, c in q.items():
        v = c
        for x, a in zip(point, ex):
            if a:
                v = v * field(x) ** a
        acc = acc + v
    return acc


def gamma_span_dim(F, e: int, points: PointSet) -> int:
    """d_Gamma(e) = dim (F^perp)_e - dim I_Gamma(e) - 1 (Gamma apolar in degree e)."""
    F = as_form(F)
    cat = catalecticant(F, e)
    kern = mat_kernel_basis(evaluation_matrix(points, e))
    if kern.ncols:
        prod = cat @ kern
        if any(prod[i, j] for i in range(prod.nrows) for j in range(prod.ncols)):
            raise PreconditionError(f"points are not apolar to f in degree {e}")
    dim_perp = cat.ncols - mat_rank(cat)
    return dim_perp - kern.ncols - 1


# --- the quadratic relation among apolar quadrics ----------------------------

@dataclass
class QuadraticRelation:
    dim: int
    matrices: list
    ranks: list
    basis: list

    @property
    def matrix(self):
        return self.matrices[0] if self.dim == 1 else None

    @property
    def rank(self):
        return self.ranks[0] if self.dim == 1 else None


def relations_among_quadrics(quadrics: Sequence[MPoly]) -> QuadraticRelation:
    """Kernel of Sym^2(span) -> T_4, as symmetric Gram matrices.

    A kernel vector c (indexed by pairs i <= j) becomes the symmetric matrix M
    with q^T M q = sum c_ij q_i q_j.
    """
    field = quadrics[0].field
    nv = quadrics[0].nvars
    m = len(quadrics)
    pairs = [(i, j) for i in range(m) for j in range(i, m)]
    idx = monomial_index(nv - 1, 4)
    cols = []
    for i, j in pairs:
        cols.append((quadrics[i] * quadrics[j]).coefficient_vector(4))
    rows = [[_entry(field, cols[k][r]) for k in range(len(pairs))] for r in range(len(idx))]
    kern = kernel_raw(field, rows, len(pairs))
    half = field.one / field(2)
    mats, ranks = [], []
    for v in kern:
        v = _to_scalars(field, v)
        M = [[field.zero] * m for _ in range(m)]
        for c, (i, j) in zip(v, pairs):
            if i == j:
                M[i][i] = c
            else:
                M[i][j] = M[j][i] = c * half
        em = ExactMatrix.from_rows(field, M, m)
        mats.append(em)
        ranks.append(mat_rank(em))
    return QuadraticRelation(len(kern), mats, ranks, list(quadrics))


def quadratic_relation(F) -> QuadraticRelation:
    """Quadratic relations among the 10 apolar quadrics of a cubic with HF (1,5,5,1)."""
    F = as_form(F)
    if F.n != 4 or F.d != 3 or hilbert_function(F) != (1, 5, 5, 1):
        raise PreconditionError("needs a cubic in 5 variables with Hilbert function (1,5,5,1)")
    return relations_among_quadrics(apolar_piece(F, 2))


# --- random "general" objects ------------------------------------------------

def random_form(field: Field, n: int, d: int, rng: random.Random) -> Form:
    while True:
        terms = {e: field.random(rng) for e in monomial_basis(n, d)}
        f = MPoly(field, n + 1, terms, PRIMAL)
        if not f.is_zero():
            return Form(f)


def random_points(field: Field, n: int, s: int, rng: random.Random) -> PointSet:
    while True:
        pts = [[field.random(rng) for _ in range(n + 1)] for _ in range(s)]
        try:
            return PointSet(field, pts)
        except ValueError:
            continue


def sum_of_powers(points: PointSet, d: int, lambdas: Sequence | None = None) -> Form:
    field = points.field
    if lambdas is None:
        lambdas = [field.one] * points.s
    f = MPoly.zero(field, points.n + 1, PRIMAL)
    for lam, l in zip(lambdas, points.linear_forms()):
        f = f + power_of_linear(l, d).scale(lam)
    return Form(f)


def expected_general_hf(n: int, d: int) -> tuple:
    """Hilbert function of a general form: min(dim T_e, dim S_(d-e))."""
    return tuple(min(math.comb(n + e, e), math.comb(n + d - e, d - e)) for e in range(d + 1))


@dataclass
class GeneralDraw:
    form: Form
    seed: int
    retries: int
    certificate: tuple


def general_form(field: Field, n: int, d: int, seed: int, certificate=None) -> GeneralDraw:
    """Seeded random form, redrawn (at most 5 times) until it passes ``certificate``.

    The default certificate is the generic Hilbert function.
    """
    field.require_char_above(d)
    rng = random.Random(seed)
    want = expected_general_hf(n, d)
    check = certificate or (lambda F: hilbert_function(F) == want)
    for attempt in range(MAX_RETRIES + 1):
        F = random_form(field, n, d, rng)
        if check(F):
            return GeneralDraw(F, seed, attempt, hilbert_function(F))
    raise PreconditionError(f"no general form after {MAX_RETRIES} retries (seed {seed})")
