"""The ten-dimensional spinor variety in P^15.

Coordinates are indexed by the even subsets of {1,...,5}: the empty set (x0),
the ten pairs and the five 4-sets.  The ten quadrics below cut out the variety;
the first five solve for the 4-set coordinates as Pfaffians of a skew 5x5
matrix, the last five are the syzygies among those Pfaffians.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .apolarity import Form, SocleError, apolar_piece, dual_socle_generator, quadratic_relation
from .betti import Generators, Sum, quotient_dims
from .exactcore import (
    GF, QQ, CharacteristicError, ExactMatrix, Field, Mod, PrimeField, mat_kernel_basis, mat_rank, mat_solve,
    rank_raw,
)
from .polyring import DUAL, PRIMAL, MPoly, poly_eval, substitute_linear

NAMES = ("0", "12", "13", "14", "15", "23", "24", "25", "34", "35", "45",
         "2345", "1345", "1245", "1235", "1234")
INDEX = {name: k for k, name in enumerate(NAMES)}
SUBSETS = tuple(tuple(int(ch) for ch in name) if name != "0" else () for name in NAMES)
NVARS = 16

QUADRIC_TEXT = """\
q1+ = x0*x2345 + x23*x45 - x24*x35 + x34*x25
q2+ = x0*x1345 - x13*x45 + x14*x35 - x34*x15
q3+ = x0*x1245 + x12*x45 - x14*x25 + x24*x15
q4+ = x0*x1235 - x12*x35 + x13*x25 - x23*x15
q5+ = x0*x1234 + x12*x34 - x13*x24 + x23*x14
q1- = x12*x1345 + x13*x1245 + x14*x1235 + x15*x1234
q2- = -x12*x2345 + x23*x1245 + x24*x1235 + x1234*x25
q3- = -x13*x2345 - x23*x1345 + x34*x1235 + x1234*x35
q4- = -x14*x2345 - x24*x1345 - x34*x1245 + x1234*x45
q5- = -x15*x2345 - x25*x1345 - x35*x1245 - x1235*x45
"""

QUADRIC_SHA256 = hashlib.sha256(QUADRIC_TEXT.encode()).hexdigest()

# A coordinate P^7: these eight coordinates vanish on it.
FIBER_ZERO = ("12", "1345", "13", "1245", "14", "1235", "15", "1234")


class BasePointError(ValueError):
    pass


class SectionError(RuntimeError):
    pass


def _parse_quadric(rhs: str, field: Field) -> MPoly:
    terms = {}
    for tok in rhs.replace("-", "+-").split("+"):
        tok = tok.strip()
        if not tok:
            continue
        sign = -1 if tok.startswith("-") else 1
        a, b = (v.replace("-", "").strip().lstrip("x") for v in tok.split("*"))
        e = [0] * NVARS
        e[INDEX[a]] += 1
        e[INDEX[b]] += 1
        terms[tuple(e)] = terms.get(tuple(e), 0) + sign
    return MPoly(field, NVARS, terms, PRIMAL)


def spinor_quadrics(field: Field) -> list:
    """(q1+, ..., q5+, q1-, ..., q5-) over ``field``."""
    out = []
    for line in QUADRIC_TEXT.splitlines():
        _, rhs = line.split("=")
        out.append(_parse_quadric(rhs, field))
    return out


def quadric_names() -> list:
    return [line.split("=")[0].strip() for line in QUADRIC_TEXT.splitlines()]


def pfaffian4(a: dict, i: int, j: int, k: int, l: int):
    return a[(i, j)] * a[(k, l)] - a[(i, k)] * a[(j, l)] + a[(i, l)] * a[(j, k)]


def skew_from_list(field: Field, values: Sequence) -> dict:
    """The ten entries a_ij (i < j) in the order 12,13,...,45."""
    pairs = list(combinations(range(1, 6), 2))
    if len(values) != 10:
        raise ValueError("a skew 5x5 matrix has 10 independent entries")
    return {ij: field(v) for ij, v in zip(pairs, values)}


def complement_sign(S: tuple) -> int:
    """(-1)^m for the 4-set S = {1..5} minus {m}; 1 for smaller sets.

    The quadrics solve x_S = (-1)^m Pfaff_S(A) on x0 = 1, and the exterior
    power 1 + A + A^A/2 carries +Pfaff_S on e_S; this sign converts between them.
    """
    if len(S) != 4:
        return 1
    m = 15 - sum(S)
    return -1 if m % 2 else 1


def exp_point(field: Field, a) -> list:
    """(1, a_ij, +-Pfaff_ijkl(A)) in the fixed coordinate order.

    The 4-set coordinates carry the complement sign so the point satisfies the
    ten quadrics as written.
    """
    if not isinstance(a, dict):
        a = skew_from_list(field, a)
    out = []
    for S in SUBSETS:
        if len(S) == 0:
            out.append(field.one)
        elif len(S) == 2:
            out.append(a[S])
        else:
            out.append(pfaffian4(a, *S) * complement_sign(S))
    return out


def on_spinor(point: Sequence, field: Field | None = None) -> bool:
    field = field or _field_of(point)
    return all(not poly_eval(q, point) for q in spinor_quadrics(field))


def _field_of(point):
    for x in point:
        if isinstance(x, Mod):
            return GF(x.p)
    return QQ


def vplus(point: Sequence, field: Field | None = None) -> list:
    """(q1+(p), ..., q5+(p), q1-(p), ..., q5-(p)); undefined on the variety."""
    field = field or _field_of(point)
    y = [poly_eval(q, point) for q in spinor_quadrics(field)]
    if not any(y):
        raise BasePointError("base point: the point lies on the spinor variety")
    return y


def hyperbolic_form(y: Sequence):
    return sum((y[i] * y[i + 5] for i in range(5)), y[0] * 0)


# --- Clifford multiplication ------------------------------------------------

ODD = tuple([(i,) for i in range(1, 6)] + list(combinations(range(1, 6), 3)) + [(1, 2, 3, 4, 5)])
_ODD_INDEX = {S: k for k, S in enumerate(ODD)}
# column k < 5: contraction by e*_(k+1); column k >= 5: wedge with e_(k-4).
# With the complement sign on 4-set coordinates no column needs a sign flip for
# the kernel to be proportional to vplus; the hook stays for sign experiments.
COLUMN_SIGNS = (1,) * 10


def _wedge(i: int, S: tuple):
    if i in S:
        return None, 0
    sign = -1 if sum(1 for s in S if s < i) % 2 else 1
    return tuple(sorted(S + (i,))), sign


def _contract(i: int, S: tuple):
    if i not in S:
        return None, 0
    pos = S.index(i)
    return S[:pos] + S[pos + 1:], (-1 if pos % 2 else 1)


def clifford_matrix(point: Sequence, field: Field | None = None,
                    signs: Sequence[int] = COLUMN_SIGNS) -> ExactMatrix:
    """16x10 matrix of w -> w.a from the isotropic 10-space to odd forms.

    Rows follow the odd subsets (singletons, triples, the full set); columns
    are e*_1..e*_5 then e_1..e_5.
    """
    field = field or _field_of(point)
    x = [field(v) * complement_sign(S) for v, S in zip(point, SUBSETS)]
    M = [[field.zero] * 10 for _ in range(16)]
    for col in range(10):
        i = col % 5 + 1
        op = _contract if col < 5 else _wedge
        for S, c in zip(SUBSETS, x):
            if not c:
                continue
            T, s = op(i, S)
            if T is not None:
                M[_ODD_INDEX[T]][col] = M[_ODD_INDEX[T]][col] + c * (s * signs[col])
    return ExactMatrix.from_rows(field, M, 10)


def clifford_kernel(point: Sequence, field: Field | None = None) -> list:
    K = mat_kernel_basis(clifford_matrix(point, field))
    return [K.column(j) for j in range(K.ncols)]


def jacobian_rank(point: Sequence, field: Field | None = None) -> int:
    field = field or _field_of(point)
    rows = []
    for q in spinor_quadrics(field):
        row = []
        for v in range(NVARS):
            terms = {}
            for e, c in q.items():
                if e[v]:
                    f = list(e)
                    f[v] -= 1
                    terms[tuple(f)] = c * e[v]
            row.append(poly_eval(MPoly(field, NVARS, terms, PRIMAL), point) if terms else field.zero)
        rows.append(row)
    return mat_rank(ExactMatrix.from_rows(field, rows, NVARS))


# --- the coordinate P^7 ------------------------------------------------------

@dataclass
class FiberCheck:
    vanishing: list
    surviving: list
    surviving_rank: int


def fiber_p7(field: Field) -> FiberCheck:
    """Restrict the quadrics to the coordinate P^7 where FIBER_ZERO vanish."""
    zero = {INDEX[n] for n in FIBER_ZERO}
    names = quadric_names()
    vanishing, surviving, rank = [], [], -1
    for name, q in zip(names, spinor_quadrics(field)):
        r = MPoly(field, NVARS, {e: c for e, c in q.items() if not any(e[k] for k in zero)}, PRIMAL)
        if r.is_zero():
            vanishing.append(name)
        else:
            surviving.append(name)
            rank = quadric_rank(r)
    return FiberCheck(vanishing, surviving, rank)


def quadric_rank(q: MPoly) -> int:
    """Rank of the symmetric Gram matrix of a quadratic form (char != 2)."""
    field, n = q.field, q.nvars
    half = field.one / field(2)
    G = [[field.zero] * n for _ in range(n)]
    for e, c in q.items():
        idx = [k for k, m in enumerate(e) for _ in range(m)]
        i, j = idx
        if i == j:
            G[i][i] = G[i][i] + c
        else:
            G[i][j] = G[i][j] + c * half
            G[j][i] = G[j][i] + c * half
    return mat_rank(ExactMatrix.from_rows(field, G, n))


# --- linear sections and the dual cubic --------------------------------------

SECTION_HF = (1, 5, 5, 1, 0)
MAX_SECTION_RETRIES = 5


def require_section_field(field: Field) -> None:
    """The section pipeline runs apolarity for cubics and checks the quotient to degree 4."""
    if isinstance(field, PrimeField) and field.p <= 5:
        raise CharacteristicError(f"GF({field.p}) too small for the section pipeline (needs p > 5)")


@dataclass
class Section:
    forms: list
    hilbert: tuple
    seed: int
    retries: int
    rejected: list


def section_hilbert(field: Field, forms: Sequence[MPoly]) -> tuple:
    return quotient_dims(Sum(Generators(spinor_quadrics(field)), list(forms)), 4)


def random_section(seed: int, field: Field, forms: Sequence[MPoly] | None = None) -> Section:
    """Eleven random linear forms cutting a P^4 that misses the spinor variety.

    ``forms`` supplies the first draw (for adversarial tests); redraws come
    from the seeded generator.
    """
    require_section_field(field)
    rng = random.Random(seed)
    rejected = []
    for attempt in range(MAX_SECTION_RETRIES + 1):
        if attempt == 0 and forms is not None:
            hs = list(forms)
        else:
            hs = [MPoly.linear(field, [field.random(rng) for _ in range(NVARS)], PRIMAL) for _ in range(11)]
        hf = section_hilbert(field, hs)
        if hf == SECTION_HF:
            return Section(hs, hf, seed, attempt, rejected)
        rejected.append(hf)
    raise SectionError(f"retries exhausted: Hilbert functions {rejected}")


@dataclass
class DualCubic:
    form: Form
    quadrics: list
    param: object


def dual_cubic_from_section(section: Section | Sequence[MPoly], field: Field | None = None) -> DualCubic:
    """Cubic f in 5 variables whose apolar quadrics are the restricted spinor quadrics."""
    hs = section.forms if isinstance(section, Section) else list(section)
    field = field or hs[0].field
    if section_hilbert(field, hs) != SECTION_HF:
        raise SectionError("section not general: Hilbert function is not (1,5,5,1,0)")
    s = Sum(Generators(spinor_quadrics(field)), hs)
    phi = s.parametrization()
    J2 = [substitute_linear(q.with_ring(DUAL), phi) for q in spinor_quadrics(field)]
    rows = [q.coefficient_vector(2) for q in J2]
    if rank_raw(field, _raw(field, rows), 15) != 10:
        raise SectionError("section not general: restricted quadrics are dependent")
    try:
        f = dual_socle_generator(J2, 4, 3)
    except SocleError as exc:
        raise SectionError(f"section not general: {exc}") from exc
    perp = [q.coefficient_vector(2) for q in apolar_piece(f, 2)]
    if len(perp) != 10 or rank_raw(field, _raw(field, perp + rows), 15) != 10:
        raise SectionError("section not general: apolar quadrics differ from the restricted ones")
    return DualCubic(f, J2, phi)


def _raw(field, rows):
    if isinstance(field, PrimeField):
        return np.array([[int(field(c)) for c in r] for r in rows], dtype=np.int64)
    return [[field(c) for c in r] for r in rows]


def relation_matches_hyperbolic(dc: DualCubic) -> bool:
    """The quadratic relation of f equals C^T H C up to scalar.

    C expresses the restricted spinor quadrics in the canonical apolar basis and
    H is the Gram matrix of sum y_i y_(i+5).
    """
    f = dc.form
    field = f.field
    qr = quadratic_relation(f)
    if qr.dim != 1:
        return False
    B = [q.coefficient_vector(2) for q in apolar_piece(f, 2)]
    Bt = ExactMatrix.from_rows(field, B, 15).transpose()
    C = []
    for q in dc.quadrics:
        c = mat_solve(Bt, q.coefficient_vector(2))
        if c is None:
            return False
        C.append(c)
    Cm = ExactMatrix.from_rows(field, C, 10)
    half = field.one / field(2)
    H = [[half if abs(i - j) == 5 else field.zero for j in range(10)] for i in range(10)]
    G = Cm.transpose() @ ExactMatrix.from_rows(field, H, 10) @ Cm
    M = qr.matrix
    # proportionality: rank of the pair of flattened matrices is 1
    rows = [[G[i, j] for i in range(10) for j in range(10)], [M[i, j] for i in range(10) for j in range(10)]]
    return rank_raw(field, _raw(field, rows), 100) == 1


def section_point(dc: DualCubic, z: Sequence) -> list:
    """Image in P^15 of the point z of the section's P^4."""
    field = dc.form.field
    return [sum((c * field(v) for c, v in zip(row, z)), field.zero) for row in dc.param.coeffs]
