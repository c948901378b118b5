"""Sylvester's algorithm for binary forms.

For a binary form f the apolar ideal is a complete intersection (a, b).  When
the lower-degree generator a has distinct roots in the base field, those roots
are the points of the unique shortest power-sum presentation of f.  Roots are
found exactly: by scanning all of GF(p), or by rational-root enumeration over
QQ.  Anything else is reported as an obstruction rather than approximated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .apolarity import (
    Form,
    NotPresentable,
    PointSet,
    PreconditionError,
    apolar_piece,
    as_form,
    powersum_lambda,
)
from .exactcore import PrimeField
from .polyring import DUAL, PRIMAL, MPoly, diff_apply, power_of_linear

MAX_SCAN_PRIME = 2**20

EXACT = "exact"
GENERATOR_ONLY = "generator-only"
REPEATED_ROOT = "repeated root"
IRREDUCIBLE_FACTOR = "irreducible factor"


@dataclass
class BinaryDecomposition:
    generator: MPoly
    roots: list
    lambdas: list
    status: str
    obstruction: str | None = None

    @property
    def summands(self) -> int:
        return len(self.roots) if self.status == EXACT else 0

    def reconstruct(self, d: int) -> MPoly:
        field = self.generator.field
        f = MPoly.zero(field, 2, PRIMAL)
        for lam, r in zip(self.lambdas, self.roots):
            f = f + power_of_linear(MPoly.linear(field, r, PRIMAL), d).scale(lam)
        return f


# --- univariate helpers (coefficient lists, low degree first) ---------------

def _trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _deriv(a):
    return _trim([a[i] * i for i in range(1, len(a))])


def _divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    q = [0 * b[-1]] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] = a[i + k] - c * y
        a = _trim(a)
    return q, a


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return a


def _binary_coeffs(a: MPoly) -> list:
    """a(1, t) as a coefficient list in t (low first); also the degree k of a."""
    k = a.degree()
    return [a.coeff((k - i, i)) for i in range(k + 1)], k


def _roots_gfp(coeffs, p: int) -> list:
    if p > MAX_SCAN_PRIME:
        raise PreconditionError(f"root scan refuses p > 2^20 (got {p})")
    t = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * t + int(c)) % p
    return [int(x) for x in np.flatnonzero(acc == 0)]


def _divisors(n: int) -> list:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i * i != n:
                out.append(n // i)
        i += 1
    return out


def _roots_qq(coeffs) -> list:
    coeffs = [Fraction(c) for c in coeffs]
    roots = []
    while coeffs and coeffs[0] == 0:
        if 0 not in roots:
            roots.append(Fraction(0))
        coeffs = coeffs[1:]
    coeffs = _trim(coeffs)
    if len(coeffs) <= 1:
        return roots
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // np.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    cands = {Fraction(s * u, v) for u in _divisors(ints[0]) for v in _divisors(ints[-1]) for s in (1, -1)}
    for r in sorted(cands):
        if sum(c * r ** i for i, c in enumerate(coeffs)) == 0:
            roots.append(r)
    return roots


def _split_binary(a: MPoly):
    """Projective roots of a binary form, or an obstruction string."""
    field = a.field
    g, k = _binary_coeffs(a)
    g = _trim(g)
    at_infinity = k - (len(g) - 1)
    if at_infinity > 1:
        return None, REPEATED_ROOT
    if len(g) > 1 and len(_gcd(g, _deriv(g))) > 1:
        return None, REPEATED_ROOT
    if isinstance(field, PrimeField):
        ts = [field(t) for t in _roots_gfp(g, field.p)]
    else:
        ts = _roots_qq(g)
    roots = [(field.one, t) for t in ts]
    if at_infinity == 1:
        roots.append((field.zero, field.one))
    if len(roots) < k:
        return None, IRREDUCIBLE_FACTOR
    return roots, None


# --- public operations ---------------------------------------------------------

def _require_binary(F) -> Form:
    F = as_form(F)
    if F.n != 1:
        raise PreconditionError("binary forms only (n = 1)")
    F.field.require_char_above(F.d)
    return F


def binary_apolar_generators(F):
    """(deg a, deg b, a): a spans the first nonzero piece of F^perp."""
    F = _require_binary(F)
    for e in range(1, F.d + 2):
        if e > F.d:
            a = MPoly.monomial(F.field, (0, e), DUAL)
            return e, F.d + 2 - e, a
        piece = apolar_piece(F, e)
        if piece:
            return e, F.d + 2 - e, piece[0]
    raise AssertionError("unreachable")


def decompose_binary(F, generator: MPoly | None = None) -> BinaryDecomposition:
    """Power-sum presentation from the roots of an apolar generator.

    ``generator`` overrides the minimal-degree generator; it must annihilate f.
    """
    F = _require_binary(F)
    if generator is None:
        _, _, a = binary_apolar_generators(F)
    else:
        a = generator
        if a.ring != DUAL or a.nvars != 2 or not a.is_homogeneous():
            raise ValueError("generator must be a binary form in T")
        if not diff_apply(a, F.f).is_zero():
            raise ValueError("generator does not annihilate f")
    roots, why = _split_binary(a)
    if roots is None:
        return BinaryDecomposition(a, [], [], GENERATOR_ONLY, why)
    try:
        ps = powersum_lambda(F, PointSet(F.field, roots))
    except NotPresentable:
        return BinaryDecomposition(a, roots, [], GENERATOR_ONLY, "not presentable")
    if ps.solution_dim != 0:
        return BinaryDecomposition(a, roots, ps.lambdas, GENERATOR_ONLY, "non-unique coefficients")
    lambdas = ps.lambdas
    keep = [(r, lam) for r, lam in zip(roots, lambdas) if lam]
    return BinaryDecomposition(a, [r for r, _ in keep], [lam for _, lam in keep], EXACT)


@dataclass
class PencilDescription:
    basis: list
    samples: list
    attempts: int
    members: list = dc_field(default_factory=list)


def decompose_even_binary(F, samples: int = 5, seed: int = 0, max_attempts: int = 400) -> PencilDescription:
    """For d = 2k: the pencil (F^perp)_(k+1) and decompositions of split members."""
    F = _require_binary(F)
    if F.d % 2:
        raise PreconditionError("even degree required")
    k = F.d // 2
    if apolar_piece(F, k):
        raise PreconditionError("non-generic Hilbert function: F^perp has a generator of degree <= k")
    pencil = apolar_piece(F, k + 1)
    if len(pencil) != 2:
        raise PreconditionError(f"non-generic Hilbert function: dim (F^perp)_{k + 1} = {len(pencil)}")
    a, b = pencil
    rng = random.Random(seed)
    field = F.field
    found, members = [], []
    attempts = 0
    candidates = [b, a]
    while len(found) < samples and attempts < max_attempts:
        if candidates:
            member = candidates.pop()
        else:
            member = a + b.scale(field.random(rng) if isinstance(field, PrimeField)
                                 else rng.randint(-50, 50))
        attempts += 1
        if member.is_zero():
            continue
        dec = decompose_binary(F, generator=member)
        members.append(dec)
        if dec.status == EXACT:
            if dec.reconstruct(F.d) != F.f:
                raise AssertionError("pencil member decomposition failed verification")
            found.append(dec)
    return PencilDescription([a, b], found, attempts, members)


@dataclass
class WaringSearch:
    found: BinaryDecomposition | None
    attempts: int


def waring_upper_bound_search(F, attempts: int = 2000, seed: int = 0) -> WaringSearch:
    """Randomised search in (F^perp)_d for an element with distinct split roots.

    Success yields a presentation with at most d summands.  Failure is
    reported, not raised.
    """
    F = _require_binary(F)
    field = F.field
    if isinstance(field, PrimeField) and field.p <= F.d ** 2:
        raise PreconditionError("needs p > d^2")
    basis = apolar_piece(F, F.d)
    rng = random.Random(seed)
    for t in range(1, attempts + 1):
        g = MPoly.zero(field, 2, DUAL)
        for q in basis:
            g = g + q.scale(field.random(rng))
        if g.is_zero():
            continue
        dec = decompose_binary(F, generator=g)
        if dec.status == EXACT:
            return WaringSearch(dec, t)
    return WaringSearch(None, attempts)


def zeta_decomposition_points(field: PrimeField, d: int) -> list:
    """Points [z^j : z^(jd+j)], j = 1..d, for z a primitive d^2-th root of unity."""
    p = field.p
    n = d * d
    if (p - 1) % n:
        raise PreconditionError(f"GF({p}) has no primitive {n}-th root of unity")
    for g in range(2, p):
        z = pow(g, (p - 1) // n, p)
        if all(pow(z, n // q, p) != 1 for q in _prime_factors(n)):
            break
    return [(field(pow(z, j, p)), field(pow(z, j * d + j, p))) for j in range(1, d + 1)]


def _prime_factors(n: int) -> list:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out
