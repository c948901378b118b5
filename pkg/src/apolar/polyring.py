"""Sparse multivariate polynomials in the primal ring S and the dual ring T.

S = k[x0..xn] holds forms, T = k[d0..dn] holds constant-coefficient
differential operators.  ``diff_apply`` lets T act on S by differentiation
and ``contract_apply`` is the mirror action of S on T.  All canonical bases use
one monomial order: graded lexicographic with x0 > x1 > ... .
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .exactcore import QQ, Field, FieldMismatch
from .exactcore.fields import PrimeField

PRIMAL = "S"
DUAL = "T"
_PREFIX = {PRIMAL: "x", DUAL: "d"}


class RingMismatch(ValueError):
    pass


def _order_key(e):
    return (sum(e), e)


@lru_cache(maxsize=None)
def _monomials(nvars: int, d: int) -> tuple:
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    # combinations_with_replacement is lex-ascending on the index multiset,
    # which is lex-descending on exponent vectors
    return tuple(out)


def monomial_basis(n: int, d: int) -> list:
    """Exponent vectors of degree ``d`` in ``n+1`` variables, graded-lex descending."""
    if d < 0:
        return []
    return list(_monomials(n + 1, d))


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict:
    return {e: i for i, e in enumerate(_monomials(n + 1, d))}


def exp_factorial(e) -> int:
    out = 1
    for a in e:
        out *= math.factorial(a)
    return out


class MPoly:
    """Polynomial as a dict from exponent tuples to nonzero field scalars."""

    __slots__ = ("field", "nvars", "ring", "_terms")

    def __init__(self, field: Field, nvars: int, terms=None, ring: str = PRIMAL):
        if ring not in (PRIMAL, DUAL):
            raise ValueError(f"ring tag must be S or T, got {ring!r}")
        self.field = field
        self.nvars = nvars
        self.ring = ring
        t = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has length != {nvars}")
                c = field(c)
                if e in t:
                    c = t[e] + c
                if c:
                    t[e] = c
                else:
                    t.pop(e, None)
        self._terms = t

    @classmethod
    def _raw(cls, field, nvars, terms, ring):
        obj = cls.__new__(cls)
        obj.field = field
        obj.nvars = nvars
        obj.ring = ring
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, field, nvars, ring=PRIMAL):
        return cls._raw(field, nvars, {}, ring)

    @classmethod
    def constant(cls, field, nvars, c, ring=PRIMAL):
        return cls(field, nvars, {(0,) * nvars: c}, ring)

    @classmethod
    def var(cls, field, nvars, i, ring=PRIMAL):
        e = [0] * nvars
        e[i] = 1
        return cls._raw(field, nvars, {tuple(e): field(1)}, ring)

    @classmethod
    def monomial(cls, field, exps, ring=PRIMAL, coeff=1):
        return cls(field, len(exps), {tuple(exps): coeff}, ring)

    @classmethod
    def linear(cls, field, coeffs: Sequence, ring=PRIMAL):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(field, n, terms, ring)

    # --- inspection -------------------------------------------------
    def terms(self) -> list:
        """(exponent, coefficient) pairs sorted by the global order, largest first."""
        return sorted(self._terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    def coeff(self, e) -> object:
        return self._terms.get(tuple(e), self.field.zero)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def leading(self):
        return max(self._terms.items(), key=lambda t: _order_key(t[0])) if self._terms else None

    def coefficient_vector(self, d: int | None = None) -> list:
        """Coordinates in ``monomial_basis(nvars-1, d)``; f must be homogeneous of degree d."""
        if d is None:
            d = self.degree()
        idx = monomial_index(self.nvars - 1, d)
        v = [self.field.zero] * len(idx)
        for e, c in self._terms.items():
            if sum(e) != d:
                raise ValueError(f"term {e} not of degree {d}")
            v[idx[e]] = c
        return v

    @classmethod
    def from_vector(cls, field, nvars, d, vec, ring=PRIMAL):
        basis = _monomials(nvars, d)
        return cls(field, nvars, {basis[i]: c for i, c in enumerate(vec) if c}, ring)

    # --- arithmetic -------------------------------------------------
    def _compat(self, o: "MPoly"):
        if self.field != o.field:
            raise FieldMismatch(f"{self.field} vs {o.field}")
        if self.nvars != o.nvars:
            raise RingMismatch(f"{self.nvars} vs {o.nvars} variables")
        if self.ring != o.ring:
            raise RingMismatch(f"ring {self.ring} vs {o.ring}")

    def _lift(self, o):
        if isinstance(o, MPoly):
            self._compat(o)
            return o
        return MPoly.constant(self.field, self.nvars, o, self.ring)

    def __add__(self, o):
        o = self._lift(o)
        t = dict(self._terms)
        for e, c in o._terms.items():
            v = t.get(e)
            v = c if v is None else v + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return MPoly._raw(self.field, self.nvars, t, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.field, self.nvars, {e: -c for e, c in self._terms.items()}, self.ring)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def scale(self, s) -> "MPoly":
        s = self.field(s)
        if not s:
            return MPoly.zero(self.field, self.nvars, self.ring)
        return MPoly._raw(self.field, self.nvars, {e: c * s for e, c in self._terms.items()}, self.ring)

    def __mul__(self, o):
        if not isinstance(o, MPoly):
            return self.scale(o)
        self._compat(o)
        t = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e)
                v = c1 * c2 if v is None else v + c1 * c2
                t[e] = v
        t = {e: c for e, c in t.items() if c}
        return MPoly._raw(self.field, self.nvars, t, self.ring)

    def __rmul__(self, o):
        return self.scale(o)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MPoly.constant(self.field, self.nvars, 1, self.ring)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        if isinstance(o, MPoly):
            return (self.field == o.field and self.nvars == o.nvars
                    and self.ring == o.ring and self._terms == o._terms)
        if not self._terms:
            return o == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.nvars, frozenset(self._terms.items())))

    def with_ring(self, ring: str) -> "MPoly":
        return MPoly._raw(self.field, self.nvars, dict(self._terms), ring)

    def normalized(self) -> "MPoly":
        """Scale so the leading coefficient is 1."""
        lead = self.leading()
        if lead is None:
            return self
        return self.scale(1 / lead[1])

    def __repr__(self):
        return f"MPoly<{self.ring},{self.field}>({format_poly(self)})"

    def __str__(self):
        return format_poly(self)


# --- apolarity actions -------------------------------------------------------

def _falling(beta, alpha) -> int:
    """alpha! * binom(beta, alpha) = prod beta_i! / (beta_i - alpha_i)!."""
    out = 1
    for b, a in zip(beta, alpha):
        if a > b:
            return 0
        for k in range(b - a + 1, b + 1):
            out *= k
    return out


def _act(op: MPoly, target: MPoly) -> dict:
    terms = {}
    for a, ca in op._terms.items():
        for b, cb in target._terms.items():
            w = _falling(b, a)
            if w:
                e = tuple(x - y for x, y in zip(b, a))
                v = terms.get(e)
                c = ca * cb * w
                terms[e] = c if v is None else v + c
    return {e: c for e, c in terms.items() if c}


def diff_apply(D: MPoly, f: MPoly) -> MPoly:
    """Apply the operator D in T to f in S by differentiation."""
    if D.ring != DUAL or f.ring != PRIMAL:
        raise RingMismatch("diff_apply expects D in T and f in S")
    if D.nvars != f.nvars:
        raise RingMismatch(f"{D.nvars} vs {f.nvars} variables")
    if D.field != f.field:
        raise FieldMismatch(f"{D.field} vs {f.field}")
    return MPoly._raw(f.field, f.nvars, _act(D, f), PRIMAL)


def contract_apply(g: MPoly, D: MPoly) -> MPoly:
    """Apply g in S to D in T: x^b(d^a) = b! binom(a, b) d^(a-b)."""
    if g.ring != PRIMAL or D.ring != DUAL:
        raise RingMismatch("contract_apply expects g in S and D in T")
    if D.nvars != g.nvars:
        raise RingMismatch(f"{g.nvars} vs {D.nvars} variables")
    if D.field != g.field:
        raise FieldMismatch(f"{g.field} vs {D.field}")
    return MPoly._raw(D.field, D.nvars, _act(g, D), DUAL)


@dataclass(frozen=True)
class LinearParam:
    """Linear substitution x_i -> sum_j coeffs[i][j] * z_j.

    ``coeffs`` has one row per source variable and one column per target
    variable.
    """

    coeffs: tuple
    field: Field = QQ
    target_ring: str = PRIMAL

    def __init__(self, coeffs, field=QQ, target_ring=PRIMAL):
        rows = tuple(tuple(field(c) for c in r) for r in coeffs)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged substitution grid")
        object.__setattr__(self, "coeffs", rows)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "target_ring", target_ring)

    @property
    def n_source(self) -> int:
        return len(self.coeffs)

    @property
    def n_target(self) -> int:
        return len(self.coeffs[0]) if self.coeffs else 0

    @classmethod
    def identity(cls, field, n, ring=PRIMAL):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], field, ring)


def substitute_linear(f: MPoly, phi: LinearParam) -> MPoly:
    """Pull f back along the linear substitution phi."""
    if phi.n_source != f.nvars:
        raise ValueError(f"substitution has {phi.n_source} sources, polynomial has {f.nvars} variables")
    if phi.field != f.field:
        raise FieldMismatch(f"{phi.field} vs {f.field}")
    m = phi.n_target
    ring = phi.target_ring
    images = [MPoly(f.field, m, {tuple(int(k == j) for k in range(m)): c
                                  for j, c in enumerate(row) if c}, ring)
              for row in phi.coeffs]
    powers: dict = {}

    def pw(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = images[i] ** k
        return powers[key]

    out = MPoly.zero(f.field, m, ring)
    for e, c in f._terms.items():
        term = MPoly.constant(f.field, m, c, ring)
        for i, k in enumerate(e):
            if k:
                term = term * pw(i, k)
        out = out + term
    return out


def power_of_linear(l: MPoly, d: int) -> MPoly:
    """Multinomial expansion of l**d for a linear form l."""
    if any(sum(e) != 1 for e in l._terms):
        raise ValueError("power_of_linear needs a linear form")
    c = [l.coeff(tuple(int(k == i) for k in range(l.nvars))) for i in range(l.nvars)]
    terms = {}
    fd = math.factorial(d)
    for e in _monomials(l.nvars, d):
        v = l.field(fd // exp_factorial(e))
        for ci, k in zip(c, e):
            if k:
                v = v * ci ** k
        if v:
            terms[e] = v
    return MPoly._raw(l.field, l.nvars, terms, l.ring)


def poly_eval(f: MPoly, point: Sequence):
    """Evaluate f at a point given as a sequence of scalars."""
    if len(point) != f.nvars:
        raise ValueError(f"point of length {len(point)} for {f.nvars} variables")
    pt = [f.field(x) for x in point]
    acc = f.field.zero
    for e, c in f._terms.items():
        v = c
        for x, k in zip(pt, e):
            if k:
                v = v * x ** k
        acc = acc + v
    return acc


# --- text format -------------------------------------------------------------

def _fmt_coeff(c) -> str:
    if hasattr(c, "lift"):
        return str(c.lift())
    return str(c)


def format_poly(f: MPoly) -> str:
    """Render using x0.. for S and d0.. for T; deterministic term order."""
    if not f._terms:
        return "0"
    pre = _PREFIX[f.ring]
    parts = []
    for e, c in f.terms():
        s = _fmt_coeff(c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        mono = "*".join(f"{pre}{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
        if mono:
            body = mono if s == "1" else f"{s}*{mono}"
        else:
            body = s
        parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class ParseError(ValueError):
    def __init__(self, msg, text, pos):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.column = col


_TOKEN = re.compile(r"\s*(?:(\d+)|([xd])(\d+)|(.))", re.S)


def _tokenize(text):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            toks.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("var", (m.group(2), int(m.group(3))), m.start(2)))
        elif m.group(4) is not None:
            ch = m.group(4)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, m.start(4))
            toks.append((ch, ch, m.start(4)))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


def parse_poly(text: str, field: Field, nvars: int | None = None, ring: str | None = None) -> MPoly:
    """Parse the text grammar: signed sums of terms ``[coeff][*]var^e[*var^e...]``.

    Coefficients are integers or ``a/b``; parentheses and powers of
    parenthesised sums are accepted too.  Variables ``x<i>`` put the result in
    S, ``d<i>`` in T; mixing the two is an error.
    """
    toks = _tokenize(text)
    prefixes = {t[1][0] for t in toks if t[0] == "var"}
    if len(prefixes) > 1:
        raise ParseError("mixes x and d variables", text, 0)
    if ring is None:
        ring = DUAL if prefixes == {"d"} else PRIMAL
    elif prefixes and _PREFIX[ring] not in prefixes:
        raise ParseError(f"expected {_PREFIX[ring]}-variables for ring {ring}", text, 0)
    top = max((t[1][1] for t in toks if t[0] == "var"), default=-1)
    if nvars is None:
        nvars = top + 1
    if top >= nvars:
        raise ParseError(f"variable index {top} out of range for {nvars} variables", text, 0)
    pos = [0]

    def peek():
        return toks[pos[0]]

    def take(kind=None):
        t = toks[pos[0]]
        if kind is not None and t[0] != kind:
            raise ParseError(f"expected {kind}, found {t[0]}", text, t[2])
        pos[0] += 1
        return t

    def const(c):
        if isinstance(field, PrimeField) and isinstance(c, Fraction):
            return MPoly.constant(field, nvars, field.from_rational(c), ring)
        return MPoly.constant(field, nvars, c, ring)

    def atom():
        t = peek()
        if t[0] == "num":
            take()
            num = t[1]
            if peek()[0] == "/" and toks[pos[0] + 1][0] == "num":
                take()
                den = take("num")
                if den[1] == 0:
                    raise ParseError("zero denominator", text, den[2])
                return const(Fraction(num, den[1]))
            return const(num)
        if t[0] == "var":
            take()
            return MPoly.var(field, nvars, t[1][1], ring)
        if t[0] == "(":
            take()
            e = expr()
            take(")")
            return e
        raise ParseError(f"unexpected {t[0]}", text, t[2])

    def factor():
        a = atom()
        if peek()[0] == "^":
            take()
            k = take("num")
            a = a ** k[1]
        return a

    def term():
        f = factor()
        while True:
            t = peek()
            if t[0] == "*":
                take()
                f = f * factor()
            elif t[0] in ("var", "("):
                f = f * factor()
            else:
                return f

    def expr():
        t = peek()
        sign = 1
        if t[0] in ("+", "-"):
            take()
            sign = -1 if t[0] == "-" else 1
        acc = term()
        if sign < 0:
            acc = -acc
        while peek()[0] in ("+", "-"):
            op = take()[0]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    if peek()[0] == "end":
        raise ParseError("empty polynomial", text, 0)
    out = expr()
    if peek()[0] != "end":
        t = peek()
        raise ParseError(f"trailing input {t[1]!r}", text, t[2])
    return out


def parse_point(text: str, field: Field) -> list:
    """Parse ``a,b,c`` (integers or a/b) into field scalars."""
    out = []
    for s in text.replace("(", "").replace(")", "").replace("[", "").replace("]", "").split(","):
        s = s.strip().replace(":", "")
        if not s:
            continue
        q = Fraction(s)
        out.append(field.from_rational(q) if isinstance(field, PrimeField) else field(q))
    return out


def parse_points(text: str, field: Field) -> list:
    """Semicolon-separated coordinate tuples."""
    return [parse_point(chunk, field) for chunk in text.split(";") if chunk.strip()]


def linear_forms_to_polys(points: Iterable[Sequence], field: Field, ring=PRIMAL) -> list:
    return [MPoly.linear(field, [field(c) for c in pt], ring) for pt in points]
