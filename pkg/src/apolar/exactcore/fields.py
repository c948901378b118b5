"""Exact scalar fields: the rationals and prime fields GF(p).

Rational scalars are plain :class:`fractions.Fraction` values.  Prime-field
scalars are :class:`Mod` instances that carry their modulus, so arithmetic
between residues of different primes (or between a residue and a non-integral
rational) raises :class:`FieldMismatch` instead of coercing silently.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache

DEFAULT_PRIME = 31991


class FieldMismatch(TypeError):
    """Scalars or containers from two different fields were combined."""


class CharacteristicError(ValueError):
    """The field characteristic is too small for the requested operation."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class Mod:
    """A residue class modulo an odd prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, o):
        if isinstance(o, Mod):
            if o.p != self.p:
                raise FieldMismatch(f"GF({self.p}) combined with GF({o.p})")
            return o.v
        if isinstance(o, int):
            return o
        if isinstance(o, Fraction) and o.denominator == 1:
            return o.numerator
        raise FieldMismatch(f"GF({self.p}) combined with {type(o).__name__} {o!r}")

    def __add__(self, o):
        return Mod(self.v + self._other(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return Mod(self.v - self._other(o), self.p)

    def __rsub__(self, o):
        return Mod(self._other(o) - self.v, self.p)

    def __mul__(self, o):
        return Mod(self.v * self._other(o), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Mod":
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.p)
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, o):
        o = self._other(o) % self.p
        if o == 0:
            raise ZeroDivisionError("division by 0 in GF(%d)" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, o):
        return Mod(self._other(o), self.p) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Mod(pow(self.v, e, self.p), self.p)

    def __eq__(self, o):
        if isinstance(o, Mod):
            return self.p == o.p and self.v == o.v
        if isinstance(o, int):
            return self.v == o % self.p
        if isinstance(o, Fraction) and o.denominator == 1:
            return self.v == o.numerator % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __index__(self):
        return self.v

    def lift(self) -> int:
        """Symmetric integer representative in (-p/2, p/2]."""
        return self.v if 2 * self.v <= self.p else self.v - self.p

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.lift())


class Field:
    characteristic: int
    name: str

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def require_char_above(self, d: int) -> None:
        """Refuse the field when 0 < char <= d (factorials up to d! must be units)."""
        if self.characteristic and self.characteristic <= d:
            raise CharacteristicError(
                f"{self.name} has characteristic {self.characteristic} <= {d}; "
                f"degree-{d} apolarity needs char 0 or char > {d}"
            )

    def random(self, rng):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class RationalField(Field):
    characteristic = 0
    name = "QQ"

    def __call__(self, x):
        if isinstance(x, Mod):
            raise FieldMismatch(f"QQ given a GF({x.p}) residue")
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise FieldMismatch(f"QQ given {type(x).__name__} {x!r}")

    def random(self, rng, bound: int = 10):
        return Fraction(rng.randint(-bound, bound))

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __reduce__(self):
        return (_qq, ())


class PrimeField(Field):
    def __init__(self, p: int):
        if p == 2 or not _is_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x):
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldMismatch(f"GF({self.p}) given a GF({x.p}) residue")
            return x
        if isinstance(x, int):
            return Mod(x, self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            if x.denominator != 1:
                raise FieldMismatch(f"GF({self.p}) given non-integral rational {x}")
            return Mod(x.numerator, self.p)
        if isinstance(x, str):
            return self(Fraction(x))
        raise FieldMismatch(f"GF({self.p}) given {type(x).__name__} {x!r}")

    def from_rational(self, x: Fraction) -> Mod:
        """Explicit reduction of a rational number modulo p."""
        x = Fraction(x)
        return Mod(x.numerator, self.p) / Mod(x.denominator, self.p)

    def random(self, rng):
        return Mod(rng.randrange(self.p), self.p)

    def contains(self, x) -> bool:
        return isinstance(x, Mod) and x.p == self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __reduce__(self):
        return (GF, (self.p,))


QQ = RationalField()


def _qq():
    return QQ


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def default_prime() -> int:
    return int(os.environ.get("APOLAR_DEFAULT_PRIME", DEFAULT_PRIME))


def parse_field(text: str | None) -> Field:
    """Parse ``Q``/``QQ`` or ``gfp:<p>``/``GF(p)`` into a field."""
    if text is None:
        return GF(default_prime())
    s = text.strip()
    if s.upper() in ("Q", "QQ"):
        return QQ
    low = s.lower()
    if low.startswith("gfp:"):
        return GF(int(low[4:]))
    if low.startswith("gf(") and low.endswith(")"):
        return GF(int(low[3:-1]))
    if low in ("gfp", "gf"):
        return GF(default_prime())
    raise ValueError(f"unrecognised field {text!r}; use Q or gfp:<prime>")


def same_field(a: Field, b: Field) -> Field:
    if a != b:
        raise FieldMismatch(f"{a} combined with {b}")
    return a
