"""Exact scalars over Q and prime fields F_p.

Matrices keep raw element values for speed: ``Fraction`` over Q and a
canonical ``int`` residue in ``[0, p)`` over F_p.  :class:`FieldSpec` owns
every operation on raw values; :class:`Scalar` is a thin typed wrapper for
callers that want operator syntax.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DivisionByZero,
    FieldMismatch,
    SchemaError,
    UnsupportedCharacteristic,
)

RATIONALS = "q"
PRIME_FIELD = "fp"
MAX_PRIME = 2**31


@lru_cache(maxsize=None)
def _isprime(p: int) -> bool:
    from sympy.ntheory import isprime

    return bool(isprime(p))


@dataclass(frozen=True)
class FieldSpec:
    kind: str = RATIONALS
    p: int | None = None

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == PRIME_FIELD:
            if not isinstance(self.p, int) or not 2 <= self.p < MAX_PRIME:
                raise ValueError(f"prime modulus must satisfy 2 <= p < 2^31, got {self.p!r}")
            if not _isprime(self.p):
                raise ValueError(f"{self.p} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(PRIME_FIELD, p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse the CLI syntax ``q`` or ``fp:<p>``."""
        text = text.strip().lower()
        if text == "q":
            return cls.rationals()
        if text.startswith("fp:"):
            try:
                return cls.prime(int(text[3:]))
            except ValueError as exc:
                raise SchemaError(str(exc), "field") from None
        raise SchemaError(f"bad field {text!r}; expected 'q' or 'fp:<p>'", "field")

    @property
    def is_rational(self) -> bool:
        return self.kind == RATIONALS

    def __str__(self):
        return "q" if self.is_rational else f"fp:{self.p}"

    # -- raw element operations ------------------------------------------

    def __call__(self, x) -> Fraction | int:
        """Coerce an int, Fraction or Scalar into a raw element of this field."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"{x.field} element used in {self}")
            return x.value
        if self.is_rational:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.is_rational else 0

    @property
    def one(self):
        return Fraction(1) if self.is_rational else 1

    def add(self, a, b):
        return a + b if self.is_rational else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.is_rational else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.is_rational else a * b % self.p

    def neg(self, a):
        return -a if self.is_rational else -a % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / a if self.is_rational else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format(self, a) -> str:
        if self.is_rational:
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a)

    def parse_element(self, text: str, path: str = "$"):
        if not isinstance(text, str):
            raise SchemaError(f"entry must be a string, got {type(text).__name__}", path)
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"cannot parse entry {text!r}", path) from None
        if not self.is_rational and value.denominator % self.p == 0:
            raise SchemaError(f"entry {text!r} has denominator divisible by {self.p}", path)
        return self(value)

    def random_element(self, rng: random.Random, bound: int = 5):
        """Uniform over F_p; over Q an integer in ``[-bound, bound]``."""
        if self.is_rational:
            return Fraction(rng.randint(-bound, bound))
        return rng.randrange(self.p)

    def random_nonzero(self, rng: random.Random, bound: int = 5):
        while True:
            x = self.random_element(rng, bound)
            if x != 0:
                return x

    def elements(self):
        """Iterate over all elements of a prime field."""
        if self.is_rational:
            raise ValueError("the rationals are not enumerable here")
        return iter(range(self.p))


def characteristic(f: FieldSpec) -> int:
    return 0 if f.is_rational else f.p


@dataclass(frozen=True)
class Scalar:
    field: FieldSpec
    value: Fraction | int

    @classmethod
    def of(cls, field: FieldSpec, x) -> "Scalar":
        return cls(field, field(x))

    def _check(self, other):
        if not isinstance(other, Scalar):
            return Scalar.of(self.field, other)
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    def __add__(self, other):
        return scalar_arith(self, self._check(other), "add")

    def __sub__(self, other):
        return scalar_arith(self, self._check(other), "sub")

    def __mul__(self, other):
        return scalar_arith(self, self._check(other), "mul")

    def __truediv__(self, other):
        return scalar_arith(self, self._check(other), "div")

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.field.format(self.value)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    f = a.field
    if op == "add":
        v = f.add(a.value, b.value)
    elif op == "sub":
        v = f.sub(a.value, b.value)
    elif op == "mul":
        v = f.mul(a.value, b.value)
    elif op == "div":
        if b.value == 0:
            raise DivisionByZero(f"{a} / 0")
        v = f.div(a.value, b.value)
    else:
        raise ValueError(f"unknown op {op!r}")
    return Scalar(f, v)


def _rational_cube_root(x: Fraction) -> Fraction | None:
    def icbrt(n):
        r = round(abs(n) ** (1 / 3))
        for c in (r - 1, r, r + 1):
            if c**3 == abs(n):
                return c if n >= 0 else -c
        return None

    num, den = icbrt(x.numerator), icbrt(x.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def find_omega(f: FieldSpec) -> list[Scalar]:
    """All roots of w(27w^3 - 8) in ``f``, zero first, then ascending."""
    char = characteristic(f)
    if char in (2, 3):
        raise UnsupportedCharacteristic(f"w(27w^3-8) degenerates in characteristic {char}")
    roots = {f.zero}
    if f.is_rational:
        r = _rational_cube_root(Fraction(8, 27))
        roots.add(r)
    else:
        # w^3 = (2/3)^3, so w = (2/3) z with z^3 = 1; nontrivial z exist iff 3 | p - 1.
        p = f.p
        base = f.div(2, 3)
        roots.add(base)
        if (p - 1) % 3 == 0:
            g = 2
            while pow(g, (p - 1) // 3, p) == 1:
                g += 1
            z = pow(g, (p - 1) // 3, p)
            roots.update({base * z % p, base * z * z % p})
    return [Scalar(f, r) for r in sorted(roots)]
