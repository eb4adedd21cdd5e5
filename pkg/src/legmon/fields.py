"""Exact scalar arithmetic over the rationals and over prime fields.

Every identity this package checks is checked exactly, so there is no
floating point anywhere.  Rational scalars are `fractions.Fraction`
values (arbitrary precision, always in lowest terms with a positive
denominator).  Prime-field scalars are `ModP` residues that carry their
modulus.  A `RationalField` or `PrimeField` object bundles construction,
parsing, formatting and sampling for one field, so matrices and points
can stay field-agnostic.

Serialization: rationals render as ``"a/b"`` with an explicit
denominator, residues as ``"v mod p"``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from random import Random

DEFAULT_PRIME = 2147483647  # 2^31 - 1, fits in one machine word with room to multiply


class DivisionByZero(ZeroDivisionError):
    """Inversion or division of a zero scalar."""


class FieldMismatch(ValueError):
    """Two scalars from different fields met in one expression."""


class ScalarParseError(ValueError):
    """A scalar string does not conform to the serialization grammar."""


class ModP:
    """A residue modulo a prime, with operator arithmetic.

    Values are normalized into [0, p).  Binary operations accept plain
    ints (reduced mod p) but refuse residues with a different modulus.
    """

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        self.value = value % modulus
        self.modulus = modulus

    def _lift(self, other) -> "ModP | None":
        if isinstance(other, ModP):
            if other.modulus != self.modulus:
                raise FieldMismatch(
                    f"mixed moduli {self.modulus} and {other.modulus}"
                )
            return other
        if isinstance(other, int):
            return ModP(other, self.modulus)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ModP(self.value + o.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ModP(self.value - o.value, self.modulus)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ModP(o.value - self.value, self.modulus)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ModP(self.value * o.value, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * field_inverse(o)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * field_inverse(self)

    def __neg__(self):
        return ModP(-self.value, self.modulus)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        try:
            return ModP(pow(self.value, n, self.modulus), self.modulus)
        except ValueError as exc:  # negative exponent of a zero residue
            raise DivisionByZero(str(exc)) from None

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.modulus == other.modulus and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((ModP, self.value, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return f"{self.value} mod {self.modulus}"

    def __repr__(self):
        return f"ModP({self.value}, {self.modulus})"


#: A scalar of either supported field.
FieldScalar = Fraction | ModP


def field_inverse(x: FieldScalar | int) -> FieldScalar:
    """Multiplicative inverse of ``x`` in its own field.

    Raises:
        DivisionByZero: if ``x`` is zero.
    """
    if isinstance(x, ModP):
        if x.value == 0:
            raise DivisionByZero(f"inverse of 0 mod {x.modulus}")
        return ModP(pow(x.value, -1, x.modulus), x.modulus)
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        if x == 0:
            raise DivisionByZero("inverse of rational 0")
        return Fraction(1) / x
    raise TypeError(f"not a field scalar: {x!r}")


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; the witness set covers all n < 3.3e24.
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")
_RESIDUE_RE = re.compile(r"^\s*(-?\d+)\s*(?:mod\s+(\d+)\s*)?$")


@dataclass(frozen=True)
class RationalField:
    """The field of rational numbers."""

    kind = "q"
    characteristic = 0

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def random_scalar(self, rng: Random) -> Fraction:
        # Small integer entries keep determinant heights manageable.
        return Fraction(rng.randint(-9, 9))

    def parse(self, text: str) -> Fraction:
        m = _RATIONAL_RE.match(text)
        if not m:
            raise ScalarParseError(f"not a rational scalar: {text!r}")
        num, den = m.group(1), m.group(2)
        if den is None:
            return Fraction(int(num))
        if int(den) == 0:
            raise ScalarParseError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))

    def format(self, x: Fraction) -> str:
        return f"{x.numerator}/{x.denominator}"

    def to_json(self) -> dict:
        return {"kind": "q"}


@dataclass(frozen=True)
class PrimeField:
    """The field of integers modulo a prime ``p``."""

    p: int

    kind = "fp"

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    @property
    def characteristic(self) -> int:
        return self.p

    def zero(self) -> ModP:
        return ModP(0, self.p)

    def one(self) -> ModP:
        return ModP(1, self.p)

    def from_int(self, n: int) -> ModP:
        return ModP(n, self.p)

    def random_scalar(self, rng: Random) -> ModP:
        return ModP(rng.randrange(self.p), self.p)

    def parse(self, text: str) -> ModP:
        m = _RESIDUE_RE.match(text)
        if not m:
            raise ScalarParseError(f"not a residue scalar: {text!r}")
        value, modulus = m.group(1), m.group(2)
        if modulus is not None and int(modulus) != self.p:
            raise ScalarParseError(
                f"residue {text!r} declares modulus {modulus}, field has {self.p}"
            )
        return ModP(int(value), self.p)

    def format(self, x: ModP) -> str:
        if x.modulus != self.p:
            raise FieldMismatch(f"residue mod {x.modulus} in field mod {self.p}")
        return f"{x.value} mod {x.modulus}"

    def to_json(self) -> dict:
        return {"kind": "fp", "p": self.p}


#: A handle for one of the two supported fields.
Field = RationalField | PrimeField

QQ = RationalField()


def format_scalar(x: FieldScalar) -> str:
    """Serialize a scalar as ``"a/b"`` or ``"v mod p"``."""
    if isinstance(x, Fraction):
        return QQ.format(x)
    if isinstance(x, ModP):
        return str(x)
    raise TypeError(f"not a field scalar: {x!r}")


def field_to_json(field: Field) -> dict:
    return field.to_json()


def field_from_json(data: dict) -> Field:
    if not isinstance(data, dict) or "kind" not in data:
        raise ValueError(f"malformed field descriptor: {data!r}")
    if data["kind"] == "q":
        return QQ
    if data["kind"] == "fp":
        if "p" not in data or not isinstance(data["p"], int):
            raise ValueError(f"prime field descriptor needs an integer p: {data!r}")
        return PrimeField(data["p"])
    raise ValueError(f"unknown field kind: {data['kind']!r}")


def default_prime() -> int:
    """Default modulus, overridable via the LEGMON_PRIME environment variable."""
    raw = os.environ.get("LEGMON_PRIME")
    return int(raw) if raw else DEFAULT_PRIME
