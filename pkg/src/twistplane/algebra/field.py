"""Exact scalars: rationals backed by :class:`fractions.Fraction`, and GF(p).

A :class:`Field` is a small descriptor that coerces, parses and formats
scalars. Rational scalars are plain ``Fraction`` instances, so the rest
of the package can use ordinary arithmetic operators on either kind.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..errors import ParseError


class GF:
    """An element of the prime field GF(p), stored as a residue in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int) -> None:
        self.v = v % p
        self.p = p

    def _coerce(self, other: object) -> "GF":
        if isinstance(other, GF):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other
        if isinstance(other, int):
            return GF(other, self.p)
        if isinstance(other, Fraction):
            return GF(other.numerator, self.p) / GF(other.denominator, self.p)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "GF":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GF(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other: object) -> "GF":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GF(self.v - o.v, self.p)

    def __rsub__(self, other: object) -> "GF":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GF(o.v - self.v, self.p)

    def __mul__(self, other: object) -> "GF":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GF(self.v * o.v, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "GF":
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return GF(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other: object) -> "GF":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> "GF":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self) -> "GF":
        return GF(-self.v, self.p)

    def __pos__(self) -> "GF":
        return self

    def __pow__(self, k: int) -> "GF":
        if k < 0:
            return self.inverse() ** (-k)
        return GF(pow(self.v, k, self.p), self.p)

    def __bool__(self) -> bool:
        return self.v != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GF):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.v, self.p))

    def __repr__(self) -> str:
        return f"GF({self.v}, {self.p})"

    def __str__(self) -> str:
        return f"{self.v} mod {self.p}"


Scalar = Union[Fraction, GF]

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_RESIDUE = re.compile(r"^\s*([+-]?\d+)\s+mod\s+(\d+)\s*$")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: rationals when ``p`` is None, otherwise GF(p)."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None:
            if not (_is_prime(self.p) and self.p < 2**31):
                raise ParseError(f"GF(p) needs a prime p < 2^31, got {self.p}")

    @classmethod
    def parse(cls, spec: str) -> "Field":
        """Parse ``"rational"`` or ``"gf:p"``."""
        s = spec.strip().lower()
        if s in ("rational", "q"):
            return cls()
        if s.startswith("gf:"):
            try:
                return cls(int(s[3:]))
            except ValueError as exc:
                raise ParseError(f"bad field spec {spec!r}") from exc
        raise ParseError(f"bad field spec {spec!r}")

    @property
    def name(self) -> str:
        return "rational" if self.p is None else f"gf:{self.p}"

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, x: object) -> Scalar:
        """Coerce an int, Fraction, GF element or string into this field."""
        if isinstance(x, str):
            return self.scalar(x)
        if isinstance(x, bool):
            x = int(x)
        if self.p is None:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"cannot coerce {x!r} to a rational")
        if isinstance(x, GF):
            if x.p != self.p:
                raise ValueError(f"GF({x.p}) element in GF({self.p})")
            return x
        if isinstance(x, int):
            return GF(x, self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return GF(x.numerator, self.p) / x.denominator
        raise TypeError(f"cannot coerce {x!r} to GF({self.p})")

    def scalar(self, text: str) -> Scalar:
        """Parse ``"p/q"``, ``"p"`` or ``"k mod p"``."""
        m = _RESIDUE.match(text)
        if m:
            k, p = int(m.group(1)), int(m.group(2))
            if self.p is None or p != self.p:
                raise ParseError(f"{text!r} is not an element of {self.name}")
            return GF(k, p)
        m = _RATIONAL.match(text)
        if not m:
            raise ParseError(f"bad scalar {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        try:
            return self(Fraction(num, den))
        except ZeroDivisionError as exc:
            raise ParseError(str(exc)) from exc

    def format(self, x: Scalar) -> str:
        if isinstance(x, GF):
            return str(x)
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def contains(self, x: object) -> bool:
        if self.p is None:
            return isinstance(x, Fraction)
        return isinstance(x, GF) and x.p == self.p


RATIONAL = Field()


def field_of(x: Scalar) -> Field:
    """The field a scalar lives in."""
    return Field(x.p) if isinstance(x, GF) else RATIONAL
