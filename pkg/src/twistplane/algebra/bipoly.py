"""Sparse bivariate polynomials with integer coefficients."""

from __future__ import annotations

from typing import Iterator, Mapping

from .field import Scalar


def _key(e: tuple[int, int]) -> tuple[int, int, int]:
    # graded lex, highest degree first
    return (-(e[0] + e[1]), -e[0], -e[1])


class BiPoly:
    """Integer polynomial in two variables, stored as ``{(i, j): coeff}``.

    Variable names are cosmetic; they only affect :meth:`__str__`.
    """

    __slots__ = ("_terms", "names")

    def __init__(
        self,
        terms: Mapping[tuple[int, int], int] | None = None,
        names: tuple[str, str] = ("x", "y"),
    ) -> None:
        clean: dict[tuple[int, int], int] = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent ({i}, {j})")
            if c:
                clean[(i, j)] = int(c)
        self._terms = clean
        self.names = names

    @classmethod
    def const(cls, c: int, names: tuple[str, str] = ("x", "y")) -> "BiPoly":
        return cls({(0, 0): c}, names)

    @classmethod
    def gens(cls, names: tuple[str, str]) -> tuple["BiPoly", "BiPoly"]:
        return cls({(1, 0): 1}, names), cls({(0, 1): 1}, names)

    def terms(self) -> list[tuple[tuple[int, int], int]]:
        """Terms in graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: _key(t[0]))

    def __iter__(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(self.terms())

    def coeff(self, i: int, j: int) -> int:
        return self._terms.get((i, j), 0)

    def degree(self) -> int:
        return max((i + j for i, j in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def _lift(self, other: object) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, int):
            return BiPoly.const(other, self.names)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "BiPoly":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            out[e] = out.get(e, 0) + c
        return BiPoly(out, self.names)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly({e: -c for e, c in self._terms.items()}, self.names)

    def __sub__(self, other: object) -> "BiPoly":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "BiPoly":
        return (-self) + other

    def __mul__(self, other: object) -> "BiPoly":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in o._terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, 0) + c1 * c2
        return BiPoly(out, self.names)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BiPoly":
        if k < 0:
            raise ValueError("negative power")
        out = BiPoly.const(1, self.names)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __call__(self, x: Scalar, y: Scalar) -> Scalar:
        return self.evaluate(x, y)

    def evaluate(self, x: Scalar, y: Scalar) -> Scalar:
        """Evaluate at a point; the result lives in the field of ``x``."""
        total = x * 0
        xp: dict[int, Scalar] = {}
        yp: dict[int, Scalar] = {}
        for (i, j), c in self._terms.items():
            if i not in xp:
                xp[i] = x**i
            if j not in yp:
                yp[j] = y**j
            total = total + c * xp[i] * yp[j]
        return total

    def to_json(self) -> list[list[int]]:
        """Canonical sorted term list ``[[i, j, coeff], ...]``."""
        return [[i, j, c] for (i, j), c in self.terms()]

    @classmethod
    def from_json(cls, data: list[list[int]], names: tuple[str, str] = ("x", "y")) -> "BiPoly":
        return cls({(int(i), int(j)): int(c) for i, j, c in data}, names)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        u, v = self.names
        parts = []
        for (i, j), c in self.terms():
            mono = "*".join(
                f"{name}^{e}" if e > 1 else name for name, e in ((u, i), (v, j)) if e
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"BiPoly({str(self)!r})"
