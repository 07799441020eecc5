"""Obstruction polynomials P_n, Q_n (generic family) and R_k (A-family).

The generic recursive construction breaks down exactly when the
superdiagonal value ``c_n = c P_n / Q_n`` equals 1, i.e. when
``Q_{n+1}(b, c) = 0``. The A-family construction breaks down when
``R_k(a, d) = 0``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from ..errors import ExcludedPoint
from .bipoly import BiPoly
from .field import GF, Scalar

DEFAULT_BOUND = 64


class RootFinding(NamedTuple):
    index: int | None
    tag: str


@lru_cache(maxsize=None)
def pq_polys(n: int) -> tuple[BiPoly, BiPoly]:
    """``(P_n, Q_n)`` in the variables ``(b, c)``."""
    if n < 1:
        raise ValueError("n must be positive")
    b, c = BiPoly.gens(("b", "c"))
    p, q = BiPoly.const(1, b.names), BiPoly.const(1, b.names)
    for _ in range(n - 1):
        p, q = b * p + q, q - c * p
    return p, q


@lru_cache(maxsize=None)
def r_poly(k: int) -> BiPoly:
    """``R_k`` in the variables ``(a, d)``."""
    if k < 1:
        raise ValueError("k must be positive")
    a, d = BiPoly.gens(("a", "d"))
    e = 1 - d
    total = BiPoly.const(0, a.names)
    for j in range(k):
        total = total + e**j * (-a) ** (k - 1 - j)
    return e**k + d * total


def pq_values(b: Scalar, c: Scalar, n: int) -> tuple[Scalar, Scalar]:
    """``(P_n(b, c), Q_n(b, c))`` by running the scalar recursion."""
    p, q = b * 0 + 1, b * 0 + 1
    for _ in range(n - 1):
        p, q = b * p + q, q - c * p
    return p, q


def r_value(a: Scalar, d: Scalar, k: int) -> Scalar:
    """``R_k(a, d)`` by direct evaluation of its defining sum."""
    e = 1 - d
    total = a * 0
    for j in range(k):
        total = total + e**j * (-a) ** (k - 1 - j)
    return e**k + d * total


def _bounded(values, bound: int) -> int | None:
    for idx, v in values(bound):
        if not v:
            return idx
    return None


def find_q_root(b: Scalar, c: Scalar, bound: int = DEFAULT_BOUND) -> RootFinding:
    """Least ``n`` with ``Q_n(b, c) = 0``, with a tag naming how it was decided.

    Tags other than ``"bounded"`` settle the question for every ``n``; in
    that case a root beyond ``bound`` is still reported.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    if b == -1 and c == 1:
        raise ExcludedPoint("(b, c) = (-1, 1) belongs to the square-zero regime")

    def q_seq(limit: int):
        p, q = b * 0 + 1, b * 0 + 1
        for n in range(1, limit + 1):
            yield n, q
            p, q = b * p + q, q - c * p

    if isinstance(b, GF):
        return RootFinding(_bounded(q_seq, bound), "bounded")
    if c == 0:
        return RootFinding(None, "c=0")
    if b + c == 0:
        return RootFinding(None, "b+c=0")
    if b == -1:
        return RootFinding(None, "b=-1")
    if 4 * c == (b - 1) ** 2:
        m = Fraction(2) / (b - 1)
        if m.denominator == 1 and m > 0:
            n = int(m) + 1
            if pq_values(b, c, n)[1] != 0:  # pragma: no cover - guarded by theory
                raise AssertionError(f"Q_{n} should vanish at ({b}, {c})")
            return RootFinding(n, "equal-eigenvalues")
        return RootFinding(None, "equal-eigenvalues")
    return RootFinding(_bounded(q_seq, bound), "bounded")


def find_r_root(a: Scalar, d: Scalar, bound: int = DEFAULT_BOUND) -> RootFinding:
    """Least ``k`` with ``R_k(a, d) = 0``, with a tag naming how it was decided."""
    if bound < 1:
        raise ValueError("bound must be positive")
    if a == 0 and d == 1:
        raise ExcludedPoint("(a, d) = (0, 1) is excluded")

    def r_seq(limit: int):
        for k in range(1, limit + 1):
            yield k, r_value(a, d, k)

    if isinstance(a, GF):
        return RootFinding(_bounded(r_seq, bound), "bounded")
    e = 1 - d
    if d == 0:
        return RootFinding(None, "d=0")
    if a == 0:
        return RootFinding(None, "a=0")
    if e == 0:
        return RootFinding(None, "d=1")
    if -a == e:
        # R_k = e^(k-1) (k d + e), vanishing iff d (k - 1) + 1 = 0
        k = 1 - 1 / d
        if k.denominator == 1 and k >= 2:
            return _confirmed_r(a, d, int(k), "-a=e")
        return RootFinding(None, "-a=e")
    if a == -1:
        return RootFinding(None, "a=-1")
    # R_k = 0  iff  (-a/e)^k = (1 + a)/d
    q, t = -a / e, (1 + a) / d
    if abs(q) == 1:
        return RootFinding(None, "|a/e|=1")
    mag, target, k = abs(q), abs(t), 1
    if mag > 1:
        while mag < target:
            mag *= abs(q)
            k += 1
    else:
        while mag > target:
            mag *= abs(q)
            k += 1
    if mag == target and q**k == t:
        return _confirmed_r(a, d, k, "ratio")
    return RootFinding(None, "ratio")


def _confirmed_r(a: Scalar, d: Scalar, k: int, tag: str) -> RootFinding:
    if r_value(a, d, k) != 0:  # pragma: no cover - guarded by theory
        raise AssertionError(f"R_{k} should vanish at ({a}, {d})")
    return RootFinding(k, tag)
