"""Sequences in Δ(n, n+1) and the quasi-balanced class.

A prefix ``L = (L_1, ..., L_r)`` lies in Δ(n, n+1) when ``L_1 = n`` and
every increment is ``n`` or ``n + 1``. It is quasi-balanced when
``Δ_{r,j} = L_r - L_j - L_{r-j}`` lies in ``{0, 1}`` for all ``0 < j < r``.
Indices are 1-based throughout, matching the usual notation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ParseError, SequenceError


@dataclass(frozen=True)
class QBSeq:
    n: int
    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))
        if self.n < 2:
            raise SequenceError(f"n must be at least 2, got {self.n}")
        if not self.terms:
            raise SequenceError("empty sequence")
        if self.terms[0] != self.n:
            raise SequenceError(f"L_1 must equal n = {self.n}, got {self.terms[0]}")
        for r in range(1, len(self.terms)):
            step = self.terms[r] - self.terms[r - 1]
            if step not in (self.n, self.n + 1):
                raise SequenceError(
                    f"increment L_{r + 1} - L_{r} = {step} is not {self.n} or {self.n + 1}"
                )

    @classmethod
    def of(cls, terms: Iterable[int]) -> "QBSeq":
        t = tuple(terms)
        if not t:
            raise SequenceError("empty sequence")
        return cls(t[0], t)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, r: int) -> int:
        """``L_r`` with 1-based ``r``."""
        if not 1 <= r <= len(self.terms):
            raise IndexError(f"L_{r} is outside the prefix of length {len(self.terms)}")
        return self.terms[r - 1]

    def extended(self, term: int) -> "QBSeq":
        return QBSeq(self.n, self.terms + (term,))

    def covers(self, depth: int) -> bool:
        """True when rows ``0 .. depth - 1`` lie before any unknown ``L``."""
        return self.terms[-1] + self.n >= depth

    def to_json(self) -> list[int]:
        return list(self.terms)


@dataclass(frozen=True)
class Witness:
    """The lexicographically first pair ``(r, j)`` with ``Δ_{r,j}`` outside {0, 1}."""

    r: int
    j: int
    delta: int

    def to_json(self) -> dict[str, int]:
        return {"r": self.r, "j": self.j, "delta": self.delta}


@dataclass(frozen=True)
class FailureCase:
    """Witness data for a sequence outside the quasi-balanced class.

    ``m`` is the shortest failing prefix length and ``m = k + r``.
    Case 1: ``L_{k+r} = L_k + L_r - 1`` and ``L_r - L_{r-1} = n + 1``.
    Case 2: ``L_{k+r} = L_k + L_r + 2`` and ``L_{r+1} - L_r = n + 1``.
    """

    case: int
    m: int
    k: int
    r: int
    delta: int

    def to_json(self) -> dict[str, int]:
        return {"case": self.case, "m": self.m, "k": self.k, "r": self.r, "delta": self.delta}


def delta(L: QBSeq, r: int, j: int) -> int:
    return L[r] - L[j] - L[r - j]


def _violation_at(terms: tuple[int, ...], r: int) -> Witness | None:
    # checks only pairs (r, j); terms is 0-based storage of L
    lr = terms[r - 1]
    for j in range(1, r):
        d = lr - terms[j - 1] - terms[r - j - 1]
        if d not in (0, 1):
            return Witness(r, j, d)
    return None


def find_violation(L: QBSeq) -> Witness | None:
    for r in range(2, len(L) + 1):
        w = _violation_at(L.terms, r)
        if w is not None:
            return w
    return None


def is_quasi_balanced(L: QBSeq) -> bool:
    return find_violation(L) is None


def require_quasi_balanced(L: QBSeq) -> None:
    w = find_violation(L)
    if w is not None:
        raise SequenceError(
            f"{L.to_json()} is not quasi-balanced: Δ_{w.r},{w.j} = {w.delta}", witness=w
        )


def extensions(L: QBSeq) -> tuple[int, ...]:
    require_quasi_balanced(L)
    r = len(L) + 1
    out = []
    for nxt in (L.terms[-1] + L.n, L.terms[-1] + L.n + 1):
        if _violation_at(L.terms + (nxt,), r) is None:
            out.append(nxt)
    return tuple(out)


def _walk(n: int, length: int) -> Iterator[tuple[int, ...]]:
    stack = [(n,)]
    while stack:
        t = stack.pop()
        if len(t) == length:
            yield t
            continue
        r = len(t) + 1
        for nxt in (t[-1] + n + 1, t[-1] + n):
            cand = t + (nxt,)
            if _violation_at(cand, r) is None:
                stack.append(cand)


def enumerate_prefixes(n: int, length: int) -> list[QBSeq]:
    """All quasi-balanced prefixes of the given length, in lexicographic order."""
    if n < 2 or length < 1:
        raise ValueError("need n >= 2 and length >= 1")
    return [QBSeq(n, t) for t in _walk(n, length)]


def count_prefixes(n: int, max_len: int) -> list[tuple[int, int]]:
    """``(length, count)`` rows for lengths ``1 .. max_len``."""
    if n < 2 or max_len < 1:
        raise ValueError("need n >= 2 and max_len >= 1")
    counts = [0] * (max_len + 1)
    stack = [(n,)]
    while stack:
        t = stack.pop()
        counts[len(t)] += 1
        if len(t) == max_len:
            continue
        r = len(t) + 1
        for nxt in (t[-1] + n, t[-1] + n + 1):
            cand = t + (nxt,)
            if _violation_at(cand, r) is None:
                stack.append(cand)
    return [(m, counts[m]) for m in range(1, max_len + 1)]


def failure_witness(L: QBSeq) -> FailureCase:
    """Locate the pair ``(k, r)`` showing why ``L`` cannot give a twisting map."""
    w = find_violation(L)
    if w is None:
        raise SequenceError(f"{L.to_json()} is quasi-balanced; there is no failure")
    m = w.r
    deltas = {j: delta(L, m, j) for j in range(1, m)}
    low = [j for j, v in deltas.items() if v == -1]
    if low:
        r = min(low)
        return FailureCase(1, m, m - r, r, -1)
    high = [j for j, v in deltas.items() if v == 2]
    if high:
        r = max(high)
        return FailureCase(2, m, m - r, r, 2)
    raise AssertionError(f"Δ_{m},j outside [-1, 2] for {L.to_json()}")  # pragma: no cover


def generate(n: int, length: int, policy: str = "greedy-n", seed: int = 0) -> QBSeq:
    """Grow a quasi-balanced prefix by a fixed policy.

    ``greedy-n`` prefers the increment ``n``, ``greedy-n1`` prefers ``n + 1``,
    and ``random`` picks uniformly among legal increments using ``seed``.
    """
    if policy not in ("greedy-n", "greedy-n1", "random"):
        raise ValueError(f"unknown policy {policy!r}")
    rng = random.Random(seed)
    L = QBSeq(n, (n,))
    while len(L) < length:
        opts = extensions(L)
        if policy == "greedy-n":
            nxt = opts[0]
        elif policy == "greedy-n1":
            nxt = opts[-1]
        else:
            nxt = rng.choice(opts)
        L = L.extended(nxt)
    return L


def parse_terms(text: str) -> QBSeq:
    try:
        terms = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise ParseError(f"bad sequence {text!r}") from exc
    return QBSeq.of(terms)
