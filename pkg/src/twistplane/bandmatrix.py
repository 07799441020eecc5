"""Truncated infinite matrices with a band profile and a trusted-row window.

Row ``i`` of a :class:`BandMatrix` of width ``w`` stores the dense vector of
columns ``0 .. i + w``; every entry further right is zero by construction.
Only the first ``valid_rows`` rows are trusted. Products shrink that
window by the left factor's width: row ``i`` of ``A B`` reads rows up to
``i + w_A`` of ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .algebra.field import Field, Scalar
from .errors import BandViolation, ParseError, WindowError

Row = tuple[Scalar, ...]


@dataclass(frozen=True)
class ShiftOp:
    """``left``: B -> Y^k B (drop k rows). ``right``: B -> B Y^k (move k columns right)."""

    kind: str
    k: int

    def __post_init__(self) -> None:
        if self.kind not in ("left", "right"):
            raise ValueError(f"unknown shift kind {self.kind!r}")
        if self.k < 0:
            raise ValueError("shift amount must be nonnegative")


@dataclass(frozen=True)
class Mismatch:
    row: int
    col: int
    lhs: Scalar
    rhs: Scalar


class BandMatrix:
    __slots__ = ("rows", "valid_rows", "field", "width")

    def __init__(self, rows: Sequence[Row], field: Field, width: int = 1) -> None:
        # Trusted constructor: rows are tuples of field scalars, row i of length i + width + 1.
        self.rows: tuple[Row, ...] = tuple(rows)
        self.valid_rows = len(self.rows)
        self.field = field
        self.width = width

    @classmethod
    def from_rows(
        cls, rows: Iterable[Iterable[object]], field: Field, width: int = 1
    ) -> "BandMatrix":
        """Build from ragged rows, padding with zeros and enforcing the band."""
        zero = field.zero
        out = []
        for i, raw in enumerate(rows):
            vals = [field(x) for x in raw]
            for j in range(i + width + 1, len(vals)):
                if vals[j]:
                    raise BandViolation(i, j)
            vals = vals[: i + width + 1]
            vals.extend([zero] * (i + width + 1 - len(vals)))
            out.append(tuple(vals))
        return cls(out, field, width)

    @classmethod
    def identity(cls, field: Field, rows: int) -> "BandMatrix":
        return cls.from_rows(([1] if i == 0 else [0] * i + [1] for i in range(rows)), field, 0)

    @classmethod
    def shift_matrix(cls, field: Field, rows: int) -> "BandMatrix":
        """``Y``: ones on the first superdiagonal."""
        return cls.from_rows(([0] * (i + 1) + [1] for i in range(rows)), field, 1)

    @classmethod
    def zeros(cls, field: Field, rows: int, width: int = 1) -> "BandMatrix":
        return cls.from_rows(([] for _ in range(rows)), field, width)

    def entry(self, i: int, j: int) -> Scalar:
        if not 0 <= i < self.valid_rows:
            raise WindowError(f"row {i} outside the trusted window of {self.valid_rows} rows")
        if j < 0:
            raise IndexError(f"negative column {j}")
        row = self.rows[i]
        return row[j] if j < len(row) else self.field.zero

    def row(self, i: int) -> Row:
        self.entry(i, 0)
        return self.rows[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BandMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.valid_rows == other.valid_rows
            and eq_on_window(self, other) is None
        )

    def __hash__(self) -> int:
        return hash((self.field, self.valid_rows))

    def __repr__(self) -> str:
        return f"BandMatrix(rows={self.valid_rows}, width={self.width}, field={self.field.name})"

    def __add__(self, other: "BandMatrix") -> "BandMatrix":
        return combine(self, other, 1)

    def __sub__(self, other: "BandMatrix") -> "BandMatrix":
        return combine(self, other, -1)

    def __mul__(self, other: "BandMatrix") -> "BandMatrix":
        return mul(self, other)

    def __neg__(self) -> "BandMatrix":
        return scale(self, -1)

    def truncate(self, rows: int) -> "BandMatrix":
        if rows > self.valid_rows:
            raise WindowError(f"cannot extend {self.valid_rows} rows to {rows}")
        return BandMatrix(self.rows[:rows], self.field, self.width)

    def narrowed(self, width: int) -> "BandMatrix":
        """Reinterpret with a smaller width; raises if a dropped entry is nonzero."""
        if width > self.width:
            raise ValueError("narrowed() cannot widen")
        out = []
        for i, row in enumerate(self.rows):
            for j in range(i + width + 1, len(row)):
                if row[j]:
                    raise BandViolation(i, j)
            out.append(row[: i + width + 1])
        return BandMatrix(out, self.field, width)

    def is_zero(self) -> bool:
        return not any(x for row in self.rows for x in row)

    def superdiagonal(self) -> list[Scalar]:
        return [self.entry(i, i + 1) for i in range(self.valid_rows)]

    def to_json(self) -> dict[str, Any]:
        fmt = self.field.format
        rows = []
        for row in self.rows:
            r = list(row)
            while len(r) > 1 and not r[-1]:
                r.pop()
            rows.append([fmt(x) for x in r])
        return {"field": self.field.name, "valid_rows": self.valid_rows, "rows": rows}

    @classmethod
    def from_json(cls, data: dict[str, Any], width: int = 1) -> "BandMatrix":
        try:
            field = Field.parse(data.get("field", "rational"))
            raw_rows = data["rows"]
            valid = int(data.get("valid_rows", len(raw_rows)))
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            raise ParseError(f"malformed matrix JSON: {exc}") from exc
        if valid > len(raw_rows) or valid < 0:
            raise ParseError(f"valid_rows {valid} inconsistent with {len(raw_rows)} rows")
        rows = []
        for raw in raw_rows[:valid]:
            if not isinstance(raw, list):
                raise ParseError("each row must be a list of scalar strings")
            rows.append([field.scalar(str(x)) for x in raw])
        return cls.from_rows(rows, field, width)


def _check_field(a: BandMatrix, b: BandMatrix) -> None:
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field.name} vs {b.field.name}")


def combine(a: BandMatrix, b: BandMatrix, sign: int = 1) -> BandMatrix:
    """``a + sign * b`` on the common window."""
    _check_field(a, b)
    width = max(a.width, b.width)
    zero = a.field.zero
    rows = []
    for i in range(min(a.valid_rows, b.valid_rows)):
        n = i + width + 1
        ra, rb = a.rows[i], b.rows[i]
        out = []
        for j in range(n):
            x = ra[j] if j < len(ra) else zero
            y = rb[j] if j < len(rb) else zero
            out.append(x + y if sign == 1 else x - y)
        rows.append(tuple(out))
    return BandMatrix(rows, a.field, width)


def scale(a: BandMatrix, s: object) -> BandMatrix:
    s = a.field(s) if not a.field.contains(s) else s
    return BandMatrix([tuple(s * x for x in row) for row in a.rows], a.field, a.width)


def mul(a: BandMatrix, b: BandMatrix) -> BandMatrix:
    """Product on the window ``min(R_a, R_b - w_a)``."""
    _check_field(a, b)
    valid = min(a.valid_rows, b.valid_rows - a.width)
    if valid <= 0:
        raise WindowError("product window is empty")
    width = a.width + b.width
    zero = a.field.zero
    brows = b.rows
    rows = []
    for i in range(valid):
        acc = [zero] * (i + width + 1)
        for k, x in enumerate(a.rows[i]):
            if not x:
                continue
            for j, y in enumerate(brows[k]):
                if y:
                    acc[j] += x * y
        rows.append(tuple(acc))
    return BandMatrix(rows, a.field, width)


def pow(a: BandMatrix, p: int) -> BandMatrix:  # noqa: A001 - mirrors the math name
    """``a^p``; the window shrinks by ``(p - 1) * width``."""
    if p < 0:
        raise ValueError("negative power")
    if p == 0:
        return BandMatrix.identity(a.field, a.valid_rows)
    out = a
    for _ in range(p - 1):
        out = mul(out, a)
    return out


def powers(a: BandMatrix, p_max: int) -> list[BandMatrix]:
    """``[a^0, a^1, ..., a^p_max]``, stopping early if a window empties."""
    out = [BandMatrix.identity(a.field, a.valid_rows), a]
    while len(out) <= p_max:
        try:
            out.append(mul(out[-1], a))
        except WindowError:
            break
    return out[: p_max + 1]


def shift(a: BandMatrix, op: ShiftOp) -> BandMatrix:
    if op.k == 0:
        return a
    if op.kind == "left":
        if a.valid_rows - op.k <= 0:
            raise WindowError("left shift exhausts the window")
        return BandMatrix(a.rows[op.k :], a.field, a.width + op.k)
    pad = (a.field.zero,) * op.k
    return BandMatrix([pad + row for row in a.rows], a.field, a.width + op.k)


def left(a: BandMatrix, k: int) -> BandMatrix:
    """``Y^k a``."""
    return shift(a, ShiftOp("left", k))


def right(a: BandMatrix, k: int) -> BandMatrix:
    """``a Y^k``."""
    return shift(a, ShiftOp("right", k))


def eq_on_window(
    a: BandMatrix, b: BandMatrix, rows: int | None = None, cols: int | None = None
) -> Mismatch | None:
    """First differing entry in row-major order, or None when they agree.

    ``rows`` defaults to the common window; ``cols`` to each row's profile.
    """
    if rows is None:
        rows = min(a.valid_rows, b.valid_rows)
    if rows > min(a.valid_rows, b.valid_rows):
        raise WindowError(f"comparison of {rows} rows exceeds a trusted window")
    zero = a.field.zero
    for i in range(rows):
        ra, rb = a.rows[i], b.rows[i]
        n = max(len(ra), len(rb)) if cols is None else cols
        for j in range(n):
            x = ra[j] if j < len(ra) else zero
            y = rb[j] if j < len(rb) else zero
            if x != y:
                return Mismatch(i, j, x, y)
    return None
