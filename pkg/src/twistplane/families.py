"""Constructors for the graded twisting-map families.

Each constructor returns the matrix ``M`` describing ``y^k x`` as a
truncated :class:`BandMatrix` with ``depth`` exact rows. Passing
``tilde=True`` returns ``M - Y`` instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Sequence

from .algebra.field import RATIONAL, Field, Scalar, field_of
from .algebra.obstruction import pq_values
from .bandmatrix import BandMatrix
from .errors import Obstruction, ParseError, Rejected, Rerouted, SequenceTooShort
from .seqlab import QBSeq, require_quasi_balanced

DEFAULT_DEPTH = 24


def _field_for(*xs: object, field: Field | None = None) -> Field:
    if field is not None:
        return field
    for x in xs:
        if isinstance(x, (Fraction, int, str)):
            continue
        return field_of(x)  # type: ignore[arg-type]
    return RATIONAL


def _depth(depth: int) -> None:
    if depth < 1:
        raise ValueError("depth must be at least 1")


def _finish(rows: list[list[Scalar]], F: Field, tilde: bool) -> BandMatrix:
    """Rows are given in M-form; subtract Y when ``tilde`` is set."""
    if tilde:
        for i, row in enumerate(rows):
            row[i + 1] = row[i + 1] - 1
    return BandMatrix.from_rows(rows, F)


def _mrows_to_m(rows: list[list[Scalar]]) -> list[list[Scalar]]:
    """Add Y to rows given in 𝕄-form, padding each to its band profile."""
    out = []
    for i, row in enumerate(rows):
        r = list(row) + [row[0] * 0] * (i + 2 - len(row))
        r[i + 1] = r[i + 1] + 1
        out.append(r)
    return out


def normalize_a(a: Scalar, b: Scalar, c: Scalar) -> tuple[Scalar, Scalar, Scalar]:
    """Rescale ``x`` so that ``M_{10}`` becomes 1: ``(a, b, c) -> (1, b, c a)``."""
    if a == 0:
        raise ValueError("normalization needs a != 0")
    return (a * 0 + 1, b, c * a)


def rescale_x(M: BandMatrix, a: Scalar) -> BandMatrix:
    """Matrix of the twisting map after ``x -> a x``: entries ``M_{kj} a^(j-k)``."""
    if a == 0:
        raise ValueError("rescaling needs a != 0")
    rows = []
    for k, row in enumerate(M.rows):
        rows.append(tuple(v * a ** (j - k) if v else v for j, v in enumerate(row)))
    return BandMatrix(rows, M.field, M.width)


def build_ore(
    b: object, c: object, depth: int = DEFAULT_DEPTH, *, field: Field | None = None,
    tilde: bool = False,
) -> BandMatrix:
    """The ``a = 0`` family: ``y x = b x y + c y^2``."""
    _depth(depth)
    F = _field_for(b, c, field=field)
    b, c = F(b), F(c)
    zero = F.zero
    rows = []
    bn, cn = F.one, zero  # b^n and c_n = b c_{n-1} + c
    for n in range(depth):
        row = [zero] * (n + 2)
        row[n] = bn
        row[n + 1] = cn
        rows.append(row)
        bn, cn = bn * b, b * cn + c
    return _finish(rows, F, tilde)


def build_generic(
    b: object, c: object, depth: int = DEFAULT_DEPTH, *, field: Field | None = None,
    tilde: bool = False,
) -> BandMatrix:
    """The ``a = 1`` family determined by ``y x = x^2 + b x y + c y^2``.

    Row ``k`` is obtained from rows ``< k`` by dividing by ``1 - M_{k-1,k}``;
    a zero divisor is reported as an :class:`Obstruction` with the value of
    ``Q_k(b, c)`` as certificate.
    """
    _depth(depth)
    F = _field_for(b, c, field=field)
    b, c = F(b), F(c)
    if c == 1:
        if b == -1:
            raise Rerouted(
                "(b, c) = (-1, 1) is the square-zero regime; use the particular,"
                " A or B constructors",
                target="square-zero",
            )
        raise Rejected(f"c = 1 forces b = -1, got b = {F.format(b)}")
    zero, one = F.zero, F.one
    rows: list[list[Scalar]] = [[one, zero]]
    if depth > 1:
        rows.append([one, b, c])
    for k in range(2, depth):
        prev = rows[k - 1]
        denom = one - prev[k]
        if not denom:
            q = pq_values(b, c, k)[1]
            raise Obstruction(
                f"M_{k - 1},{k} = 1, so row {k} cannot be built (Q_{k} = {F.format(q)})",
                index=k, poly=f"Q_{k}", value=F.format(q),
            )
        row = [zero] * (k + 2)
        acc = zero
        for i in range(k):
            if prev[i]:
                acc += prev[i] * rows[i][0]
        row[0] = acc / denom
        for s in range(1, k + 1):
            acc = b * prev[s - 1]
            for i in range(s - 1, k):
                if prev[i] and s < len(rows[i]):
                    acc += prev[i] * rows[i][s]
            row[s] = acc / denom
        row[k + 1] = (c + b * prev[k]) / denom
        rows.append(row)
    return _finish(rows, F, tilde)


def build_particular(
    depth: int = DEFAULT_DEPTH, *, field: Field = RATIONAL, tilde: bool = False
) -> BandMatrix:
    """Every row of ``M - Y`` equal to ``E_0 - E_1``."""
    _depth(depth)
    mrows = [[field.one, -field.one] for _ in range(depth)]
    return _finish(_mrows_to_m(mrows), field, tilde)


def anda_coefficients(n: int, d: Scalar, a: Scalar, kmax: int) -> list[list[Scalar]]:
    """``coef[k][r]`` for ``0 <= r <= k <= kmax``: the value at column ``r n``.

    Raises :class:`Obstruction` when ``R_k = e_k + d_k`` vanishes for some
    ``k <= kmax``.
    """
    e = 1 - d
    ek = [d * 0 + 1]  # e_k
    ak = [d * 0 + 1]  # a_k = (-a)^k
    dk = [d * 0]  # d_k
    for k in range(1, kmax + 1):
        ek.append(ek[-1] * e)
        ak.append(ak[-1] * (-a))
        dk.append(e * dk[-1] + d * ak[k - 1])
    R = [ek[k] + dk[k] for k in range(kmax + 1)]
    for k in range(1, kmax + 1):
        if not R[k]:
            raise Obstruction(
                f"R_{k}(a, d) = 0, so no A-family map exists", index=k, poly=f"R_{k}", value=0
            )
    coef: list[list[Scalar]] = [[d * 0 + 1]]
    for k in range(1, kmax + 1):
        row = []
        for r in range(k + 1):
            v = d if r == 0 else ak[r] / R[r]
            for i in range(max(r + 1, 2), k + 1):
                v = v * dk[i] / R[i]
            row.append(v)
        coef.append(row)
    return coef


def build_anda(
    n: int, d: object, a: object, depth: int = DEFAULT_DEPTH, *,
    field: Field | None = None, tilde: bool = False,
) -> BandMatrix:
    """The A-family: rows of ``M - Y`` built from the closed-form coefficients."""
    _depth(depth)
    F = _field_for(d, a, field=field)
    d, a = F(d), F(a)
    if n < 2:
        raise ValueError("n must be at least 2")
    if d == 1 and a == 0:
        raise Rejected("(d, a) = (1, 0) is the particular case, not an A-family member")
    kmax = (depth - 1) // n
    coef = anda_coefficients(n, d, a, kmax)
    zero = F.zero
    mrows = []
    for i in range(depth):
        k = i // n
        row = [zero] * (i + 2)
        if k == 0:
            row[0], row[1] = F.one, -F.one
        else:
            for r in range(k + 1):
                col = r * n
                row[col] = coef[k][r]
                row[col + 1] = -coef[k][r]
        mrows.append(row)
    return _finish(_mrows_to_m(mrows), F, tilde)


def bnl_row(i: int, L: QBSeq, d: Scalar, a: Scalar) -> list[Scalar]:
    """Row ``i`` of ``M(L)`` (in 𝕄-form); ``L`` must reach past ``i``."""
    zero = d * 0
    k = 0
    while k < len(L) and L.terms[k] <= i:
        k += 1
    if k == len(L) and L.terms[-1] + L.n <= i:
        raise SequenceTooShort(f"row {i} needs L_{k + 1}")
    row = [zero] * (i + 2)
    dk = d**k
    if k > 0 and L[k] == i:
        row[0] = dk
        row[1] = -(d ** (k - 1))
        row[i + 1] = a
    else:
        row[0] = dk
        row[1] = -dk
    return row


def build_bnl(
    a: object, L: QBSeq | Sequence[int], depth: int = DEFAULT_DEPTH, *,
    field: Field | None = None, tilde: bool = False, force: bool = False,
) -> BandMatrix:
    """The B-family matrix ``M(L)`` with ``d = 1/(a + 1)``.

    ``force=True`` skips the quasi-balance check so that matrices from
    non-quasi-balanced sequences can be inspected.
    """
    _depth(depth)
    F = _field_for(a, field=field)
    a = F(a)
    if a == 0 or a == -1:
        raise Rejected("the B-family needs a not in {0, -1}")
    if not isinstance(L, QBSeq):
        L = QBSeq.of(L)
    if not force:
        require_quasi_balanced(L)
    if not L.covers(depth):
        raise SequenceTooShort(
            f"L ends at {L.terms[-1]}; rows up to {depth - 1} need L_r + n >= {depth}"
        )
    d = 1 / (a + 1)
    mrows = [bnl_row(i, L, d, a) for i in range(depth)]
    return _finish(_mrows_to_m(mrows), F, tilde)


def twisting_next_row(t: Sequence[Scalar], k: int, d: Scalar, a: Scalar) -> list[Scalar]:
    """Row ``L_k + n + 1`` of 𝕄 from row ``t = 𝕄_{L_k+n,*}``.

    ``t`` has length ``L_k + n + 2``; its last entry is ``t_{L_k+n+1}``.
    """
    size = len(t) + 1
    row = [d * 0] * size
    row[0] = d ** (k + 1)
    row[1] = -t[0]
    row[2] = -t[1] - d**k
    for j in range(3, size - 1):
        row[j] = -t[j - 1]
    row[size - 1] = a - t[-1]
    return row


@dataclass(frozen=True)
class BranchCandidate:
    t0: Scalar
    t_last: Scalar
    row_2n: tuple[Scalar, ...]
    row_2n1: tuple[Scalar, ...]


@dataclass(frozen=True)
class BranchState:
    n: int
    a: Scalar
    d: Scalar
    rows: tuple[tuple[Scalar, ...], ...]
    candidates: tuple[BranchCandidate, ...] = dc_field(default=())

    def to_json(self, F: Field) -> dict[str, Any]:
        fmt = F.format

        def row(r: Sequence[Scalar]) -> list[str]:
            return [fmt(x) for x in r]

        return {
            "n": self.n,
            "a": fmt(self.a),
            "d": fmt(self.d),
            "rows": [row(r) for r in self.rows],
            "candidates": [
                {
                    "t0": fmt(c.t0),
                    "t_last": fmt(c.t_last),
                    "row_2n": row(c.row_2n),
                    "row_2n+1": row(c.row_2n1),
                }
                for c in self.candidates
            ],
        }


def branch_2n(n: int, a: object, *, field: Field | None = None) -> BranchState:
    """Forced rows ``0 .. 2n-1`` of 𝕄 and the four admissible rows ``2n, 2n+1``.

    Candidates are ordered by ``(t_{2n+1}, t_0)`` in ``{0, a} x {d, d^2}``.
    Row ``2n + 1`` is derived from row ``2n`` by :func:`twisting_next_row`.
    """
    F = _field_for(a, field=field)
    a = F(a)
    if n < 2:
        raise ValueError("n must be at least 2")
    if a == 0 or a == -1:
        raise Rejected("the B-family needs a not in {0, -1}")
    d = 1 / (a + 1)
    zero = F.zero
    prefix = QBSeq(n, (n,))
    rows = []
    for i in range(2 * n):
        r = bnl_row(i, prefix, d, a)
        rows.append(tuple(r))

    N = 2 * n + 1
    rows_2n = [
        # t_{2n+1} = 0
        (d, zero, {0: d, 1: -d}),
        (d * d, zero, {0: d * d, 1: -d, n + 1: a * d}),
        # t_{2n+1} = a
        (d, a, {0: d, 1: -d, n: -a * d, N: a}),
        (d * d, a, {0: d * d, 1: -d, N: a}),
    ]
    cands = []
    for t0, tl, spec in rows_2n:
        t = [zero] * (2 * n + 2)
        for j, v in spec.items():
            t[j] += v
        nxt = twisting_next_row(t, 1, d, a)
        cands.append(BranchCandidate(t0, tl, tuple(t), tuple(nxt)))
    return BranchState(n, a, d, tuple(rows), tuple(cands))


VARIANTS = ("ore", "generic", "particular", "anda", "bnl")


@dataclass(frozen=True)
class FamilyParams:
    variant: str
    depth: int = DEFAULT_DEPTH
    b: Scalar | None = None
    c: Scalar | None = None
    n: int | None = None
    d: Scalar | None = None
    a: Scalar | None = None
    L: tuple[int, ...] | None = None
    field: Field = RATIONAL

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ParseError(f"unknown variant {self.variant!r}")
        need = {
            "ore": ("b", "c"),
            "generic": ("b", "c"),
            "particular": (),
            "anda": ("n", "d", "a"),
            "bnl": ("a", "L"),
        }[self.variant]
        missing = [k for k in need if getattr(self, k) is None]
        if missing:
            raise ParseError(f"variant {self.variant} needs {', '.join(missing)}")

    def build(self, tilde: bool = False) -> BandMatrix:
        F = self.field
        if self.variant == "ore":
            return build_ore(self.b, self.c, self.depth, field=F, tilde=tilde)
        if self.variant == "generic":
            return build_generic(self.b, self.c, self.depth, field=F, tilde=tilde)
        if self.variant == "particular":
            return build_particular(self.depth, field=F, tilde=tilde)
        if self.variant == "anda":
            return build_anda(self.n, self.d, self.a, self.depth, field=F, tilde=tilde)  # type: ignore[arg-type]
        return build_bnl(self.a, self.L, self.depth, field=F, tilde=tilde)  # type: ignore[arg-type]

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"variant": self.variant}
        for key in ("n", "b", "c", "d", "a"):
            v = getattr(self, key)
            if v is not None:
                out[key] = v if key == "n" else self.field.format(v)
        if self.L is not None:
            out["L"] = list(self.L)
        out["depth"] = self.depth
        if self.field != RATIONAL:
            out["field"] = self.field.name
        return out

    @classmethod
    def from_json(cls, data: dict[str, Any], field: Field | None = None) -> "FamilyParams":
        if not isinstance(data, dict) or "variant" not in data:
            raise ParseError("parameters must be an object with a 'variant' key")
        F = field or Field.parse(str(data.get("field", "rational")))
        kw: dict[str, Any] = {"variant": data["variant"], "field": F}
        try:
            if "depth" in data:
                kw["depth"] = int(data["depth"])
            if "n" in data:
                kw["n"] = int(data["n"])
            for key in ("b", "c", "d", "a"):
                if key in data:
                    kw[key] = F.scalar(str(data[key]))
            if "L" in data:
                kw["L"] = tuple(int(x) for x in data["L"])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"malformed parameters: {exc}") from exc
        return cls(**kw)
