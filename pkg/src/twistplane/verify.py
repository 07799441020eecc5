"""Checkers for truncated twisting-map matrices, and classification.

A matrix ``M`` with ``M_{0j} = δ_{0j}`` and ``M_{kj} = 0`` for ``j > k + 1``
describes a graded twisting map exactly when

    Y^k M = Σ_{j=0}^{k+1} M_{kj} M^{k+1-j} Y^j     for every k >= 1.

On a window of ``R`` rows, identity ``k`` can be compared on rows
``0 .. R-k-1``. Row 0 of every identity holds trivially, so identity ``k``
counts as verified only when at least ``min_rows`` rows are compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .algebra.field import Field, Scalar
from .bandmatrix import BandMatrix, Mismatch, combine, eq_on_window, left, mul, powers, right, scale
from .errors import SequenceTooShort, WindowError
from .families import build_anda, build_bnl, build_generic, build_ore, rescale_x
from .seqlab import QBSeq, is_quasi_balanced

MIN_ROWS = 3


@dataclass(frozen=True)
class Failure:
    """First offending entry. ``where`` names the equation, ``k`` its index."""

    where: str
    k: int
    i: int
    j: int
    lhs: Scalar
    rhs: Scalar

    def to_json(self, F: Field) -> dict[str, Any]:
        return {
            "where": self.where,
            "k": self.k,
            "i": self.i,
            "j": self.j,
            "lhs": F.format(self.lhs),
            "rhs": F.format(self.rhs),
        }


@dataclass
class VerifyReport:
    check: str
    status: str  # "pass" | "fail" | "window-limited"
    checked_depth: int
    field: Field
    failure: Failure | None = None
    requested_depth: int | None = None
    conditions: dict[str, "VerifyReport"] = field(default_factory=dict)
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def failed(self) -> bool:
        return self.status == "fail"

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "check": self.check,
            "status": self.status,
            "checked_depth": self.checked_depth,
        }
        if self.requested_depth is not None:
            out["requested_depth"] = self.requested_depth
        if self.failure is not None:
            out["failure"] = self.failure.to_json(self.field)
        if self.conditions:
            out["conditions"] = {k: v.to_json() for k, v in self.conditions.items()}
        if self.note:
            out["note"] = self.note
        return out


def merge_reports(check: str, reports: dict[str, VerifyReport], F: Field) -> VerifyReport:
    """Combine sub-reports: any fail wins, then any window limit."""
    statuses = [r.status for r in reports.values()]
    status = "fail" if "fail" in statuses else "window-limited" if "window-limited" in statuses else "pass"
    failure = next((r.failure for r in reports.values() if r.failure is not None), None)
    depth = min((r.checked_depth for r in reports.values()), default=0)
    return VerifyReport(check, status, depth, F, failure, conditions=dict(reports))


def _first_diff(lhs: BandMatrix, rhs: BandMatrix, rows: int) -> Mismatch | None:
    return eq_on_window(lhs, rhs, rows)


def fundamental_cap(M: BandMatrix, min_rows: int = MIN_ROWS) -> int:
    return M.valid_rows - min_rows


def check_fundamental(
    M: BandMatrix, depth: int | None = None, *, min_rows: int = MIN_ROWS
) -> VerifyReport:
    """Check the fundamental identity for ``k = 1 .. depth``.

    ``depth`` defaults to the window cap ``valid_rows - min_rows``. Asking for
    more than the cap gives status ``window-limited`` if nothing fails.
    """
    F = M.field
    R = M.valid_rows
    cap = R - min_rows
    if cap < 1:
        raise WindowError(f"{R} rows cannot verify even k = 1 (need {min_rows + 1})")
    target = cap if depth is None else min(depth, cap)
    if target < 1:
        raise ValueError("depth must be at least 1")
    zero, one = F.zero, F.one
    for j, v in enumerate(M.rows[0]):
        want = one if j == 0 else zero
        if v != want:
            return VerifyReport(
                "fundamental", "fail", 0, F, Failure("row0", 0, 0, j, v, want), depth
            )
    if M.width != 1:
        M = M.narrowed(1)
    P = powers(M, target + 1)
    for k in range(1, target + 1):
        nrows = R - k
        coeffs = M.rows[k]
        for i in range(nrows):
            lhs = M.rows[k + i]
            size = i + k + 2
            acc = [zero] * size
            for j, cj in enumerate(coeffs):
                if not cj:
                    continue
                prow = P[k + 1 - j].rows[i]
                for col, v in enumerate(prow):
                    if v:
                        acc[col + j] += cj * v
            for col in range(size):
                lv = lhs[col] if col < len(lhs) else zero
                if lv != acc[col]:
                    return VerifyReport(
                        "fundamental", "fail", k - 1, F,
                        Failure("fundamental", k, i, col, lv, acc[col]), depth,
                    )
    status = "window-limited" if depth is not None and depth > cap else "pass"
    note = f"identities k <= {target} compared on at least {min_rows} rows"
    return VerifyReport("fundamental", status, target, F, None, depth, note=note)


def first_row_coefficients(M: BandMatrix, k: int) -> tuple[Scalar, ...]:
    """Coefficients ``a_j`` read off from row 0 of ``Y^k M = Σ a_j M^{k+1-j} Y^j``."""
    return tuple(M.entry(k, j) for j in range(k + 2))


def _mym(Mt: BandMatrix, k: int) -> BandMatrix:
    """``𝕄 Y^k 𝕄``."""
    return mul(right(Mt, k), Mt)


def _yk(F: Field, rows: int, k: int) -> BandMatrix:
    """``Y^k`` with ``rows`` trusted rows."""
    return BandMatrix.from_rows(([0] * (i + k) + [1] for i in range(rows)), F, k)


def _compare(name: str, k: int, lhs: BandMatrix, rhs: BandMatrix) -> Failure | None:
    rows = min(lhs.valid_rows, rhs.valid_rows)
    mm = eq_on_window(lhs, rhs, rows)
    if mm is None:
        return None
    return Failure(name, k, mm.row, mm.col, mm.lhs, mm.rhs)


def _condition_report(
    name: str, items: list[tuple[int, Callable[[], tuple[BandMatrix, BandMatrix]]]], F: Field
) -> VerifyReport:
    checked = 0
    for k, make in items:
        lhs, rhs = make()
        f = _compare(name, k, lhs, rhs)
        if f is not None:
            return VerifyReport(name, "fail", checked, F, f)
        checked = k
    return VerifyReport(name, "pass", checked, F, note=f"{len(items)} instances")


def check_mtilde(
    Mt: BandMatrix, a: object, L: QBSeq | Sequence[int], depth: int | None = None
) -> VerifyReport:
    """The three 𝕄-form conditions that characterize the B-family.

    (1) ``𝕄 Y^k 𝕄 = 0`` when neither ``k`` nor ``k+1`` is a term of ``L``;
    (2) ``𝕄 Y^{L_r} 𝕄 + Y 𝕄 Y^{L_r-1} 𝕄 = a Y^{L_r+1} 𝕄``;
    (3) ``𝕄 Y^{L_r-1} 𝕄 = a Σ_{i=0}^{L_r} Y^i 𝕄 Y^{L_r-i} - r a^2 Y^{L_r+1}``.
    Each instance is compared on every row its window allows.
    """
    F = Mt.field
    a = F(a)
    if not isinstance(L, QBSeq):
        L = QBSeq.of(L)
    R = Mt.valid_rows if depth is None else min(depth, Mt.valid_rows)
    if R < Mt.valid_rows:
        Mt = Mt.truncate(R)
    if Mt.width != 1:
        Mt = Mt.narrowed(1)
    if R <= L.n:
        raise WindowError(f"{R} rows end before L_1 = {L.n}")
    terms = set(L.terms)
    known = L.terms[-1] + L.n - 1  # every integer below this is classified

    c1 = []
    for k in range(0, R - 1):
        if k + 1 >= known:
            break
        if k in terms or k + 1 in terms:
            continue
        c1.append((k, lambda k=k: (_mym(Mt, k), BandMatrix.zeros(F, R - k - 1, k + 2))))

    c2 = []
    c3 = []
    for r, Lr in enumerate(L.terms, start=1):
        if Lr <= R - 2:
            def make2(Lr: int = Lr) -> tuple[BandMatrix, BandMatrix]:
                lhs = combine(_mym(Mt, Lr), left(_mym(Mt, Lr - 1), 1))
                return lhs, scale(left(Mt, Lr + 1), a)
            c2.append((r, make2))
        if Lr <= R - 1:
            def make3(r: int = r, Lr: int = Lr) -> tuple[BandMatrix, BandMatrix]:
                lhs = _mym(Mt, Lr - 1)
                acc = None
                for i in range(Lr + 1):
                    term = right(left(Mt, i), Lr - i)
                    acc = term if acc is None else combine(acc, term)
                rhs = combine(
                    scale(acc, a), scale(_yk(F, R, Lr + 1), r * a * a), -1
                )
                return lhs, rhs
            c3.append((r, make3))
    if not c3:
        raise WindowError("window exhausted before the first L_r")
    reports = {
        "1": _condition_report("mtilde-1", c1, F),
        "2": _condition_report("mtilde-2", c2, F),
        "3": _condition_report("mtilde-3", c3, F),
    }
    return merge_reports("mtilde", reports, F)


@dataclass(frozen=True)
class GammaTable:
    """``γ^r_j(x^i)`` coefficients ``(M^i)_{rj}`` for ``r <= max_r``, ``i <= max_i``."""

    field: Field
    max_r: int
    max_i: int
    entries: dict[tuple[int, int, int], Scalar]

    def get(self, r: int, j: int, i: int) -> Scalar:
        if j < 0 or j > r + i:
            return self.field.zero
        return self.entries[(r, j, i)]

    def with_entry(self, r: int, j: int, i: int, value: Scalar) -> "GammaTable":
        e = dict(self.entries)
        e[(r, j, i)] = value
        return GammaTable(self.field, self.max_r, self.max_i, e)


def gamma_table(M: BandMatrix, max_r: int, max_i: int) -> GammaTable:
    if M.valid_rows < max_r + max(max_i, 1):
        raise WindowError(
            f"{M.valid_rows} rows cannot give γ^r(x^i) for r <= {max_r}, i <= {max_i}"
        )
    P = powers(M.narrowed(1) if M.width != 1 else M, max_i)
    entries = {}
    for i in range(max_i + 1):
        for r in range(max_r + 1):
            for j in range(r + i + 1):
                entries[(r, j, i)] = P[i].entry(r, j)
    return GammaTable(M.field, max_r, max_i, entries)


def check_gamma_axioms(T: GammaTable) -> VerifyReport:
    """Check the four twisting-map axioms at the level of graded coefficients.

    Multiplicativity is checked where every intermediate ``γ^k`` lies in the
    table (``r + i <= max_r``); composition where every power needed stays
    within ``max_i`` (``(r - s) + m <= max_i``).
    """
    F = T.field
    zero, one = F.zero, F.one

    def fail(name: str, k: int, i: int, j: int, lhs: Scalar, rhs: Scalar) -> VerifyReport:
        return VerifyReport("gamma", "fail", 0, F, Failure(name, k, i, j, lhs, rhs))

    for i in range(T.max_i + 1):
        for j in range(i + 1):
            want = one if j == 0 else zero
            if T.get(0, j, i) != want:
                return fail("gamma-1", 0, i, j, T.get(0, j, i), want)
    for r in range(T.max_r + 1):
        for j in range(r + 1):
            want = one if j == r else zero
            if T.get(r, j, 0) != want:
                return fail("gamma-2", r, 0, j, T.get(r, j, 0), want)
    count = 0
    for r in range(T.max_r + 1):
        for i in range(T.max_i + 1):
            if r + i > T.max_r:
                break
            for l in range(T.max_i - i + 1):
                for j in range(r + i + l + 1):
                    rhs = zero
                    for k in range(r + i + 1):
                        g = T.get(r, k, i)
                        if g:
                            rhs += g * T.get(k, j, l)
                    lhs = T.get(r, j, i + l)
                    count += 1
                    if lhs != rhs:
                        return fail("gamma-3", r, i + l, j, lhs, rhs)
    for r in range(1, T.max_r + 1):
        for s in range(r):
            for m in range(T.max_i + 1):
                if r - s + m > T.max_i:
                    break
                for j in range(r + m + 1):
                    rhs = zero
                    for l in range(j + 1):
                        inner = T.get(r - s, j - l, m)
                        if not inner:
                            continue
                        deg = r - s + m - (j - l)
                        rhs += T.get(s, l, deg) * inner
                    lhs = T.get(r, j, m)
                    count += 1
                    if lhs != rhs:
                        return fail("gamma-4", r, m, j, lhs, rhs)
    return VerifyReport("gamma", "pass", T.max_r, F, note=f"{count} coefficient identities")


def check_anda_levels(
    Mt: BandMatrix, n: int, d: object, a: object, kmax: int
) -> VerifyReport:
    """``d_k 𝕄 Y^{kn-1} 𝕄 = e_k Y^{kn} 𝕄 - a_k 𝕄 Y^{kn}`` for ``k = 1 .. kmax``.

    For ``k = 1`` this is ``d 𝕄 Y^{n-1} 𝕄 = e Y^n 𝕄 + a 𝕄 Y^n``.
    """
    F = Mt.field
    d, a = F(d), F(a)
    e = 1 - d
    items = []
    ek, ak, dk = F.one, F.one, F.zero
    for k in range(1, kmax + 1):
        dk = e * dk + d * ak
        ek, ak = ek * e, ak * (-a)
        kn = k * n
        if Mt.valid_rows - kn - 1 < 1:
            raise WindowError(f"{Mt.valid_rows} rows cannot check level {k}")

        def make(kn: int = kn, dk: Scalar = dk, ek: Scalar = ek, ak: Scalar = ak):
            lhs = scale(_mym(Mt, kn - 1), dk)
            rhs = combine(scale(left(Mt, kn), ek), scale(right(Mt, kn), ak), -1)
            return lhs, rhs

        items.append((k, make))
    return _condition_report("anda-level", items, F)


@dataclass(frozen=True)
class FamilyTag:
    variant: str
    params: dict[str, Any]
    rows: int

    def to_json(self) -> dict[str, Any]:
        return {"variant": self.variant, "params": self.params, "rows": self.rows}


def classify(M: BandMatrix) -> FamilyTag:
    """Name the family a matrix prefix belongs to, with its parameters.

    The prefix must agree with the family constructor on every row; a
    prefix that matches no family is tagged ``inconsistent``. In the
    square-zero regime, rows with a superdiagonal pattern that is not a
    quasi-balanced sequence are tagged ``unclassified-branch``.
    """
    F = M.field
    R = M.valid_rows
    fmt = F.format
    if R < 2:
        raise WindowError("classification needs at least 2 rows")
    if M.width != 1:
        M = M.narrowed(1)

    def tag(variant: str, **params: Any) -> FamilyTag:
        return FamilyTag(variant, params, R)

    def same(other: BandMatrix) -> bool:
        return eq_on_window(M, other) is None

    bad = tag("inconsistent")
    if M.rows[0][0] != 1 or M.rows[0][1]:
        return bad
    a, b, c = M.rows[1]
    try:
        if a == 0:
            ok = same(build_ore(b, c, R, field=F))
            return tag("ore", b=fmt(b), c=fmt(c)) if ok else bad
        N = rescale_x(M, a)
        c1 = c * a
        if not (b == -1 and c1 == 1):
            ok = eq_on_window(N, build_generic(b, c1, R, field=F)) is None
            if not ok:
                return bad
            return tag("generic", a=fmt(a), b=fmt(b), c=fmt(c1))
    except Exception:  # constructor rejected the parameters
        return bad
    extra = {} if a == 1 else {"a_scale": fmt(a)}
    Mt = combine(N, BandMatrix.shift_matrix(F, R), -1)
    row0 = Mt.rows[0]
    n = None
    for i in range(1, R):
        r = Mt.rows[i]
        if r[0] != row0[0] or r[1] != row0[1] or any(r[2:]):
            n = i
            break
    if n is None:
        return tag("particular", **extra)
    row = Mt.rows[n]
    dd, cc, bb, aa = row[0], row[1], row[n], row[n + 1]
    if n < 2 or any(row[2:n]):
        return bad
    if cc == -dd and bb == -aa and not (dd == 1 and aa == 0):
        try:
            ok = eq_on_window(N, build_anda(n, dd, aa, R, field=F)) is None
        except Exception:
            return bad
        if ok:
            return tag("anda", n=n, d=fmt(dd), a=fmt(aa), **extra)
        return bad
    if cc == -1 and bb == 0 and aa != 0 and dd * (aa + 1) == 1:
        sup = [i for i in range(n, R) if Mt.rows[i][i + 1]]
        try:
            L = QBSeq(n, tuple(sup))
        except Exception:
            return tag("unclassified-branch", n=n, a=fmt(aa), **extra)
        if not is_quasi_balanced(L):
            return tag("unclassified-branch", n=n, a=fmt(aa), L=list(sup), **extra)
        # the next term may lie beyond the window; try both increments
        for nxt in (L.terms[-1] + n, L.terms[-1] + n + 1):
            try:
                cand = L.extended(nxt)
                ok = eq_on_window(N, build_bnl(aa, cand, R, field=F, force=True)) is None
            except SequenceTooShort:
                continue
            if ok:
                return tag("bnl", n=n, a=fmt(aa), L=list(L.terms), **extra)
        return tag("unclassified-branch", n=n, a=fmt(aa), L=list(sup), **extra)
    return bad
