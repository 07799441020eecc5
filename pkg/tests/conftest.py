from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rationals(max_num: int = 6, max_den: int = 4, nonzero: bool = False):
    s = st.builds(
        Fraction, st.integers(-max_num, max_num), st.integers(1, max_den)
    )
    return s.filter(bool) if nonzero else s


def dense_fundamental(rows, kmax=None):
    """First ``(k, i, col)`` where the fundamental identity fails, else None.

    Independent of the band machinery: rows are padded into a square dense
    matrix with one extra zero row, and identity ``k`` is compared on rows
    ``0 .. R - k - 1`` where every entry involved is known.
    """
    R = len(rows)
    S = R + 1
    zero = rows[0][0] * 0
    M = [[zero] * S for _ in range(S)]
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            if j < S:
                M[i][j] = v

    def matmul(A, B):
        return [[sum((A[i][l] * B[l][j] for l in range(S) if A[i][l]), zero) for j in range(S)]
                for i in range(S)]

    ident = [[zero + (1 if i == j else 0) for j in range(S)] for i in range(S)]
    pw = [ident, M]
    kmax = R - 3 if kmax is None else kmax
    while len(pw) < kmax + 2:
        pw.append(matmul(pw[-1], M))
    for k in range(1, kmax + 1):
        for i in range(R - k):
            for col in range(i + k + 2):
                rhs = zero
                for j in range(min(k + 2, col + 1)):
                    rhs += M[k][j] * pw[k + 1 - j][i][col - j]
                if M[k + i][col] != rhs:
                    return (k, i, col)
    return None


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
