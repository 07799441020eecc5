from fractions import Fraction as Fr

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import rationals
from twistplane.algebra import (
    GF,
    RATIONAL,
    BiPoly,
    Field,
    find_q_root,
    find_r_root,
    pq_polys,
    pq_values,
    r_poly,
    r_value,
)
from twistplane.errors import ExcludedPoint, ParseError

b_, c_ = BiPoly.gens(("b", "c"))
a_, d_ = BiPoly.gens(("a", "d"))


# -- scalars ---------------------------------------------------------------

def test_rational_parse_and_format():
    assert RATIONAL.scalar("6/4") == Fr(3, 2)
    assert RATIONAL.scalar("-7") == Fr(-7)
    assert RATIONAL.format(Fr(-3, 6)) == "-1/2"
    assert RATIONAL.format(Fr(4)) == "4"
    with pytest.raises(ParseError):
        RATIONAL.scalar("1/0")
    with pytest.raises(ParseError):
        RATIONAL.scalar("1.5")


def test_gf_parse_and_format():
    F = Field.parse("gf:7")
    assert F.scalar("3") == GF(3, 7)
    assert F.scalar("1/2") == GF(4, 7)
    assert F.scalar("10 mod 7") == GF(3, 7)
    assert F.format(F.scalar("-1")) == "6 mod 7"
    with pytest.raises(ParseError):
        F.scalar("1/7")
    with pytest.raises(ParseError):
        Field.parse("gf:8")
    with pytest.raises(ParseError):
        RATIONAL.scalar("3 mod 7")


def test_division_by_zero_is_an_error():
    with pytest.raises(ZeroDivisionError):
        GF(3, 5) / GF(0, 5)
    with pytest.raises(ZeroDivisionError):
        Fr(1) / Fr(0)


@given(st.integers(), st.integers(), st.integers(), st.sampled_from([2, 3, 5, 7, 101, 2**31 - 1]))
def test_gf_field_axioms(x, y, z, p):
    a, b, c = GF(x, p), GF(y, p), GF(z, p)
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == GF(0, p)
    assert 0 <= a.v < p
    if b:
        assert (a / b) * b == a


# -- polynomials ------------------------------------------------------------

def test_pq_small_values():
    assert pq_polys(1) == (BiPoly.const(1), BiPoly.const(1))
    assert pq_polys(2) == (b_ + 1, 1 - c_)
    assert pq_polys(3) == (b_**2 + b_ + 1 - c_, 1 - 2 * c_ - b_ * c_)


def test_r_small_values():
    assert r_poly(1) == BiPoly.const(1)
    assert r_poly(2) == 1 - d_ - a_ * d_
    assert r_poly(3)(Fr(1), Fr(2)) == 5


def test_bipoly_canonical_order_and_json():
    p = 3 * a_**2 + a_ * d_ - 4 + d_**3
    assert p.to_json() == [[0, 3, 1], [2, 0, 3], [1, 1, 1], [0, 0, -4]]
    assert BiPoly.from_json(p.to_json(), p.names) == p
    assert str(1 - d_ - a_ * d_) == "-a*d - d + 1"
    assert (p - p).is_zero()


@given(rationals(), rationals(), st.integers(1, 30))
def test_pq_polys_match_scalar_recursion(b, c, n):
    P, Q = pq_polys(n)
    assert (P(b, c), Q(b, c)) == pq_values(b, c, n)


@given(rationals(), rationals(), st.integers(1, 12))
def test_superdiagonal_relation(b, c, n):
    # c_n = c P_n / Q_n satisfies c_{n+1} (1 - c_n) = b c_n + c
    P, Q = pq_values(b, c, n)
    P1, Q1 = pq_values(b, c, n + 1)
    assume(Q != 0 and Q1 != 0)
    cn, cn1 = c * P / Q, c * P1 / Q1
    assert cn1 * (1 - cn) == b * cn + c


def _anda_recurrences(a, d, kmax):
    e = 1 - d
    ek = [e**k for k in range(kmax + 2)]
    ak = [(-a) ** k for k in range(kmax + 2)]
    dk = [d * sum(ek[j] * ak[k - 1 - j] for j in range(k)) for k in range(kmax + 2)]
    return ek, ak, dk


@given(rationals(), rationals(), st.integers(1, 30))
def test_r_poly_matches_recurrences(a, d, k):
    ek, _, dk = _anda_recurrences(a, d, k)
    assert r_poly(k)(a, d) == ek[k] + dk[k] == r_value(a, d, k)


@given(rationals(), rationals(nonzero=True), st.integers(1, 20))
def test_dk_identity(a, d, k):
    ek, _, dk = _anda_recurrences(a, d, k)
    assert ek[k] - a * dk[k] / d == dk[k + 1] / d


@given(st.integers(0, 40), st.integers(0, 40), st.integers(1, 12))
def test_polys_evaluate_in_gf(x, y, n):
    F = Field(13)
    b, c = F(x), F(y)
    assert pq_polys(n)[1](b, c) == pq_values(b, c, n)[1]
    assert r_poly(n)(b, c) == r_value(b, c, n)


# -- roots -----------------------------------------------------------------

def test_q_root_examples():
    assert find_q_root(Fr(5, 3), Fr(1, 9), 10) == (4, "equal-eigenvalues")
    assert pq_values(Fr(5, 3), Fr(1, 9), 4)[1] == 0
    assert find_q_root(Fr(2), Fr(-2), 50) == (None, "b+c=0")
    assert find_q_root(Fr(0), Fr(0), 50) == (None, "c=0")
    assert find_q_root(Fr(-1), Fr(1, 2), 50) == (None, "b=-1")
    with pytest.raises(ExcludedPoint):
        find_q_root(Fr(-1), Fr(1))


def test_r_root_examples():
    # R_k = e^(k-1) (k d + e) on -a = e, so d = -1/3 vanishes at k = 4
    assert find_r_root(Fr(-4, 3), Fr(-1, 3), 10) == (4, "-a=e")
    assert r_value(Fr(-4, 3), Fr(-1, 3), 4) == 0
    assert r_value(Fr(-4, 3), Fr(-1, 3), 3) == Fr(16, 27)
    assert find_r_root(Fr(1), Fr(2), 50).index is None
    assert find_r_root(Fr(0), Fr(1, 2), 50) == (None, "a=0")
    with pytest.raises(ExcludedPoint):
        find_r_root(Fr(0), Fr(1))


def test_r_closed_forms():
    for k in range(1, 30):
        assert r_value(Fr(1), Fr(2), k) == (-1) ** (k - 1) * (2 * k - 1)
        assert r_value(Fr(0), Fr(1, 3), k) == Fr(2, 3) ** (k - 1)


@pytest.mark.parametrize("m", range(1, 12))
def test_equal_eigenvalue_roots(m):
    b = 1 + Fr(2, m)
    c = (b - 1) ** 2 / 4
    n, tag = find_q_root(b, c, 5)
    assert (n, tag) == (m + 1, "equal-eigenvalues")
    assert all(pq_values(b, c, j)[1] != 0 for j in range(1, m + 1))


@pytest.mark.parametrize("k", range(2, 12))
def test_minus_a_equals_e_roots(k):
    a, d = -Fr(k, k - 1), -Fr(1, k - 1)
    idx, tag = find_r_root(a, d, 5)
    assert (idx, tag) == (k, "-a=e")
    assert all(r_value(a, d, j) != 0 for j in range(1, k))


@given(rationals(8, 5), rationals(8, 5))
def test_q_root_agrees_with_brute_force(b, c):
    assume(not (b == -1 and c == 1))
    n, tag = find_q_root(b, c, 40)
    brute = next((j for j in range(1, 41) if pq_values(b, c, j)[1] == 0), None)
    if tag == "bounded":
        assert n == brute
    else:
        assert n is None or n > 40 or n == brute
        if n is None:
            assert brute is None


@given(rationals(8, 5), rationals(8, 5))
def test_r_root_agrees_with_brute_force(a, d):
    assume(not (a == 0 and d == 1))
    k, tag = find_r_root(a, d, 40)
    brute = next((j for j in range(1, 41) if r_value(a, d, j) == 0), None)
    if k is not None:
        assert r_value(a, d, k) == 0
    if k is None or k <= 40:
        assert k == brute


def test_r_root_ratio_case():
    # (-a/e)^k = (1 + a)/d with e = 1 - d: pick -a/e = 2, k = 3
    # a = -2e, 1 + a = 8 d  ->  1 - 2(1 - d) = 8 d  ->  d = -1/6
    d = Fr(-1, 6)
    a = -2 * (1 - d)
    assert find_r_root(a, d, 2) == (3, "ratio")
    assert r_value(a, d, 3) == 0


@given(st.integers(0, 10), st.integers(0, 10))
def test_gf_roots_are_bounded_and_verified(x, y):
    F = Field(11)
    b, c = F(x), F(y)
    assume(not (b == -1 and c == 1))
    n, tag = find_q_root(b, c, 30)
    assert tag == "bounded"
    if n is not None:
        assert pq_values(b, c, n)[1] == 0
