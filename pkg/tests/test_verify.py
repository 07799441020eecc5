import random
from fractions import Fraction as Fr

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import dense_fundamental, rationals
from twistplane.bandmatrix import BandMatrix, mul, right
from twistplane.errors import WindowError
from twistplane.families import (
    build_anda,
    build_bnl,
    build_generic,
    build_ore,
    build_particular,
    rescale_x,
)
from twistplane.seqlab import QBSeq, enumerate_prefixes, failure_witness, generate
from twistplane.verify import (
    check_anda_levels,
    check_fundamental,
    check_gamma_axioms,
    check_mtilde,
    classify,
    first_row_coefficients,
    gamma_table,
)

FAMILY = {
    "ore": build_ore(2, 1, 14),
    "generic": build_generic(2, -2, 14),
    "particular": build_particular(14),
    "anda": build_anda(2, 2, 1, 14),
    "bnl": build_bnl(1, [2, 4, 7, 9, 11, 14], 14),
}


def mutate(M: BandMatrix, i: int, j: int, delta) -> BandMatrix:
    rows = [list(r) for r in M.rows]
    rows[i][j] += delta
    return BandMatrix.from_rows(rows, M.field)


@pytest.mark.parametrize("name", sorted(FAMILY))
def test_families_pass(name):
    M = FAMILY[name]
    rep = check_fundamental(M)
    assert rep.passed and rep.checked_depth == 11
    assert check_gamma_axioms(gamma_table(M, 6, 6)).passed


def test_window_handling():
    M = build_ore(2, 1, 10)
    rep = check_fundamental(M, 12)
    assert rep.status == "window-limited" and rep.checked_depth == 7
    assert check_fundamental(M, 5).checked_depth == 5
    with pytest.raises(WindowError):
        check_fundamental(build_ore(2, 1, 3))
    assert check_fundamental(build_ore(2, 1, 3), min_rows=1).passed
    with pytest.raises(WindowError):
        gamma_table(M, 6, 6)


def test_row_zero_precondition():
    rep = check_fundamental(mutate(build_particular(8), 0, 0, 1))
    assert rep.failed and rep.failure.where == "row0"


def test_first_row_coefficients():
    M = build_generic(3, Fr(1, 2), 8)
    for k in range(1, 6):
        assert first_row_coefficients(M, k) == M.row(k)[: k + 2]


@pytest.mark.parametrize("name", sorted(FAMILY))
@given(data=st.data())
def test_single_mutations_are_caught(name, data):
    M = FAMILY[name]
    cap = M.valid_rows - 3
    i = data.draw(st.integers(0, cap))
    j = data.draw(st.integers(0, i + 1))
    delta = data.draw(rationals(nonzero=True))
    X = mutate(M, i, j, delta)
    rep = check_fundamental(X)
    assert rep.failed
    assert dense_fundamental([list(r) for r in X.rows]) is not None
    f = rep.failure
    if f.where == "fundamental":
        assert f.k + f.i >= i or f.k >= i  # the failure reads the mutated row


@given(st.lists(st.lists(rationals(3, 2), min_size=1, max_size=8), min_size=5, max_size=7))
def test_checker_agrees_with_dense_oracle(raw):
    rows = [[1, 0]] + [r[: i + 3] for i, r in enumerate(raw)]
    M = BandMatrix.from_rows(rows, FAMILY["ore"].field)
    padded = [list(r) for r in M.rows]
    assert check_fundamental(M).passed == (dense_fundamental(padded) is None)


@given(rationals(), rationals(), rationals(nonzero=True))
def test_checker_agrees_on_near_solutions(b, c, delta):
    assume(c != 1)
    try:
        M = build_generic(b, c, 8)
    except Exception:
        return
    X = mutate(M, 4, 2, delta)
    assert check_fundamental(X).failed
    assert dense_fundamental([list(r) for r in X.rows]) is not None


def test_gamma_negative_control():
    T = gamma_table(build_generic(2, -2, 14), 6, 6)
    bad = T.with_entry(1, 1, 2, T.get(1, 1, 2) + 1)
    rep = check_gamma_axioms(bad)
    assert rep.failed and rep.failure.where == "gamma-3"
    bad = T.with_entry(0, 1, 3, Fr(1))
    assert check_gamma_axioms(bad).failure.where == "gamma-1"
    bad = T.with_entry(3, 2, 2, T.get(3, 2, 2) + 1)
    assert check_gamma_axioms(bad).failed
    # the corner r = i = max appears in no truncated axiom instance
    bad = T.with_entry(6, 2, 6, T.get(6, 2, 6) + 1)
    assert check_gamma_axioms(bad).passed


@pytest.mark.parametrize("n", [2, 3])
def test_mtilde_agrees_with_fundamental(n):
    for L in enumerate_prefixes(n, 6)[:12]:
        depth = L.terms[-1] + 1
        Mt = build_bnl(2, L, depth, tilde=True)
        assert check_mtilde(Mt, 2, L).passed
        assert check_fundamental(build_bnl(2, L, depth)).passed


@pytest.mark.parametrize(
    "terms", [(2, 4, 7, 10, 12, 14), (2, 5, 7, 9, 11, 13), (3, 6, 10, 14, 17, 20), (3, 7, 10, 13, 17, 20)]
)
def test_failure_localization(terms):
    L = QBSeq.of(terms)
    fc = failure_witness(L)
    Lk, Lr, Lm = L[fc.k], L[fc.r], L[fc.m]
    expect_row = Lk + Lr - 1 if fc.case == 1 else Lk + Lr + 1
    assert expect_row == (Lm if fc.case == 1 else Lm - 1)
    first_bad = None
    for R in range(L.n + 2, Lm + 3):
        if check_fundamental(build_bnl(1, L, R, force=True), min_rows=1).failed:
            first_bad = R - 1
            break
    assert first_bad == expect_row
    Mt = build_bnl(1, L, Lm + 3, force=True, tilde=True)
    if fc.case == 1:
        assert mul(right(Mt, Lr - 2), Mt).entry(Lk, 0) != 0
    else:
        assert mul(right(Mt, Lr + 1), Mt).entry(Lk, Lm + 1) != 0
        rep = check_mtilde(Mt, 1, L)
        f = rep.conditions["1"].failure
        assert f is not None and (f.k, f.i) == (Lr + 1, Lk)


def test_anda_levels():
    Mt = build_anda(2, 2, 1, 14, tilde=True)
    assert check_anda_levels(Mt, 2, 2, 1, 3).passed
    assert check_anda_levels(build_anda(3, Fr(1, 5), 2, 16, tilde=True), 3, Fr(1, 5), 2, 3).passed
    assert check_anda_levels(Mt, 2, 3, 1, 3).failed
    with pytest.raises(WindowError):
        check_anda_levels(Mt, 2, 2, 1, 7)


def _tag(M):
    t = classify(M)
    return t.variant, t.params


@given(rationals(), rationals())
def test_classify_round_trip_ore_generic(b, c):
    assert _tag(build_ore(b, c, 8)) == ("ore", {"b": str(b), "c": str(c)})
    assume(c != 1)
    try:
        M = build_generic(b, c, 8)
    except Exception:
        return
    assert _tag(M) == ("generic", {"a": "1", "b": str(b), "c": str(c)})
    N = rescale_x(M, Fr(1, 3))  # a = 3 after rescaling back
    v, p = _tag(N)
    assert v == "generic" and p["a"] == "3" and p["c"] == str(c)


@given(st.integers(2, 4), rationals(nonzero=True), rationals())
def test_classify_round_trip_anda(n, d, a):
    assume((d, a) != (1, 0))
    try:
        M = build_anda(n, d, a, 3 * n + 2)
    except Exception:
        return
    assert _tag(M) == ("anda", {"n": n, "d": str(d), "a": str(a)})


@given(st.integers(2, 3), rationals(nonzero=True), st.integers(0, 500))
def test_classify_round_trip_bnl(n, a, seed):
    assume(a != -1)
    L = generate(n, 8, "random", seed)
    M = build_bnl(a, L, 5 * n)
    v, p = _tag(M)
    assert v == "bnl" and p["n"] == n and p["a"] == str(a)
    assert list(L.terms[: len(p["L"])]) == p["L"]


def test_classify_special_tags():
    assert _tag(build_particular(10)) == ("particular", {})
    assert classify(mutate(build_ore(2, 1, 10), 5, 5, 1)).variant == "inconsistent"
    assert classify(mutate(build_particular(10), 0, 1, 1)).variant == "inconsistent"
    forced = build_bnl(1, [2, 4, 7, 10, 12], 12, force=True)
    assert classify(forced).variant == "unclassified-branch"
    with pytest.raises(WindowError):
        classify(build_particular(1))


def test_mutation_kill_rate_over_window():
    rng = random.Random(5)
    for M in FAMILY.values():
        cap = M.valid_rows - 3
        for _ in range(30):
            i = rng.randrange(cap + 1)
            j = rng.randrange(i + 2)
            assert check_fundamental(mutate(M, i, j, Fr(rng.choice([-2, -1, 1, 3]), 2))).failed
