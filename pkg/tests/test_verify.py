import pytest

from ordsum.errors import DomainError
from ordsum.notation import parse_ordinal as P
from ordsum.notation import parse_sequence as S
from ordsum.ordinal import compare, nat
from ordsum.sequence import Move, apply_move
from ordsum.sums import sum_s
from ordsum.verify import (
    PropertyReport,
    approach_move,
    check_descent,
    impossibility_fixtures,
    minimality_suite,
    rank_oracle_finite,
    nonstrict_fixtures,
    run_suite,
)


def test_rank_oracle_small_cases():
    assert rank_oracle_finite(S("[ ; const 0]")) == nat(0)
    assert rank_oracle_finite(S("[2, 3 ; const 0]")) == nat(5)
    assert rank_oracle_finite(S("[1, 0, 4, 2 ; const 0]")) == nat(7)


def test_rank_oracle_domain():
    for text in ("[ ; const 1]", "[w ; const 0]", "[ ; approach 0 ~ w]"):
        with pytest.raises(DomainError):
            rank_oracle_finite(S(text))
    with pytest.raises(DomainError):
        rank_oracle_finite(S("[40 ; const 0]"), bound=12)


def test_check_descent():
    s = S("[w^w ; const 2]")
    assert check_descent(s, Move(0, frozenset(), P("w^5")))
    assert check_descent(S("[ ; const w]"), Move(3, {0, 1}, nat(7)))


def test_approach_move_examples():
    s = S("[w^w ; approach 0 ~ w^w]")
    for eta in ("0", "w^3 + 5", "w^w", "w^w + w^4*2"):
        m = approach_move(s, P(eta))
        got = sum_s(apply_move(s, m))
        assert compare(P(eta), got) <= 0 and compare(got, sum_s(s)) < 0
    with pytest.raises(DomainError):
        approach_move(s, P("w^w*2"))


def test_fixture_suites():
    assert impossibility_fixtures().ok
    assert nonstrict_fixtures().ok
    assert minimality_suite(30, 1).ok


def test_zero_trials_is_empty():
    for r in run_suite("all", 0):
        assert r.ok and r.trials == 0 and not r.failures


def test_report_skip_ceiling():
    r = PropertyReport("x", samples=10, skipped=1, skip_ceiling=0.05)
    assert not r.ok
    r.skipped = 0
    assert r.ok
    r.fail(3, "input", "detail")
    assert not r.ok and "FAIL" in r.summary()


def test_unknown_suite():
    with pytest.raises(DomainError):
        run_suite("nope", 1)


@pytest.mark.parametrize("name", ["descent", "approach", "realization", "sum-h", "monotonicity"])
def test_short_suites_pass(name):
    (r,) = run_suite(name, 25, 7)
    assert r.ok, r.failures
