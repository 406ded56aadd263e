import bisect
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reference_impls import trial_primes
from semipi import (
    QuotientPiTable,
    RangeError,
    build_prime_table,
    build_quotient_pi,
    check_identity,
    identity_lhs,
    identity_rhs,
    pair_sum_grouped,
)


def test_identity_golden_25():
    rep = check_identity(25)
    assert (rep.head_sum, rep.tail_sum) == (12, 3)  # (5+4+3) and (2+1)
    assert rep.lhs == rep.rhs == 9  # 3^2
    assert rep.residual == 0


def test_identity_trivial_n1_n2():
    for n in (1, 2):
        rep = check_identity(n)
        assert rep.head_sum == rep.tail_sum == rep.lhs == rep.rhs == rep.residual == 0


def test_identity_lhs_golden_25():
    assert identity_lhs(25, build_quotient_pi(25)) == (12, 3, 9)


def test_identity_rhs_golden(dense_10k):
    assert identity_rhs(25, dense_10k) == 9
    assert identity_rhs(1, dense_10k) == 0
    assert identity_rhs(10**4, dense_10k) == 625


def test_identity_at_1e4_with_naive_per_prime_summation(dense_10k):
    # independent route: literal per-prime sums using trial-division primes
    n = 10**4
    primes = trial_primes(n // 2)
    pi = lambda x: bisect.bisect_right(primes, x)  # noqa: E731
    head = sum(pi(n // p) for p in primes if p * p <= n)
    tail = sum(pi(n // p) for p in primes if p * p > n)
    assert (head, tail) == (2925, 2300)
    rep = check_identity(n, table=dense_10k)
    assert (rep.head_sum, rep.tail_sum) == (head, tail)
    assert rep.lhs == rep.rhs == 625
    assert rep.residual == 0


def test_identity_residual_zero_exhaustive(dense_10k):
    for n in range(1, 5001):
        rep = check_identity(n, table=dense_10k)
        assert rep.residual == 0, n


def test_identity_residual_zero_random_large():
    rng = random.Random(0x5EED)
    for _ in range(25):
        n = rng.randrange(1, 10**9)
        assert check_identity(n).residual == 0, n


def test_identity_regression_pin_1e9():
    rep = check_identity(10**9)
    assert (rep.head_sum, rep.tail_sum) == (166570236, 155003435)
    assert rep.lhs == rep.rhs == 11566801  # pi(31622)^2 = 3401^2
    assert rep.residual == 0


def test_head_plus_tail_equals_pair_sum(dense_10k):
    rng = random.Random(3)
    for n in [1, 2, 3, 4, 25, 10**4] + [rng.randrange(1, 10**4) for _ in range(100)]:
        q = QuotientPiTable.from_dense(n, dense_10k)
        head, tail, _ = identity_lhs(n, q)
        assert head + tail == pair_sum_grouped(n, q).value, n


def test_double_head_minus_pair_equals_rhs(dense_10k):
    # twice the head minus the full pair sum must equal the rhs
    for n in range(1, 2001):
        q = QuotientPiTable.from_dense(n, dense_10k)
        head, tail, _ = identity_lhs(n, q)
        pair = pair_sum_grouped(n, q).value
        assert 2 * head - pair == identity_rhs(n, dense_10k), n


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=10**6))
def test_identity_residual_zero_hypothesis(n):
    assert check_identity(n).residual == 0


def test_identity_rejects_bad_n():
    with pytest.raises(RangeError):
        check_identity(0)


def test_identity_lhs_rejects_mismatched_table():
    with pytest.raises(RangeError):
        identity_lhs(24, build_quotient_pi(25))


def test_check_identity_ignores_undersized_table():
    # a table that does not cover n falls back to the recurrence route
    small = build_prime_table(10)
    rep = check_identity(10**4, table=small)
    assert rep.lhs == rep.rhs == 625
