from fractions import Fraction
from math import gcd, pi

import numpy as np
import pytest
from hypothesis import given, strategies as st

from relclass.dedekind import (
    N_value,
    dedekind_sum,
    dedekind_sum_naive,
    mean_square_M,
    mersenne_N_closed_form,
    sawtooth,
)
from relclass.errors import InvalidInput
from relclass.numtheory import odd_divisors, primes_up_to


def test_sawtooth():
    assert sawtooth(Fraction(0)) == 0
    assert sawtooth(Fraction(3)) == 0
    assert sawtooth(Fraction(1, 4)) == Fraction(-1, 4)
    assert sawtooth(Fraction(-1, 4)) == Fraction(1, 4)


def test_dedekind_examples():
    assert dedekind_sum(1, 5) == Fraction(1, 5)
    assert dedekind_sum(2, 5) == 0
    assert dedekind_sum(2, 7) == Fraction(1, 14)
    assert dedekind_sum(1, 7) == Fraction(5, 14)
    assert dedekind_sum(4, 7) == Fraction(1, 14)


def definition_sum_int(h, k):
    # 4k^2 s(h,k) = sum (2j - k)(2(hj mod k) - k) over 1 <= j < k
    j = np.arange(1, k, dtype=np.int64)
    r = (h * j) % k
    return Fraction(int(np.dot(2 * j - k, 2 * r - k)), 4 * k * k)


def test_reciprocity_matches_definition_exhaustive():
    for k in range(2, 501):
        for h in range(1, k):
            if gcd(h, k) == 1:
                assert dedekind_sum(h, k) == definition_sum_int(h, k), (h, k)


def test_matches_fraction_definition_small():
    for k in range(1, 40):
        for h in range(-k, 2 * k + 1):
            if gcd(h, k) == 1:
                assert dedekind_sum(h, k) == dedekind_sum_naive(h, k), (h, k)


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_reciprocity_law(h, k):
    if gcd(h, k) != 1:
        return
    lhs = dedekind_sum(h, k) + dedekind_sum(k, h)
    rhs = Fraction(-1, 4) + Fraction(h * h + k * k + 1, 12 * h * k)
    assert lhs == rhs


def test_inverse_symmetry():
    for p in primes_up_to(200)[1:]:
        p = int(p)
        for h in range(1, p):
            hinv = pow(h, -1, p)
            assert dedekind_sum(h, p) == dedekind_sum(hinv, p)
            assert dedekind_sum(p - h, p) == -dedekind_sum(h, p)


def test_dedekind_rejects_non_coprime():
    with pytest.raises(InvalidInput):
        dedekind_sum(4, 6)


def test_N_examples():
    assert N_value(7, 3) == -1
    assert N_value(5, 1) == Fraction(2 - 15, 5)
    assert N_value(31, 5) == 35
    for p in (3, 11, 101, 997):
        assert N_value(p, 1) == Fraction(2 - 3 * p, p)


def test_mersenne_closed_form_values():
    assert mersenne_N_closed_form(7) == -1
    assert mersenne_N_closed_form(31) == 35
    assert mersenne_N_closed_form(8191) == 16307
    assert N_value(8191, 13) == 16307


def test_mean_square_examples():
    r = mean_square_M(7, 3)
    assert r.M_over_pi2 == Fraction(1, 6) * Fraction(6, 7)
    r = mean_square_M(5, 1)
    assert r.M_over_pi2 == Fraction(1, 6) * Fraction(4, 5) * Fraction(3, 5)
    assert r.M_float.contains(pi**2 / 6 * 12 / 25)


def test_mean_square_positive():
    for p in primes_up_to(300)[1:]:
        for d in odd_divisors(int(p) - 1):
            assert mean_square_M(int(p), d).M_over_pi2 > 0
