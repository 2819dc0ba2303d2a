import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relclass.characters import (
    L1_batch,
    L1_induced_mod_2p,
    L1_numeric,
    L_numeric,
    RootOfUnityExp,
    character,
    character_mean,
    character_value,
    epsilon_H,
    l_table,
    odd_characters_trivial_on_H,
)
from relclass.errors import InvalidInput
from relclass.numtheory import odd_divisors, primes_up_to

SMALL_PRIMES = [int(p) for p in primes_up_to(500)[1:]]


def test_odd_character_sets():
    assert [c.j for c in odd_characters_trivial_on_H(7, 3)] == [3]
    assert [c.j for c in odd_characters_trivial_on_H(7, 1)] == [1, 3, 5]
    assert [c.j for c in odd_characters_trivial_on_H(23, 11)] == [11]
    for p in SMALL_PRIMES[:40]:
        for d in odd_divisors(p - 1):
            chars = odd_characters_trivial_on_H(p, d)
            assert len(chars) == (p - 1) // d // 2
            assert all(c.is_odd for c in chars)


def test_character_values():
    chi = character(7, 3)
    assert character_value(chi, 1) == RootOfUnityExp(0, 1)
    assert character_value(chi, 3).to_complex() == pytest.approx(-1)
    assert character_value(chi, 7) == 0
    for j in (1, 3, 5):
        assert character_value(character(7, j), 6).to_complex() == pytest.approx(-1)


@settings(max_examples=40)
@given(st.sampled_from(SMALL_PRIMES), st.integers(0, 10**6), st.integers(1, 10**6), st.integers(1, 10**6))
def test_character_is_multiplicative(p, j, a, b):
    chi = character(p, j % (p - 1))
    va, vb, vab = (character_value(chi, x) for x in (a, b, a * b))
    if a % p == 0 or b % p == 0:
        assert vab == 0
    else:
        assert cmath.isclose(va.to_complex() * vb.to_complex(), vab.to_complex(), abs_tol=1e-12)


def test_epsilon_examples():
    assert epsilon_H(7, 3, 2) == 1
    assert epsilon_H(7, 3, 5) == -1
    assert epsilon_H(7, 3, 3) == -1
    assert epsilon_H(7, 1, 3) == 0
    assert epsilon_H(7, 1, 14) == 0


def test_orthogonality_exact():
    for p in SMALL_PRIMES:
        for d in odd_divisors(p - 1):
            for n in range(1, p):
                assert character_mean(p, d, n) == epsilon_H(p, d, n), (p, d, n)


def test_quadratic_L_values():
    L23 = L1_numeric(character(23, 11))
    assert abs(abs(L23.value) - math.pi * 3 / math.sqrt(23)) < 1e-10
    L7 = L1_numeric(character(7, 3))
    assert abs(abs(L7.value) - math.pi / math.sqrt(7)) < 1e-10


def test_two_evaluators_agree():
    for p in SMALL_PRIMES:
        t = l_table(p)
        odd = np.arange(1, p - 1, 2)
        diff = np.abs(t.digamma[odd] - t.gauss[odd])
        assert np.all(diff <= t.digamma_err[odd] + t.gauss_err[odd])


def test_conjugate_symmetry():
    for p in (7, 23, 101, 211):
        for chi in odd_characters_trivial_on_H(p, 1):
            a = L1_numeric(chi).value
            b = L1_numeric(chi.conj()).value
            assert abs(a.conjugate() - b) < 1e-12


def test_against_hurwitz_oracle():
    # near s = 1 the Hurwitz poles cancel; |L'| is modest so 1e-9 in s moves L by far less than 1e-6
    for p in (7, 13, 31):
        for chi in odd_characters_trivial_on_H(p, 1):
            mine = L1_numeric(chi)
            ref = L_numeric(chi, 1 + 1e-9)
            assert abs(mine.value - ref) < 1e-6


def test_hurwitz_oracle_at_two():
    chi = character(13, 1)
    direct = sum(character_value(chi, n).to_complex() / n**2 for n in range(1, 200000) if n % 13)
    assert abs(L_numeric(chi, 2) - direct) < 1e-4


def test_high_precision_matches_double():
    chi = character(101, 5)
    lo = L1_numeric(chi)
    hi = L1_numeric(chi, precision=1e-25, prec=120)
    assert abs(complex(hi.value) - lo.value) <= lo.abs_error + 1e-15
    assert hi.abs_error < 1e-25
    assert abs(hi.value - L1_numeric(chi, precision=1e-30, prec=160).value) <= hi.abs_error


def test_induced_mod_2p_matches():
    # the character mod 2p induced by an odd chi mod p has L(1) = (1 - chi(2)/2) L(1, chi)
    for chi in odd_characters_trivial_on_H(31, 5):
        c2 = character_value(chi, 2).to_complex()
        assert abs(L1_induced_mod_2p(chi) - (1 - c2 / 2) * L1_numeric(chi).value) < 1e-10


def test_batch_matches_single():
    chars = odd_characters_trivial_on_H(101, 5)
    for chi, bv in zip(chars, L1_batch(chars)):
        assert bv.value == L1_numeric(chi).value


def test_principal_character_rejected():
    with pytest.raises(InvalidInput):
        L1_numeric(character(7, 0))
