import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from relclass import analytic
from relclass.analytic import (
    C_pd,
    G_alpha,
    G_alpha_closed_form,
    S_beta,
    X_alpha,
    asymptotic_ratio,
    f_H_at_1,
    f_H_epsilon,
    f_H_sigma,
    f_H_sweep,
    higher_power_tail,
    mean_log_L,
    mersenne_gH,
    mersenne_L_halving,
    mersenne_range1,
    prime_counts,
    prime_power_table,
    reconstruct_hminus,
    series_tail,
    sigma_decomposition,
    sum_log_L,
)
from relclass.characters import epsilon_H
from relclass.classnumber import FieldSpec, relative_class_number_exact, relative_class_number_float
from relclass.errors import InvalidInput

CUT = 10**5


def brute_f(p, d, eps, sigma, limit):
    m = (p - 1) // d
    total = 0.0
    for n in range(2, limit + 1):
        f = sympy.factorint(n)
        if len(f) != 1:
            continue
        (k,) = f.values()
        if epsilon_H(p, d, n) == eps:
            total += n ** (-sigma) / k
    return m / 2 * total


def test_prime_power_table():
    t = prime_power_table(1000)
    assert t.n.max() <= 1000**2
    assert set(t.n[t.k == 1].tolist()) == set(sympy.primerange(2, 1001))
    assert 1024 in t.n.tolist() and 2**20 not in t.n.tolist()
    assert np.all(t.q ** t.k == t.n)


def test_f_matches_brute_force_head():
    # compare against a direct sum over n <= 3000 with the same truncation
    p, d, sigma = 7, 3, 1.5
    table = prime_power_table(3000)
    mask = table.n <= 3000
    S, _ = analytic._class_sums(p, (sigma,), table, mask)[sigma]
    m = (p - 1) // d
    mine_plus = m / 2 * float(S[0::m].sum())
    mine_minus = m / 2 * float(S[m // 2 :: m].sum())
    assert mine_plus == pytest.approx(brute_f(p, d, 1, sigma, 3000), rel=1e-12)
    assert mine_minus == pytest.approx(brute_f(p, d, -1, sigma, 3000), rel=1e-12)


def test_f_sigma_matches_sum_log_L():
    for p, d in ((7, 3), (31, 5), (43, 7), (61, 3)):
        for sigma in (1.1, 1.5, 2.0):
            f = f_H_sigma(p, d, sigma, cutoff=10**6)
            ref = sum_log_L(p, d, sigma)
            assert abs(f.value - ref.real) <= f.abs_error + 1e-9
            assert abs(ref.imag) < 1e-9


def test_f_example_bound():
    c = C_pd(7, 3, "mersenne")
    v = f_H_epsilon(7, 3, 1, 1.5, cutoff=10**6)
    assert v.lo >= 0
    assert v.hi <= c - math.log(0.5)


def test_tails_shrink_with_cutoff():
    a = series_tail(101, 1, 1.01, 10**5).tail
    b = series_tail(101, 1, 1.01, 10**6).tail
    assert b < a
    assert higher_power_tail(10**7) < 1e-6


def test_sweep_matches_single():
    sw = f_H_sweep(31, sigmas=(1.1,), cutoff=CUT, ds=[5])
    single = f_H_epsilon(31, 5, -1, 1.1, cutoff=CUT)
    assert sw[(5, -1, 1.1)].value == pytest.approx(single.value, rel=1e-14)


def test_C_pd_examples():
    assert C_pd(29, 1) == pytest.approx(2 + 0.375 * math.log(29))
    assert C_pd(7, 3, "mersenne") == pytest.approx(2.5 + 0.375 * math.log(7))
    p = 10**6 + 3
    assert C_pd(p, 25) / (p / 2) > 0.5
    with pytest.raises(InvalidInput):
        C_pd(29, 1, "other")


def test_sigma_decomposition_example():
    dec = sigma_decomposition(7, 3, 1, 1.1, cutoff=CUT)
    assert dec.sigma1.value == pytest.approx(2**-1.1 + 4**-1.1, rel=1e-14)
    assert dec.min_n_sigma1 == 2
    assert all(r.passed for r in dec.reports)
    with pytest.raises(InvalidInput):
        sigma_decomposition(7, 3, 1, 1.5)


def test_S_beta_examples():
    beta = 1 / math.log(2)
    for x in np.linspace(4.0, 7.99, 20):
        assert S_beta(float(x), beta) == pytest.approx(1.0)
    assert S_beta(8.0, beta) == pytest.approx((8**0.5 + 2) / 8**0.5)
    with pytest.raises(InvalidInput):
        S_beta(3.0, beta)


@settings(max_examples=200)
@given(st.floats(min_value=4.0, max_value=1e12))
def test_S_beta_bounded(x):
    assert S_beta(x, 1 / math.log(2)) <= 11 / 4


def test_G_alpha_quadrature_vs_closed_form():
    beta = 1 / math.log(2)
    for alpha in (2.0, 11 / 4, 4.0):
        X = X_alpha(alpha)
        g = G_alpha(X, alpha, beta)
        assert g.contains(G_alpha_closed_form(X, alpha, beta))
    g = G_alpha(X_alpha(11 / 4), 11 / 4, beta)
    assert g.hi <= 0


def test_prime_counts():
    assert prime_counts(50, 1, 7) == (2, Fraction(2) + Fraction(1, 3))
    pi_c, Pi_c = prime_counts(1000, 3, 10)
    assert pi_c == sum(1 for q in sympy.primerange(2, 1001) if q % 10 == 3)
    assert Pi_c >= pi_c


def test_f_H_at_1_quadratic():
    f = f_H_at_1(23, 11)
    assert abs(f.value.real - math.log(3 * math.pi / math.sqrt(23))) <= f.abs_error + 1e-12
    f = f_H_at_1(7, 3)
    assert abs(f.value.real - math.log(math.pi / math.sqrt(7))) <= f.abs_error + 1e-12


def test_reconstruction_23():
    spec = FieldSpec(23, 1)
    rec = reconstruct_hminus(spec, f_H_at_1(23, 1))
    assert rec.contains(3)


def test_asymptotic_ratio_23():
    ar = asymptotic_ratio(23, 1, 3)
    expected = 4 / 22 * math.log(3 / 46) - math.log(23 / (4 * math.pi**2))
    assert ar.r.value == pytest.approx(expected, rel=1e-12)
    assert ar.within_envelope
    ar_f = asymptotic_ratio(23, 1)
    assert ar_f.r.contains(expected)


def test_mersenne_pieces():
    for p in (7, 31, 127):
        res = mersenne_gH(p)
        assert all(r.passed for r in res.reports)
        s, b = mersenne_range1(p)
        assert s <= b == 1
        L, Lp = mersenne_L_halving(p)
        assert abs(L.value - 2 * Lp) < 1e-10
    with pytest.raises(InvalidInput):
        mersenne_gH(11)


def test_mersenne_gH_sigma_matches_fH():
    # chi(2) = 1 on the trivial-on-H characters, so removing the factor at 2 is log(1 - 1/2^s)^-1 per character
    p, d, s = 31, 5, 1.5
    g = mersenne_gH(p, s, cutoff=CUT)
    f = f_H_sigma(p, d, s, cutoff=CUT)
    m = (p - 1) // d
    assert abs(f.value - g.value - m / 2 * -math.log(1 - 2**-s)) < f.abs_error + g.abs_error + 1e-12


def test_mean_log_L_diagnostic():
    r = mean_log_L(101, 1, y=10**5)
    assert abs(r.head) <= r.head_bound
    assert abs(r.truncated.value) < 1
    r = mean_log_L(127, 7, y=10**5)
    assert abs(r.head) <= r.head_bound + 1e-12


def test_exact_float_agree_small_random():
    for p, d in ((41, 5), (53, 13), (67, 11), (73, 9)):
        h = relative_class_number_exact(FieldSpec(p, d))
        assert relative_class_number_float(FieldSpec(p, d)).contains(h)
