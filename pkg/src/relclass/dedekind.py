"""Dedekind sums and the mean-square values M(p, H_d).

Everything is exact (``fractions.Fraction``); pi**2 is kept out of the
rational part and only enters through ``MeanSquareResult.M_float``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath

from .bounded import BoundedValue
from .errors import InvalidInput
from .numtheory import check_pd, is_prime, mersenne_exponent, subgroup_Hd


def sawtooth(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - (x.numerator // x.denominator) - Fraction(1, 2)


def dedekind_sum_naive(h: int, k: int) -> Fraction:
    """Definition sum over j = 1..k-1; O(k)."""
    if k < 1 or gcd(h, k) != 1:
        raise InvalidInput(f"s(h, k) needs gcd(h, k) = 1 and k >= 1, got ({h}, {k})")
    return sum(
        (sawtooth(Fraction(j, k)) * sawtooth(Fraction(h * j, k)) for j in range(1, k)),
        Fraction(0),
    )


def dedekind_sum(h: int, k: int) -> Fraction:
    """s(h, k) by the reciprocity law, in O(log k) steps.

    Uses s(h, k) + s(k, h) = (h/k + k/h + 1/(hk))/12 - 1/4 for coprime
    positive h, k, together with s(h mod k, k) = s(h, k) and s(-h, k) = -s(h, k).
    """
    if k < 1 or gcd(h, k) != 1:
        raise InvalidInput(f"s(h, k) needs gcd(h, k) = 1 and k >= 1, got ({h}, {k})")
    # running value num/den kept as plain ints; one gcd at the end
    num, den = 0, 1
    sign = 1
    h %= k
    while k > 1 and h != 0:
        # s(h, k) = (h^2 + k^2 + 1)/(12 h k) - 1/4 - s(k mod h, h)
        tn, td = h * h + k * k + 1 - 3 * h * k, 12 * h * k
        num = num * td + sign * tn * den
        den *= td
        sign = -sign
        h, k = k % h, h
    return Fraction(num, den)


def N_value(p: int, d: int) -> Fraction:
    """N(H_d, p) = 12 * sum_{h in H_d} s(h, p) - p."""
    check_pd(p, d)
    H = subgroup_Hd(p, d).elements
    # 6p * s(h, p) is an integer, so sum on that common denominator
    six_p = 6 * p
    scaled = 0
    for h in H:
        s = dedekind_sum(h, p) * six_p
        if s.denominator != 1:
            raise AssertionError(f"6p s({h}, {p}) = {s} is not integral")
        scaled += s.numerator
    n = Fraction(2 * scaled, p) - p
    if d > 1 and n.denominator != 1:
        raise AssertionError(f"N(H_{d}, {p}) = {n} is not an integer")
    return n


@dataclass(frozen=True)
class MeanSquareResult:
    p: int
    d: int
    N: Fraction
    M_over_pi2: Fraction
    M_float: BoundedValue


def mean_square_M(p: int, d: int) -> MeanSquareResult:
    n = N_value(p, d)
    ratio = Fraction(1, 6) * (1 + n / p)
    with mpmath.workprec(80):
        val = mpmath.mpf(ratio.numerator) / ratio.denominator * mpmath.pi**2
        fval = float(val)
        err = abs(float(val - fval)) + 4 * abs(fval) * 2.0**-53
    return MeanSquareResult(p, d, n, ratio, BoundedValue(fval, err))


def mersenne_N_closed_form(p: int) -> int:
    d = mersenne_exponent(p)
    if d is None or not is_prime(p):
        raise InvalidInput(f"{p} is not a Mersenne prime")
    return 2 * p - (6 * d - 3)
