"""Dirichlet characters modulo a prime, orthogonality, and numeric L(1, chi).

A character is identified by its exponent j against the least primitive
root g:  chi_j(g**k) = exp(2 pi i j k / (p - 1)).  L(1, chi) is computed for
every j at once with two unrelated formulas, each a length p - 1 DFT:

* digamma route    L(1, chi) = -(1/p) sum_a chi(a) psi(a/p)
* Gauss-sum route  L(1, chi) = pi i tau(chi) B_{1, conj chi} / p   (odd chi)
                   L(1, chi) = -(tau(chi)/p) sum_a conj chi(a) log|1 - zeta_p^a|   (even chi)

and every returned value is checked against the other within the summed
error budgets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath
import numpy as np
from scipy.special import digamma

from .bounded import BoundedValue
from .cyclotomic import CyclotomicElement
from .errors import InconsistencyError, InvalidInput, PrecisionError
from .numtheory import PrimeModulus, check_pd, prime_modulus, subgroup_Hd

UNIT_ROUNDOFF = 2.0**-53


@dataclass(frozen=True)
class RootOfUnityExp:
    """exp(2 pi i k / n), kept symbolic."""

    k: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "k", self.k % self.n)

    @property
    def angle(self) -> Fraction:
        return Fraction(self.k, self.n)

    def __eq__(self, other):
        if isinstance(other, RootOfUnityExp):
            return self.angle == other.angle
        if other == 1:
            return self.k == 0
        if other == -1:
            return self.angle == Fraction(1, 2)
        return NotImplemented

    def __hash__(self):
        return hash(self.angle)

    def __mul__(self, other: RootOfUnityExp) -> RootOfUnityExp:
        a = self.angle + other.angle
        return RootOfUnityExp(a.numerator, a.denominator)

    def conjugate(self) -> RootOfUnityExp:
        return RootOfUnityExp(-self.k, self.n)

    def to_complex(self) -> complex:
        return complex(mpmath.expjpi(mpmath.mpf(2 * self.k) / self.n))


@dataclass(frozen=True, eq=False)
class CharacterIndex:
    p: int
    j: int
    modulus: PrimeModulus

    def __eq__(self, other):
        return isinstance(other, CharacterIndex) and (self.p, self.j) == (other.p, other.j)

    def __hash__(self):
        return hash((self.p, self.j))

    def __repr__(self):
        return f"CharacterIndex(p={self.p}, j={self.j})"

    @property
    def order(self) -> int:
        return (self.p - 1) // gcd(self.j, self.p - 1)

    @property
    def is_odd(self) -> bool:
        return self.j % 2 == 1

    @property
    def is_principal(self) -> bool:
        return self.j % (self.p - 1) == 0

    def conj(self) -> CharacterIndex:
        return CharacterIndex(self.p, (-self.j) % (self.p - 1), self.modulus)

    def power(self, t: int) -> CharacterIndex:
        return CharacterIndex(self.p, self.j * t % (self.p - 1), self.modulus)


def character(p: int, j: int) -> CharacterIndex:
    return CharacterIndex(p, j % (p - 1), prime_modulus(p))


def odd_characters_trivial_on_H(p: int, d: int) -> list[CharacterIndex]:
    """X_p^-(H_d): odd exponents j that are multiples of d."""
    check_pd(p, d)
    pm = prime_modulus(p)
    return [CharacterIndex(p, j, pm) for j in range(d, p - 1, 2 * d)]


def character_value(chi: CharacterIndex, n: int):
    """chi(n) as a RootOfUnityExp, or the integer 0 when p | n."""
    if n % chi.p == 0:
        return 0
    k = chi.modulus.index(n)
    return RootOfUnityExp(chi.j * k, chi.p - 1)


def epsilon_H(p: int, d: int, n: int) -> int:
    if n % p == 0:
        return 0
    H = subgroup_Hd(p, d)
    if n % p in H.elements:
        return 1
    if (-n) % p in H.elements:
        return -1
    return 0


def character_mean(p: int, d: int, n: int) -> Fraction:
    """(2/m) * sum over X_p^-(H_d) of chi(n), evaluated exactly in Q(zeta).

    With u = zeta_{p-1}**index(n), the sum is sum_j u**j over odd multiples
    j of d.  It is built as an element of Q(zeta_N), N the order of
    zeta_{p-1}**(d * index(n)), and must reduce to a rational.
    """
    check_pd(p, d)
    if n % p == 0:
        return Fraction(0)
    pm = prime_modulus(p)
    k = pm.index(n)
    m = (p - 1) // d
    # chi_j(n) = zeta_{p-1}^{j k};  j = d (2t + 1)  =>  exponent d k (2t + 1) mod (p - 1)
    step = d * k % (p - 1)
    big = (p - 1) // gcd(step, p - 1)
    unit = step // gcd(step, p - 1) if step else 0
    weights: dict[int, int] = {}
    for t in range(m // 2):
        e = unit * (2 * t + 1) % big
        weights[e] = weights.get(e, 0) + 1
    total = CyclotomicElement.from_exponents(big, weights)
    if not total.is_rational():
        raise InconsistencyError(f"character sum at n={n} is not rational: {total}")
    return Fraction(2, m) * total.coeffs[0]


# ---------------------------------------------------------------------------
# L(1, chi)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LTable:
    """L(1, chi_j) for every j mod p - 1, from both evaluators."""

    p: int
    digamma: np.ndarray
    digamma_err: np.ndarray
    gauss: np.ndarray
    gauss_err: np.ndarray


def _fft_err(x_abs: np.ndarray, x_err: np.ndarray) -> float:
    """Bound on the per-entry error of n * ifft(x) in double precision."""
    n = len(x_abs)
    l2 = float(np.sqrt(np.dot(x_abs, x_abs)))
    return 5 * (math.log2(max(n, 2)) + 1) * UNIT_ROUNDOFF * math.sqrt(n) * l2 + float(x_err.sum())


@lru_cache(maxsize=16)
def l_table(p: int) -> LTable:
    pm = prime_modulus(p)
    n = p - 1
    pw = pm.powers.astype(np.float64)

    psi = digamma(pw / p)
    psi_abs = np.abs(psi)
    s = np.fft.ifft(psi) * n
    dg = -s / p
    dg_err = np.full(n, (_fft_err(psi_abs, 8 * UNIT_ROUNDOFF * psi_abs) + abs(s).max() * UNIT_ROUNDOFF * 4) / p)

    zeta = np.exp(2j * np.pi * pw / p)
    tau = np.fft.ifft(zeta) * n  # tau(chi_j)
    tau_err = _fft_err(np.ones(n), np.full(n, 16 * UNIT_ROUNDOFF))
    # sum_a a conj(chi_j(a)) = fft(powers)[j]
    bsum = np.fft.fft(pw)
    bsum_err = _fft_err(pw, np.zeros(n))
    j = np.arange(n)
    odd = j % 2 == 1
    gs = np.empty(n, dtype=complex)
    gs_err = np.empty(n)
    b = bsum / p  # B_{1, conj chi}
    b_err = bsum_err / p
    gs[odd] = np.pi * 1j * tau[odd] * b[odd] / p
    gs_err[odd] = (np.pi / p) * (np.abs(tau[odd]) * b_err + np.abs(b[odd]) * tau_err + tau_err * b_err)
    gs_err[odd] += np.abs(gs[odd]) * 8 * UNIT_ROUNDOFF
    logsin = np.log(np.abs(2 * np.sin(np.pi * pw / p)))
    lsum = np.fft.fft(logsin)
    lsum_err = _fft_err(np.abs(logsin), 8 * UNIT_ROUNDOFF * (np.abs(logsin) + 1))
    ev = ~odd
    gs[ev] = -tau[ev] * lsum[ev] / p
    gs_err[ev] = (np.abs(tau[ev]) * lsum_err + np.abs(lsum[ev]) * tau_err + tau_err * lsum_err) / p
    gs_err[ev] += np.abs(gs[ev]) * 8 * UNIT_ROUNDOFF
    gs[0] = dg[0] = np.nan
    return LTable(p, dg, dg_err, gs, gs_err)


def _l_value_mp(chi: CharacterIndex, prec: int) -> tuple[BoundedValue, BoundedValue]:
    """Both evaluators in mpmath at ``prec`` bits; O(p) per character."""
    p, pm = chi.p, chi.modulus
    n = p - 1
    with mpmath.workprec(prec + 20):
        s_dg = mpmath.mpc(0)
        tau = mpmath.mpc(0)
        other = mpmath.mpc(0)
        for k in range(n):
            a = int(pm.powers[k])
            c = mpmath.expjpi(mpmath.mpf(2 * (chi.j * k % n)) / n)
            s_dg += c * mpmath.digamma(mpmath.mpf(a) / p)
            tau += c * mpmath.expjpi(mpmath.mpf(2 * a) / p)
            if chi.is_odd:
                other += a * mpmath.conj(c)
            else:
                other += mpmath.conj(c) * mpmath.log(abs(2 * mpmath.sinpi(mpmath.mpf(a) / p)))
        dg = -s_dg / p
        if chi.is_odd:
            gs = mpmath.pi * 1j * tau * other / p**2
        else:
            gs = -tau * other / p
        err = mpmath.mpf(2) ** (-prec) * 16 * p * (abs(dg) + mpmath.log(p) + 1)
        return BoundedValue(dg, err), BoundedValue(gs, err)


def _cross_check(chi: CharacterIndex, a: BoundedValue, b: BoundedValue) -> BoundedValue:
    if abs(a.value - b.value) > a.abs_error + b.abs_error:
        raise InconsistencyError(
            f"L(1, chi_{chi.j}) mod {chi.p}: digamma {a} vs Gauss-sum {b} disagree"
        )
    return a if a.abs_error <= b.abs_error else b


def L1_numeric(chi: CharacterIndex, precision: float = 1e-10, prec: int = 53) -> BoundedValue:
    """L(1, chi) with certified |error| <= ``precision``.

    At prec <= 53 the value is a complex double; above that it is an
    mpmath mpc carrying the full working precision.
    """
    if chi.is_principal:
        raise InvalidInput("L(s, chi) has a pole at s = 1 for the principal character")
    if prec <= 53:
        t = l_table(chi.p)
        a = BoundedValue(complex(t.digamma[chi.j]), float(t.digamma_err[chi.j]))
        b = BoundedValue(complex(t.gauss[chi.j]), float(t.gauss_err[chi.j]))
    else:
        a, b = _l_value_mp(chi, prec)
    out = _cross_check(chi, a, b)
    if out.abs_error > precision:
        raise PrecisionError(
            f"L(1, chi_{chi.j}) mod {chi.p}: error {out.abs_error:.3g} exceeds target {precision:.3g} at {prec} bits"
        )
    return out


def L1_batch(chars, prec: int = 53) -> list[BoundedValue]:
    """L(1, chi) for many characters of one modulus, cross-checked, no target."""
    return [L1_numeric(chi, precision=math.inf, prec=prec) for chi in chars]


def L_numeric(chi: CharacterIndex, s) -> complex:
    """L(s, chi) for real s > 1 via Hurwitz zeta; independent of the L(1) code."""
    p, pm = chi.p, chi.modulus
    total = mpmath.mpc(0)
    for k in range(p - 1):
        a = int(pm.powers[k])
        c = mpmath.expjpi(mpmath.mpf(2 * (chi.j * k % (p - 1))) / (p - 1))
        total += c * mpmath.zeta(s, mpmath.mpf(a) / p)
    return complex(total * mpmath.mpf(p) ** (-s))


def L1_induced_mod_2p(chi: CharacterIndex) -> complex:
    """L(1, chi') for chi' = chi induced to modulus 2p (zero on even n).

    Summed directly over odd residues b mod 2p with the digamma formula.
    """
    p = chi.p
    q = 2 * p
    total = mpmath.mpc(0)
    for b in range(1, q, 2):
        if b % p == 0:
            continue
        v = character_value(chi, b)
        total += v.to_complex() * mpmath.digamma(mpmath.mpf(b) / q)
    return complex(-total / q)
