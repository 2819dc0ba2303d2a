"""Relative class numbers of imaginary subfields of Q(zeta_p).

Two routes:

* exact:  h^- = Q w prod_{chi in X_p^-(H)} (-B_{1,chi} / 2), with the product
  taken orbit by orbit as exact norms from Q(zeta_e);
* float:  h^- = w (p / 4 pi^2)^{m/4} prod |L(1, chi)|, carried in the log
  domain so that huge class numbers stay representable.

When both run they must agree; a disagreement raises ``InconsistencyError``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

import mpmath

from .bounded import BoundedValue
from .characters import CharacterIndex, L1_batch, character, odd_characters_trivial_on_H
from .cyclotomic import CyclotomicElement, integer_norm
from .dedekind import mean_square_M
from .errors import InconsistencyError, InvalidInput, ResourceLimit
from .numtheory import check_pd, euler_phi, is_prime, mersenne_exponent, odd_divisors

DEFAULT_ORBIT_CAP = 4096


@dataclass(frozen=True)
class FieldSpec:
    """The imaginary subfield of Q(zeta_p) of degree m = (p - 1)/d."""

    p: int
    d: int
    Q: int = field(default=1, init=False)

    def __post_init__(self):
        check_pd(self.p, self.d)

    @property
    def m(self) -> int:
        return (self.p - 1) // self.d

    @property
    def w(self) -> int:
        return 2 * self.p if self.d == 1 else 2

    @property
    def is_mersenne(self) -> bool:
        return mersenne_exponent(self.p) == self.d


@dataclass
class HMinusResult:
    spec: FieldSpec
    exact: int | None
    float: BoundedValue
    bound_AMGM: mpmath.mpf
    specialized_bounds: dict = field(default_factory=dict)


def _orbit_sum(chi: CharacterIndex) -> CyclotomicElement:
    """sum_a a chi(a) in Z[zeta_e], e = order(chi)."""
    p, e = chi.p, chi.order
    n = p - 1
    u = chi.j // (n // e)  # chi(g^k) = zeta_e^(u k)
    full = [0] * e
    for k, a in enumerate(chi.modulus.powers.tolist()):
        full[u * k % e] += a
    return CyclotomicElement(e, full)


def B1(chi: CharacterIndex) -> CyclotomicElement:
    """Generalized Bernoulli number B_{1,chi} = (1/p) sum_a a chi(a) in Q(zeta_e)."""
    if chi.is_principal or not chi.is_odd:
        raise InvalidInput("B1 is only provided for odd characters")
    return _orbit_sum(chi) * Fraction(1, chi.p)


def galois_orbits(spec: FieldSpec) -> list[tuple[int, int]]:
    """(gcd class g, orbit order e) for the orbits of X_p^-(H_d).

    The orbit of chi_j under chi -> chi^t is {chi_j' : gcd(j', p-1) = gcd(j, p-1)},
    so orbits correspond to odd divisors g of p - 1 with d | g.
    """
    n = spec.p - 1
    return [(g, n // g) for g in odd_divisors(n) if g % spec.d == 0]


def _orbit_unit(e: int, choice: int) -> int:
    """The ``choice``-th unit mod e (0 gives 1)."""
    seen = -1
    for t in range(1, e + 1):
        if gcd(t, e) == 1:
            seen += 1
            if seen == choice % euler_phi(e):
                return t
    return 1


def relative_class_number_exact(
    spec: FieldSpec,
    orbit_cap: int = DEFAULT_ORBIT_CAP,
    representative: int = 0,
    check_float: bool = True,
) -> int:
    """Exact h^- from orbit norms of -B_{1,chi}/2.

    ``representative`` selects which member of each Galois orbit is used;
    the result must not depend on it.
    """
    p = spec.p
    total = Fraction(spec.Q * spec.w)
    for g, e in galois_orbits(spec):
        phi = euler_phi(e)
        if phi > orbit_cap:
            raise ResourceLimit(f"orbit degree {phi} exceeds cap {orbit_cap} (p={p}, d={spec.d})")
        chi = character(p, g * _orbit_unit(e, representative))
        s = _orbit_sum(chi)
        ints = [int(c) for c in s.coeffs]
        # prod over the orbit of (-s / (2p)) = N(s) / (-2p)^phi
        total *= Fraction(integer_norm(ints, e), (-2 * p) ** phi)
    if total.denominator != 1 or total <= 0:
        raise InconsistencyError(f"h^- for (p={p}, d={spec.d}) came out as {total}")
    h = total.numerator
    if check_float:
        f = relative_class_number_float(spec)
        if not f.contains(h):
            raise InconsistencyError(f"exact h^- = {h} outside float interval {f}")
    return h


def log_hminus_float(spec: FieldSpec, prec: int = 53) -> BoundedValue:
    """log h^- = log w + (m/4) log(p / 4 pi^2) + sum log |L(1, chi)|."""
    chars = odd_characters_trivial_on_H(spec.p, spec.d)
    Ls = L1_batch(chars, prec=prec)
    if prec <= 53:
        total = BoundedValue(math.log(spec.w) + spec.m / 4 * math.log(spec.p / (4 * math.pi**2)), 0.0)
        total = BoundedValue(total.value, 4 * spec.m * abs(total.value) * 2.0**-53 + 1e-300)
        logs = [abs(L).log() for L in Ls]
        # sum in one pass; bound the float summation error separately
        val = math.fsum(x.value for x in logs)
        err = math.fsum(x.abs_error for x in logs) * (1 + 1e-12) + 2.0**-52 * math.fsum(abs(x.value) for x in logs)
        return total + BoundedValue(val, err)
    with mpmath.workprec(prec + 20):
        u = mpmath.eps
        base = mpmath.log(spec.w) + mpmath.mpf(spec.m) / 4 * mpmath.log(mpmath.mpf(spec.p) / (4 * mpmath.pi**2))
        logs = [abs(L).log() for L in Ls]
        val = base + mpmath.fsum(x.value for x in logs)
        err = mpmath.fsum(x.abs_error for x in logs) + (spec.m + 8) * u * (abs(base) + mpmath.fsum(abs(x.value) for x in logs))
        return BoundedValue(val, err)


def relative_class_number_float(spec: FieldSpec, prec: int = 53) -> BoundedValue:
    """h^- as a BoundedValue with an mpmath value (finite for any size)."""
    return log_hminus_float(spec, prec).exp()


def hminus_amgm_bound(spec: FieldSpec) -> mpmath.mpf:
    """w (p M(p,H) / 4 pi^2)^{m/4}; pi cancels against M = pi^2 * ratio."""
    ratio = mean_square_M(spec.p, spec.d).M_over_pi2
    with mpmath.workprec(80):
        base = mpmath.mpf(spec.p * ratio.numerator) / (4 * ratio.denominator)
        return +(spec.w * base ** (mpmath.mpf(spec.m) / 4))


def specialized_bounds(spec: FieldSpec) -> dict[str, mpmath.mpf]:
    """Closed-form upper bounds that apply to this field."""
    p, m = spec.p, spec.m
    out = {}
    with mpmath.workprec(80):
        if spec.d == 1:
            out["cyclotomic"] = 2 * p * (mpmath.mpf(p) / 24) ** (mpmath.mpf(p - 1) / 4)
        if spec.d == 3 and p % 6 == 1:
            out["d3"] = 2 * (mpmath.mpf(p) / 24) ** (mpmath.mpf(p - 1) / 12)
        if spec.is_mersenne:
            out["mersenne"] = 2 * (mpmath.mpf(p) / 8) ** (mpmath.mpf(m) / 4)
    return {k: +v for k, v in out.items()}


def quadratic_forms_class_number(p: int) -> int:
    """Reduced primitive forms ax^2 + bxy + cy^2 of discriminant -p."""
    if not is_prime(p) or p % 4 != 3 or p <= 3:
        raise InvalidInput("needs a prime p = 3 mod 4, p > 3")
    count = 0
    for a in range(1, isqrt(p // 3) + 1):
        for b in range(-a + 1, a + 1):
            if b % 2 == 0:
                continue
            num = b * b + p
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (b < 0 and a == c):
                continue
            if gcd(gcd(a, abs(b)), c) != 1:
                continue
            count += 1
    return count


def compute(spec: FieldSpec, exact: bool = True, prec: int = 53, orbit_cap: int = DEFAULT_ORBIT_CAP) -> HMinusResult:
    f = relative_class_number_float(spec, prec)
    h = None
    if exact:
        h = relative_class_number_exact(spec, orbit_cap=orbit_cap, check_float=False)
        if not f.contains(h):
            raise InconsistencyError(f"exact h^- = {h} outside float interval {f}")
    return HMinusResult(spec, h, f, hminus_amgm_bound(spec), specialized_bounds(spec))
