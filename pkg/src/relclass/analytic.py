"""Prime-power series f_{H,eps}(sigma), their range decomposition and the
explicit constants bounding them; the Mersenne variant g_H; asymptotic
ratios and the truncated mean-log diagnostic.

Series over prime powers are summed exactly up to a cutoff and closed with a
certified tail:

* primes q > N: Abel summation against the Montgomery-Vaughan bound
  pi(x; p, a) < 2x / ((p - 1) log(x/p)), which integrates to
  sigma p^(1-sigma) E1((sigma - 1) log(N/p)) summed over the d classes;
* prime powers q^k, k >= 2: enumerated exactly up to N**2 (all primes q <= N),
  beyond that majorized by sum_{j^k > N^2} j^(-k) / k over all integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from scipy.special import exp1

from .bounded import BoundedValue, SeriesTailBound, Verdict, VerificationReport, check_eq, check_le, check_lt
from .characters import (
    L1_batch,
    L1_induced_mod_2p,
    L1_numeric,
    character_value,
    odd_characters_trivial_on_H,
)
from .classnumber import FieldSpec, log_hminus_float, relative_class_number_float
from .errors import InvalidInput
from .numtheory import check_pd, mersenne_exponent, odd_divisors, prime_modulus, primes_up_to, subgroup_Hd

U = 2.0**-53
SIGMA_MAX = 1 + 1 / (5 * math.log(2))
SIGMA_GRID = (1 + 1e-3, 1 + 1e-2, 1 + 1e-1, SIGMA_MAX)
DEFAULT_CUTOFF = 10**7


# ---------------------------------------------------------------------------
# prime-power tables and tails
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimePowerTable:
    """Prime powers n = q^k with weight 1/k = Lambda(n)/log n.

    Contains every prime q <= cutoff and every q^k (k >= 2) <= cutoff**2.
    """

    cutoff: int
    n: np.ndarray  # int64
    q: np.ndarray
    k: np.ndarray

    @property
    def weight(self) -> np.ndarray:
        return 1.0 / self.k


@lru_cache(maxsize=4)
def prime_power_table(cutoff: int) -> PrimePowerTable:
    primes = primes_up_to(cutoff)
    limit = cutoff * cutoff
    ns, qs, ks = [primes], [primes], [np.ones(len(primes), dtype=np.int64)]
    cur = primes.copy()
    base = primes.copy()
    k = 1
    while True:
        k += 1
        keep = cur <= limit // base
        if not keep.any():
            break
        base = base[keep]
        cur = cur[keep] * base
        ns.append(cur)
        qs.append(base)
        ks.append(np.full(len(cur), k, dtype=np.int64))
    return PrimePowerTable(cutoff, np.concatenate(ns), np.concatenate(qs), np.concatenate(ks))


def _iroot(x: int, k: int) -> int:
    r = int(round(x ** (1.0 / k)))
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def higher_power_tail(cutoff: int) -> float:
    """sum over k >= 2 of (1/k) sum_{j^k > cutoff^2} j^(-k), not restricted to classes."""
    limit = cutoff * cutoff
    total = 0.0
    k = 2
    while True:
        J = _iroot(limit, k)
        if J <= 1:
            # J = 1 from here on: sum_{j>=2} j^-k <= 3 * 2^-k, and sum_{k'>=k} 2^-k'/k' <= 2^(1-k)/k
            total += 3 * 2.0 ** (1 - k) / k
            break
        a = J + 1
        total += (a ** (-k) + a ** (1 - k) / (k - 1)) / k
        k += 1
    return total * (1 + 1e-12)


def prime_tail(p: int, sigma: float, cutoff: int) -> float:
    """(m/2) sum_h sum_{q > N, q = eps h} q^-sigma <= sigma p^(1-sigma) E1((sigma-1) log(N/p))."""
    if cutoff <= p:
        raise InvalidInput("cutoff must exceed p")
    x = (sigma - 1) * math.log(cutoff / p)
    return float(sigma * p ** (1 - sigma) * exp1(x)) * (1 + 1e-12)


def series_tail(p: int, d: int, sigma: float, cutoff: int = DEFAULT_CUTOFF) -> SeriesTailBound:
    m = (p - 1) // d
    return SeriesTailBound(cutoff, prime_tail(p, sigma, cutoff) + m / 2 * higher_power_tail(cutoff))


# ---------------------------------------------------------------------------
# f_{H,eps}(sigma)
# ---------------------------------------------------------------------------


def _class_sums(p: int, sigmas, table: PrimePowerTable, mask=None):
    """For each sigma, the array S[c] = sum over table entries with index(n) = c."""
    pm = prime_modulus(p)
    n = table.n if mask is None else table.n[mask]
    k = table.k if mask is None else table.k[mask]
    r = n % p
    unit = r != 0
    idx = pm.dlog[r[unit]]
    logn = np.log(n[unit].astype(np.float64))
    inv_k = 1.0 / k[unit]
    out = {}
    for s in sigmas:
        w = inv_k * np.exp(-s * logn)
        out[s] = np.bincount(idx, weights=w, minlength=p - 1), len(w)
    return out


def _bounded_series(partial: float, count: int, tail: float) -> BoundedValue:
    # true value in [partial, partial + tail]; partial has relative rounding <= count * u
    rnd = (count + 8) * U * partial
    return BoundedValue(partial + tail / 2, tail / 2 + rnd)


def f_H_sweep(p: int, sigmas=SIGMA_GRID, cutoff: int = DEFAULT_CUTOFF, ds=None) -> dict:
    """f_{H_d, eps}(sigma) for all odd d | p-1 (or ``ds``), eps = +-1, sigma in ``sigmas``.

    Returns {(d, eps, sigma): BoundedValue}.
    """
    for s in sigmas:
        if s <= 1:
            raise InvalidInput("sigma must exceed 1")
    table = prime_power_table(cutoff)
    sums = _class_sums(p, sigmas, table)
    ds = odd_divisors(p - 1) if ds is None else ds
    hp = higher_power_tail(cutoff)
    out = {}
    for s in sigmas:
        S, count = sums[s]
        pt = prime_tail(p, s, cutoff)
        for d in ds:
            m = (p - 1) // d
            tail = pt + m / 2 * hp
            plus = m / 2 * float(S[0::m].sum())
            minus = m / 2 * float(S[m // 2 :: m].sum())
            out[(d, 1, s)] = _bounded_series(plus, count, tail)
            out[(d, -1, s)] = _bounded_series(minus, count, tail)
    return out


def f_H_epsilon(p: int, d: int, eps: int, sigma: float, cutoff: int = DEFAULT_CUTOFF) -> BoundedValue:
    """(m/2) sum_{h in H} sum_{n = eps h (p)} Lambda(n)/log(n) n^-sigma, with certified tail."""
    check_pd(p, d)
    if eps not in (1, -1):
        raise InvalidInput("eps must be +1 or -1")
    if sigma <= 1:
        raise InvalidInput("sigma must exceed 1")
    return f_H_sweep(p, (sigma,), cutoff, ds=[d])[(d, eps, sigma)]


def f_H_sigma(p: int, d: int, sigma: float, cutoff: int = DEFAULT_CUTOFF) -> BoundedValue:
    """f_H(sigma) = f_{H,+1}(sigma) - f_{H,-1}(sigma)."""
    r = f_H_sweep(p, (sigma,), cutoff, ds=[d])
    return r[(d, 1, sigma)] - r[(d, -1, sigma)]


def sum_log_L(p: int, d: int, sigma: float) -> complex:
    """sum over X_p^-(H_d) of log L(sigma, chi) by Hurwitz zeta (independent oracle)."""
    from .characters import L_numeric

    return sum(complex(mpmath.log(L_numeric(chi, sigma))) for chi in odd_characters_trivial_on_H(p, d))


def f_H_at_1(p: int, d: int, prec: int = 53) -> BoundedValue:
    """sum_chi log L(1, chi), principal branches, complex BoundedValue."""
    chars = odd_characters_trivial_on_H(p, d)
    Ls = L1_batch(chars, prec=prec)
    with mpmath.workprec(max(prec + 20, 53)):
        total = BoundedValue(0j, 0.0)
        for L in Ls:
            total = total + L.log()
    return total


def reconstruct_hminus(spec: FieldSpec, fH1: BoundedValue, mersenne: bool = False) -> BoundedValue:
    """w (p/(4 pi^2) exp((4/m) f_H(1)))^{m/4}, or the g_H form 2 (p/pi^2 exp((4/m) g_H(1)))^{m/4}."""
    base = spec.p / math.pi**2 if mersenne else spec.p / (4 * math.pi**2)
    w = 2 if mersenne else spec.w
    # exp is branch-insensitive: the imaginary part of f_H(1) only rotates the phase
    with mpmath.workprec(80):
        z = mpmath.log(w) + spec.m / mpmath.mpf(4) * mpmath.log(mpmath.mpf(base)) + mpmath.mpc(fH1.value)
        v = mpmath.exp(z)
        rel = mpmath.expm1(fH1.abs_error + 8 * spec.m * U * (abs(z) + 1))
        val = mpmath.re(v)
        err = abs(v) * rel + abs(mpmath.im(v))
        return BoundedValue(+val, +err)


# ---------------------------------------------------------------------------
# constants and sub-sums
# ---------------------------------------------------------------------------


def C_pd(p: int, d: int, mode: str = "explicit") -> float:
    if mode == "explicit":
        return 0.5 * p ** (1 - 1 / d) + 1.5 + 0.375 * math.log(p)
    if mode == "mersenne":
        return 2.5 + 0.375 * math.log(p)
    raise InvalidInput(f"unknown C_pd mode {mode!r}")


@dataclass(frozen=True)
class SigmaDecomposition:
    sigma1: BoundedValue
    sigma2: BoundedValue
    sigma3: BoundedValue
    min_n_sigma1: int | None
    reports: tuple


def _finite_class_sum(p: int, d: int, eps: int, sigma: float, lo: int, hi: int) -> tuple[BoundedValue, list[int]]:
    """(m/2) sum_{lo <= n < hi, n = eps h} n^-sigma over all integers n."""
    H = subgroup_Hd(p, d).elements
    m = (p - 1) // d
    targets = {(eps * h) % p for h in H}
    ns = [n for start in sorted(targets) for n in range(start, hi, p) if n >= lo]
    ns = [n for n in ns if n >= 2]
    vals = [n ** (-sigma) for n in ns]
    v = m / 2 * math.fsum(vals)
    return BoundedValue(v, (len(ns) + 4) * 4 * U * v), sorted(ns)


def sigma_decomposition(p: int, d: int, eps: int, sigma: float, cutoff: int = DEFAULT_CUTOFF) -> SigmaDecomposition:
    """Split the series at n = p and n = 2p and check each range bound.

    Sigma_1 and Sigma_2 run over all integers n (so they dominate the
    prime-power sums); Sigma_3 runs over prime powers with Lambda(n)/log n
    weights, which is what its bound controls.
    """
    check_pd(p, d)
    if not 1 < sigma <= SIGMA_MAX + 1e-15:
        raise InvalidInput(f"sigma must lie in (1, {SIGMA_MAX}]")
    m = (p - 1) // d
    s1, ns1 = _finite_class_sum(p, d, eps, sigma, 2, p)
    s2, _ = _finite_class_sum(p, d, eps, sigma, p, 2 * p)
    table = prime_power_table(cutoff)
    mask = table.n >= 2 * p
    S, count = _class_sums(p, (sigma,), table, mask)[sigma]
    partial = m / 2 * float((S[0::m] if eps == 1 else S[m // 2 :: m]).sum())
    s3 = _bounded_series(partial, count, series_tail(p, d, sigma, cutoff).tail)
    params = dict(p=p, d=d, eps=eps, sigma=sigma)
    reports = [
        check_le("sigma1_range", s1, 0.5 * p ** (1 - 1 / d), **params),
        check_le("sigma2_range", s2, (p - 1) / (2 * p), **params),
        check_le("sigma3_range", s3, 1 + 0.375 * math.log(p) - math.log(sigma - 1), **params),
    ]
    min_n = min(ns1) if ns1 else None
    if min_n is not None:
        reports.append(check_le("sigma1_min_n", (p - 1) ** (1 / d) * (1 - 1e-12), float(min_n), **params))
    return SigmaDecomposition(s1, s2, s3, min_n, tuple(reports))


def sigma1_over_m(p: int, d: int, sigma: float = 1.0) -> float:
    """max over eps of Sigma_1 / m; sigma = 1 is allowed since the sum is finite."""
    m = (p - 1) // d
    return max(_finite_class_sum(p, d, e, sigma, 2, p)[0].value for e in (1, -1)) / m


def fH_bound_reports(p: int, sigmas=SIGMA_GRID, cutoff: int = DEFAULT_CUTOFF) -> list[VerificationReport]:
    """0 <= f_{H,+-}(sigma), |f_H(sigma)| <= C_{p,d} - log(sigma - 1) for every odd d | p-1."""
    vals = f_H_sweep(p, sigmas, cutoff)
    out = []
    for d in odd_divisors(p - 1):
        c = C_pd(p, d)
        for s in sigmas:
            rhs = BoundedValue(c - math.log(s - 1), 8 * U * (c + 10))
            fp, fm = vals[(d, 1, s)], vals[(d, -1, s)]
            params = dict(p=p, d=d, sigma=s, cutoff=cutoff)
            for eps, f in ((1, fp), (-1, fm)):
                out.append(check_le("fH_eps_nonneg", 0.0, BoundedValue(f.lo, 0.0), eps=eps, **params))
                out.append(check_le("fH_eps_upper", f, rhs, eps=eps, **params))
            out.append(check_le("fH_abs_upper", abs(fp - fm), rhs, **params))
    return out


# ---------------------------------------------------------------------------
# S_beta, G_alpha
# ---------------------------------------------------------------------------


def S_beta(x: float, beta: float) -> float:
    """x^(-1/2) sum_{2 <= k <= beta log x} x^(1/k)."""
    if beta <= 0 or x < math.exp(2 / beta) * (1 - 1e-15):
        raise InvalidInput("S_beta needs beta > 0 and x >= exp(2/beta)")
    kmax = math.floor(beta * math.log(x))
    # guard the floor against rounding: k <= beta log x  <=>  x >= exp(k / beta)
    while kmax + 1 >= 2 and x >= math.exp((kmax + 1) / beta):
        kmax += 1
    while kmax >= 2 and x < math.exp(kmax / beta) * (1 - 1e-15):
        kmax -= 1
    kmax = max(kmax, 2)
    return math.fsum(x ** (1 / k) for k in range(2, kmax + 1)) / math.sqrt(x)


def _convex_bracket(f, a: float, b: float, n: int) -> tuple[float, float]:
    """Midpoint (lower) and trapezoid (upper) sums of a convex f on [a, b]."""
    t = np.linspace(a, b, n + 1)
    h = (b - a) / n
    fe = f(t)
    trap = h * (fe.sum() - 0.5 * (fe[0] + fe[-1]))
    mid = h * f(t[:-1] + h / 2).sum()
    return float(mid), float(trap)


def G_alpha(X: float, alpha: float, beta: float, n: int = 200_000) -> BoundedValue:
    """(int_{1/beta}^{X/2} e^t / t^2 dt) - (alpha - 1)/X e^(X/2).

    e^t/t^2 is convex on t > 0, so midpoint and trapezoid sums bracket the
    integral; the bracket plus float rounding gives the error bound.
    """
    if beta <= 0 or X < 2 / beta or alpha <= 1:
        raise InvalidInput("G_alpha needs alpha > 1, beta > 0, X >= 2/beta")
    a, b = 1 / beta, X / 2
    lo, hi = _convex_bracket(lambda t: np.exp(t) / t**2, a, b, n)
    rnd = 16 * n * U * hi
    integral = BoundedValue((lo + hi) / 2, (hi - lo) / 2 + rnd)
    return integral - BoundedValue((alpha - 1) / X * math.exp(X / 2), 8 * U * math.exp(X / 2))


def G_alpha_closed_form(X, alpha, beta) -> float:
    """Same quantity from the antiderivative Ei(t) - e^t/t (oracle)."""
    with mpmath.workdps(30):
        F = lambda t: mpmath.ei(t) - mpmath.exp(t) / t
        a, b = mpmath.mpf(1) / beta, mpmath.mpf(X) / 2
        return float(F(b) - F(a) - (mpmath.mpf(alpha) - 1) / X * mpmath.exp(b))


def X_alpha(alpha: float) -> float:
    return 2 * (alpha + 1) / (alpha - 1)


def s_beta_reports(npts: int = 1000, alpha: float = 11 / 4, beta: float = 1 / math.log(2)) -> list[VerificationReport]:
    out = []
    for x in np.geomspace(4.0, 1e12, npts):
        out.append(check_le("S_beta_le_alpha", S_beta(float(x), beta), alpha, x=float(x)))
    XA = X_alpha(alpha)
    out.append(check_le("G_alpha_at_X_alpha", G_alpha(XA, alpha, beta), 0.0, X=XA, alpha=alpha))
    out.append(check_le("beta_condition", (alpha - 1) / (alpha + 1), beta, alpha=alpha, beta=beta))
    return out


# ---------------------------------------------------------------------------
# prime counts in progressions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=8)
def _primes_list(x: int) -> tuple[int, ...]:
    return tuple(primes_up_to(x).tolist())


def prime_counts(x: int, a: int, p: int) -> tuple[int, Fraction]:
    """(pi(x; a, p), Pi(x; a, p)): primes resp. prime powers weighted by 1/k, <= x, = a (mod p)."""
    x = int(x)
    pi_count = 0
    big = Fraction(0)
    for q in _primes_list(x):
        if q % p == a % p:
            pi_count += 1
        n, k = q, 1
        while n <= x:
            if n % p == a % p:
                big += Fraction(1, k)
            n *= q
            k += 1
    return pi_count, big


def mv_reports(pmax: int = 100, multiples=(2, 4, 10, 100)) -> list[VerificationReport]:
    out = []
    for p in _primes_list(pmax):
        for c in multiples:
            x = c * p
            for a in range(1, p):
                pi_c, Pi_c = prime_counts(x, a, p)
                mv = 2 * x / ((p - 1) * math.log(x / p)) if p > 2 else 2 * x / math.log(x / p)
                out.append(check_lt("montgomery_vaughan", float(pi_c), BoundedValue(mv, 8 * U * mv), p=p, a=a, x=x))
                diff = Pi_c - pi_c
                rhs = 11 * math.sqrt(x) / (4 * p) + 1.5 * math.log(x)
                out.append(check_le("Pi_minus_pi_nonneg", 0.0, float(diff), p=p, a=a, x=x))
                out.append(check_le("Pi_minus_pi_upper", float(diff), BoundedValue(rhs, 8 * U * rhs), p=p, a=a, x=x))
    return out


# ---------------------------------------------------------------------------
# Mersenne fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MersenneResult:
    p: int
    d: int
    gH1: BoundedValue
    reconstruction: BoundedValue
    hminus_float: BoundedValue
    range1_sum: Fraction
    range1_bound: Fraction
    reports: tuple


def _require_mersenne(p: int) -> int:
    d = mersenne_exponent(p)
    if d is None:
        raise InvalidInput(f"{p} is not a Mersenne prime")
    check_pd(p, d)
    return d


def mersenne_range1(p: int) -> tuple[Fraction, Fraction]:
    """(m/2) sum_{k=1}^{d-1} 1/(p - 2^k) and md / (2 (p - 2^(d-1))), exactly."""
    d = _require_mersenne(p)
    m = (p - 1) // d
    s = Fraction(m, 2) * sum((Fraction(1, p - 2**k) for k in range(1, d)), Fraction(0))
    return s, Fraction(m * d, 2 * (p - 2 ** (d - 1)))


def g_H_epsilon(p: int, eps: int, sigma: float, cutoff: int = DEFAULT_CUTOFF) -> BoundedValue:
    """Odd-n version of f_{H,eps}(sigma) for the Mersenne field."""
    d = _require_mersenne(p)
    table = prime_power_table(cutoff)
    S, count = _class_sums(p, (sigma,), table, table.n % 2 == 1)[sigma]
    m = (p - 1) // d
    partial = m / 2 * float((S[0::m] if eps == 1 else S[m // 2 :: m]).sum())
    return _bounded_series(partial, count, series_tail(p, d, sigma, cutoff).tail)


def mersenne_gH(p: int, sigma: float | None = None, cutoff: int = DEFAULT_CUTOFF):
    """g_H(sigma) from the odd-n series if ``sigma`` is given, else the full s = 1 analysis."""
    d = _require_mersenne(p)
    if sigma is not None:
        return g_H_epsilon(p, 1, sigma, cutoff) - g_H_epsilon(p, -1, sigma, cutoff)
    spec = FieldSpec(p, d)
    chars = odd_characters_trivial_on_H(p, d)
    reports = []
    if any(character_value(chi, 2) != 1 for chi in chars):
        reports.append(check_eq("chi2_is_one", 0, 1, p=p))
    else:
        reports.append(check_eq("chi2_is_one", 1, 1, p=p))
    log2 = BoundedValue(math.log(2), U)
    g = BoundedValue(0j, 0.0)
    for L in L1_batch(chars):
        g = g + (L.log() - log2)  # L(1, chi') = L(1, chi) / 2
    recon = reconstruct_hminus(spec, g, mersenne=True)
    hf = relative_class_number_float(spec)
    inside = hf.contains(mpmath.re(recon.value))
    reports.append(
        VerificationReport(
            "mersenne_reconstruction", dict(p=p), recon, hf, Verdict.PASS if inside else Verdict.FAIL, "in"
        )
    )
    s, b = mersenne_range1(p)
    reports.append(check_le("mersenne_range1", s, b, p=p))
    reports.append(check_eq("mersenne_range1_is_one", b, Fraction(1), p=p))
    return MersenneResult(p, d, g, recon, hf, s, b, tuple(reports))


def mersenne_L_halving(p: int, chi_index: int = 0) -> tuple[BoundedValue, complex]:
    """(L(1, chi), L(1, chi')) for a character of the Mersenne field; the first is twice the second."""
    d = _require_mersenne(p)
    chi = odd_characters_trivial_on_H(p, d)[chi_index]
    return L1_numeric(chi), L1_induced_mod_2p(chi)


# ---------------------------------------------------------------------------
# asymptotic ratio and the mean-log diagnostic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticRatio:
    p: int
    d: int
    r: BoundedValue
    envelope: float

    @property
    def within_envelope(self) -> bool:
        return abs(self.r.value) + self.r.abs_error <= self.envelope


def asymptotic_ratio(p: int, d: int, h_exact: int | None = None) -> AsymptoticRatio:
    """r = (4/m) log(h^-/w) - log(p/(4 pi^2)) with the proven envelope on |r|.

    r equals (4/m) Re f_H(1); the envelope is (4/m)(C_{p,d} + log(4 e p^4 log p)).
    """
    spec = FieldSpec(p, d)
    m = spec.m
    if h_exact is not None:
        with mpmath.workprec(80):
            lh = BoundedValue(float(mpmath.log(h_exact)), 4 * U * (1 + float(mpmath.log(h_exact))))
    else:
        lh = log_hminus_float(spec)
    const = math.log(spec.w) + m / 4 * math.log(p / (4 * math.pi**2))
    r = (lh - BoundedValue(const, 8 * U * (abs(const) + 1))).scale(4 / m)
    env = 4 / m * (C_pd(p, d) + math.log(4 * math.e * p**4 * math.log(p)))
    return AsymptoticRatio(p, d, r, env)


@dataclass(frozen=True)
class MeanLogL:
    p: int
    d: int
    y: int
    full: BoundedValue
    truncated: BoundedValue
    head: float  # the n < p part of the truncated sum
    tail_abs: float  # sum of |terms| with p <= n <= y
    head_bound: float  # d / (p-1)^(1/d)


def mean_log_L(p: int, d: int, y: int | None = None) -> MeanLogL:
    check_pd(p, d)
    if y is None:
        y = int(min(math.log(p) ** 100, 10**6))
    m = (p - 1) // d
    full = f_H_at_1(p, d).scale(2 / m)
    H = set(subgroup_Hd(p, d).elements)
    tbl = prime_power_table(max(int(math.isqrt(y)) + 1, 2))
    sel = tbl.n <= y
    n, k = tbl.n[sel], tbl.k[sel]
    # primes up to y are needed, not only up to sqrt(y)
    primes = primes_up_to(y)
    extra = primes[primes > tbl.cutoff]
    n = np.concatenate([n, extra])
    k = np.concatenate([k, np.ones(len(extra), dtype=np.int64)])
    r = n % p
    eps = np.zeros(len(n))
    eps[np.isin(r, list(H))] = 1.0
    eps[np.isin((-r) % p, list(H))] = -1.0
    terms = eps / (k * n.astype(np.float64))  # Lambda(n)/(n log n) = 1/(k n)
    head = float(terms[n < p].sum())
    tail_abs = float(np.abs(terms[n >= p]).sum())
    tot = float(terms.sum())
    trunc = BoundedValue(tot, (len(terms) + 8) * U * float(np.abs(terms).sum()))
    return MeanLogL(p, d, y, full, trunc, head, tail_abs, d / (p - 1) ** (1 / d))
