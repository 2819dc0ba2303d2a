"""Verification suites: each returns a list of VerificationReports.

Suite names are stable identifiers used by ``relclass verify`` and by the
acceptance tests.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from . import analytic
from .bounded import BoundedValue, Verdict, VerificationReport, check_eq, check_le
from .characters import l_table, odd_characters_trivial_on_H
from .classnumber import (
    FieldSpec,
    hminus_amgm_bound,
    quadratic_forms_class_number,
    relative_class_number_exact,
    relative_class_number_float,
    specialized_bounds,
)
from .dedekind import N_value, dedekind_sum, mean_square_M, mersenne_N_closed_form
from .numtheory import is_prime, mersenne_exponent, odd_divisors

MERSENNE_PRIMES = (7, 31, 127, 8191)
GOLDEN_HMINUS = {(23, 1): 3, (23, 11): 3, (7, 3): 1, (7, 1): 1, (31, 15): 3}
D1_TREND_PRIMES = (101, 211, 401, 809, 1601)


def odd_primes(lo: int, hi: int) -> list[int]:
    return [p for p in range(max(lo, 3), hi + 1) if is_prime(p)]


def _pmap(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=1))


def n_parity(pmax: int = 5000) -> list[VerificationReport]:
    out = []
    for p in odd_primes(3, pmax):
        for d in odd_divisors(p - 1):
            if d == 1:
                continue
            n = N_value(p, d)
            ok = n.denominator == 1 and n.numerator % 2 == 1
            out.append(check_eq("N_odd_integer", ok, True, p=p, d=d, N=f"{n.numerator}/{n.denominator}"))
    return out


def d1_closed_form(pmax: int = 10**4) -> list[VerificationReport]:
    out = []
    for p in odd_primes(3, pmax):
        s1 = dedekind_sum(1, p)
        ratio = mean_square_M(p, 1).M_over_pi2
        target = Fraction(1, 6) * (1 - Fraction(1, p)) * (1 - Fraction(2, p))
        out.append(check_eq("d1_s1p", s1, Fraction((p - 1) * (p - 2), 12 * p), p=p))
        out.append(check_eq("d1_N", N_value(p, 1), Fraction(2 - 3 * p, p), p=p))
        out.append(check_eq("d1_mean_square", ratio, target, p=p))
    return out


def d3_closed_form(pmax: int = 5000) -> list[VerificationReport]:
    return [
        check_eq("d3_N_is_minus_one", N_value(p, 3), Fraction(-1), p=p)
        for p in odd_primes(3, pmax)
        if p % 6 == 1
    ]


def mersenne_closed_form(primes=MERSENNE_PRIMES) -> list[VerificationReport]:
    out = []
    for p in primes:
        d = mersenne_exponent(p)
        out.append(check_eq("mersenne_N", N_value(p, d), Fraction(mersenne_N_closed_form(p)), p=p, d=d))
        out.append(
            check_eq(
                "mersenne_M_over_pi2",
                mean_square_M(p, d).M_over_pi2,
                Fraction(1, 2) * (1 - Fraction(2 * d - 1, p)),
                note="M = (pi^2/2)(1 - (2d-1)/p); a pi/2 prefactor would contradict the N formula",
                p=p,
                d=d,
            )
        )
    return out


def _mean_square_one(p: int) -> list[VerificationReport]:
    t = l_table(p)
    L_abs2 = np.abs(t.digamma) ** 2
    err = 2 * np.abs(t.digamma) * t.digamma_err + t.digamma_err**2
    out = []
    for d in odd_divisors(p - 1):
        m = (p - 1) // d
        js = [chi.j for chi in odd_characters_trivial_on_H(p, d)]
        direct = 2 / m * math.fsum(L_abs2[js])
        derr = 2 / m * float(err[js].sum()) + len(js) * 4e-16 * direct
        M = mean_square_M(p, d).M_float
        lhs = BoundedValue(abs(direct - float(M.value)), derr + M.abs_error)
        out.append(check_le("mean_square_consistency", lhs, 1e-8, p=p, d=d))
    return out


def mean_square(pmax: int = 500, jobs: int = 1) -> list[VerificationReport]:
    return [r for rs in _pmap(_mean_square_one, odd_primes(3, pmax), jobs) for r in rs]


def class_numbers(golden=None) -> list[VerificationReport]:
    golden = GOLDEN_HMINUS if golden is None else golden
    out = []
    for (p, d), expected in golden.items():
        spec = FieldSpec(p, d)
        h = relative_class_number_exact(spec, check_float=False)
        f = relative_class_number_float(spec)
        out.append(check_eq("hminus_golden", h, expected, p=p, d=d))
        out.append(check_le("hminus_float_contains_exact", abs(f.value - h), BoundedValue(f.abs_error, 0.0), p=p, d=d))
        if spec.m == 2:
            out.append(check_eq("hminus_forms_oracle", h, quadratic_forms_class_number(p), p=p, d=d))
    return out


def amgm_holds_exact(spec: FieldSpec, h: int) -> bool:
    """h <= w (p M / 4 pi^2)^{m/4}  <=>  (h/w)^4 <= (p * ratio / 4)^m, all rational."""
    ratio = mean_square_M(spec.p, spec.d).M_over_pi2
    return Fraction(h, spec.w) ** 4 <= (spec.p * ratio / 4) ** spec.m


def _bound_chain_one(p: int) -> list[VerificationReport]:
    out = []
    for d in odd_divisors(p - 1):
        spec = FieldSpec(p, d)
        h = relative_class_number_exact(spec)
        ok = amgm_holds_exact(spec, h)
        b = hminus_amgm_bound(spec)
        out.append(
            VerificationReport(
                "amgm_bound",
                dict(p=p, d=d, h=h),
                BoundedValue(float(h)),
                BoundedValue(float(b)),
                Verdict.PASS if ok else Verdict.FAIL,
                "<=",
                "decided in exact rationals",
            )
        )
        for name, val in specialized_bounds(spec).items():
            out.append(check_le(f"bound_{name}", float(h), float(val), p=p, d=d))
    return out


def bound_chain(pmax: int = 200, jobs: int = 1) -> list[VerificationReport]:
    primes = sorted(set(odd_primes(3, pmax)) | {p for p, _ in GOLDEN_HMINUS})
    return [r for rs in _pmap(_bound_chain_one, primes, jobs) for r in rs]


def _fH_one(args) -> list[VerificationReport]:
    p, cutoff = args
    return analytic.fH_bound_reports(p, analytic.SIGMA_GRID, cutoff)


def fH_bounds(pmin: int = 29, pmax: int = 2000, cutoff: int = analytic.DEFAULT_CUTOFF, jobs: int = 1):
    items = [(p, cutoff) for p in odd_primes(pmin, pmax)]
    return [r for rs in _pmap(_fH_one, items, jobs) for r in rs]


def _sigma_one(args) -> list[VerificationReport]:
    p, cutoff = args
    out = []
    for d in odd_divisors(p - 1):
        for eps in (1, -1):
            for s in analytic.SIGMA_GRID:
                out.extend(analytic.sigma_decomposition(p, d, eps, s, cutoff).reports)
    return out


def sigma_ranges(pmin: int = 29, pmax: int = 300, cutoff: int = 10**6, jobs: int = 1):
    items = [(p, cutoff) for p in odd_primes(pmin, pmax)]
    return [r for rs in _pmap(_sigma_one, items, jobs) for r in rs]


def s_beta_bounds(npts: int = 1000) -> list[VerificationReport]:
    return analytic.s_beta_reports(npts)


def mv(pmax: int = 100) -> list[VerificationReport]:
    return analytic.mv_reports(pmax)


def _local_noise(p: int, width: int = 6) -> float:
    """RMS of r(q, 1) over the 2*width primes nearest p (and p itself)."""
    below = [q for q in range(p - 1, 2, -1) if is_prime(q)][:width]
    above = []
    q = p + 1
    while len(above) < width:
        if is_prime(q):
            above.append(q)
        q += 1
    rs = [analytic.asymptotic_ratio(q, 1).r.value for q in below + above + [p]]
    return math.sqrt(math.fsum(r * r for r in rs) / len(rs))


def asymptotics_d1(primes=D1_TREND_PRIMES) -> list[VerificationReport]:
    out = []
    ratios = [analytic.asymptotic_ratio(p, 1) for p in primes]
    noise = [_local_noise(p) for p in primes]
    for ar in ratios:
        out.append(check_le("d1_ratio_in_envelope", abs(ar.r), ar.envelope, p=ar.p))
    for i in range(len(primes) - 1):
        a, b = ratios[i], ratios[i + 1]
        out.append(
            check_le(
                "d1_ratio_shrinks_within_noise",
                abs(b.r),
                abs(a.r) + BoundedValue(noise[i]),
                note=f"noise = local RMS of r over neighbouring primes ({noise[i]:.3g})",
                p=b.p,
                prev=a.p,
            )
        )
        out.append(check_le("d1_noise_scale_decreasing", noise[i + 1], noise[i], p=b.p, prev=a.p))
    return out


def asymptotics_mersenne(primes=MERSENNE_PRIMES) -> list[VerificationReport]:
    out = []
    gaps = []
    for p in primes:
        d = mersenne_exponent(p)
        ar = analytic.asymptotic_ratio(p, d)
        gaps.append(abs(ar.r - math.log(4)))
        res = analytic.mersenne_gH(p)
        out.extend(res.reports)
        out.append(check_le("mersenne_ratio_in_envelope", abs(ar.r), ar.envelope, p=p))
    for i in range(len(primes) - 1):
        out.append(check_le("mersenne_gap_decreasing", gaps[i + 1], gaps[i], p=primes[i + 1], prev=primes[i]))
    return out


def roundtrip(golden=None) -> list[VerificationReport]:
    golden = GOLDEN_HMINUS if golden is None else golden
    out = []
    for p, d in golden:
        spec = FieldSpec(p, d)
        f = relative_class_number_float(spec)
        rec = analytic.reconstruct_hminus(spec, analytic.f_H_at_1(p, d))
        # the reconstructed value must fall inside the float interval
        inside = f.contains(rec.value)
        out.append(
            VerificationReport(
                "fH_roundtrip",
                dict(p=p, d=d),
                rec,
                f,
                Verdict.PASS if inside and f.width() < 1e-3 else Verdict.FAIL,
                "in",
            )
        )
    return out


SUITES = {
    "prop1": n_parity,
    "n-parity": n_parity,
    "d1": d1_closed_form,
    "d3": d3_closed_form,
    "mersenne": mersenne_closed_form,
    "mean-square": mean_square,
    "classnumbers": class_numbers,
    "bound-chain": bound_chain,
    "fh-bounds": fH_bounds,
    "sigma-ranges": sigma_ranges,
    "boundsc": s_beta_bounds,
    "s-beta": s_beta_bounds,
    "mv": mv,
    "asymptotics-d1": asymptotics_d1,
    "asymptotics-mersenne": asymptotics_mersenne,
    "roundtrip": roundtrip,
}
