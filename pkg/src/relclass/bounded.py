"""Midpoint-radius numbers and verification records.

A ``BoundedValue`` claims |true - value| <= abs_error.  The value may be a
Python float, a complex, or an ``mpmath`` number when the magnitude would
overflow doubles (large relative class numbers); arithmetic inflates the
radius by a few ulps so double rounding never shrinks the enclosure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any

import mpmath

EPS = 2.0**-52


def _ulps(x) -> float:
    """A few units in the last place of |x|, as a float (or mpf if huge)."""
    a = abs(x)
    if isinstance(a, float):
        return 4 * EPS * a + 5e-324
    if isinstance(a, mpmath.mpf):
        return 4 * a * mpmath.eps
    return 0.0


@dataclass(frozen=True)
class BoundedValue:
    value: Any
    abs_error: Any = 0.0

    def __post_init__(self):
        if not self.abs_error >= 0 or not mpmath.isfinite(self.abs_error):
            raise ValueError(f"abs_error must be finite and >= 0, got {self.abs_error}")

    @classmethod
    def exact(cls, x) -> BoundedValue:
        return cls(x, 0.0)

    @property
    def lo(self):
        return self.value - self.abs_error

    @property
    def hi(self):
        return self.value + self.abs_error

    def contains(self, x) -> bool:
        return abs(x - self.value) <= self.abs_error

    def width(self):
        return 2 * self.abs_error

    def _coerce(self, other) -> BoundedValue:
        return other if isinstance(other, BoundedValue) else BoundedValue(other)

    def __add__(self, other):
        o = self._coerce(other)
        v = self.value + o.value
        err = self.abs_error + o.abs_error
        return BoundedValue(v, err + _ulps(err) + _ulps(v))

    __radd__ = __add__

    def __neg__(self):
        return BoundedValue(-self.value, self.abs_error)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        v = self.value * o.value
        err = (
            abs(self.value) * o.abs_error
            + abs(o.value) * self.abs_error
            + self.abs_error * o.abs_error
        )
        return BoundedValue(v, err + _ulps(err) + _ulps(v))

    __rmul__ = __mul__

    def scale(self, c) -> BoundedValue:
        v = self.value * c
        err = self.abs_error * abs(c)
        return BoundedValue(v, err + _ulps(err) + _ulps(v))

    def conjugate(self) -> BoundedValue:
        return BoundedValue(self.value.conjugate(), self.abs_error)

    def __abs__(self):
        a = abs(self.value)
        return BoundedValue(a, self.abs_error + _ulps(a))

    def log(self) -> BoundedValue:
        """Principal-branch log; needs the disc to avoid zero."""
        a = abs(self.value)
        if self.abs_error >= a:
            raise ValueError("interval contains zero")
        if isinstance(self.value, (complex, mpmath.mpc)):
            v = mpmath.log(self.value)
            if isinstance(self.value, complex):
                v = complex(v)
            # |log(z+e) - log z| <= |e| / (|z| - |e|) off the branch cut
            if self.value.real < 0 and abs(self.value.imag) <= self.abs_error:
                raise ValueError("interval straddles the branch cut")
        else:
            if self.value - self.abs_error <= 0:
                raise ValueError("real log of a non-positive interval")
            v = math.log(self.value) if isinstance(self.value, float) else mpmath.log(self.value)
        return BoundedValue(v, self.abs_error / (a - self.abs_error) + _ulps(v))

    def exp(self) -> BoundedValue:
        """exp for real values, returned as mpf so large results stay finite."""
        # enough bits that rounding stays far below the propagated error
        bits = 80
        if self.abs_error > 0:
            bits = max(bits, int(-mpmath.log(self.abs_error, 2)) + 40)
        with mpmath.workprec(min(bits, 20000)):
            v = mpmath.exp(mpmath.mpf(self.value))
            err = v * mpmath.expm1(mpmath.mpf(self.abs_error)) + _ulps(v)
        return BoundedValue(v, err)

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return f"BoundedValue({mpmath.nstr(self.value, 17)} +/- {mpmath.nstr(self.abs_error, 3)})"


@dataclass(frozen=True)
class SeriesTailBound:
    cutoff: int
    tail: float


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INDETERMINATE = "indeterminate"


def _as_bounded(x) -> BoundedValue:
    return x if isinstance(x, BoundedValue) else BoundedValue(x)


@dataclass(frozen=True)
class VerificationReport:
    claim: str
    params: dict
    lhs: BoundedValue
    rhs: BoundedValue
    verdict: Verdict
    relation: str = "<="
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "relation": self.relation,
            "lhs": _serial(self.lhs.value),
            "lhs_err": _serial(self.lhs.abs_error),
            "rhs": _serial(self.rhs.value),
            "rhs_err": _serial(self.rhs.abs_error),
            "verdict": self.verdict.value,
            "note": self.note,
        }

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS


def _serial(v):
    """Exact rationals as "num/den", exact ints as ints, everything else as float."""
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (bool, int)):
        return v
    if isinstance(v, (complex, mpmath.mpc)):
        return str(complex(v))
    return float(v)


def _jsonable(v):
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return str(v)


def check_le(claim: str, lhs, rhs, note: str = "", **params) -> VerificationReport:
    """lhs <= rhs: pass only when the whole lhs interval sits below the rhs interval."""
    lhs, rhs = _as_bounded(lhs), _as_bounded(rhs)
    if lhs.hi <= rhs.lo:
        verdict = Verdict.PASS
    elif lhs.lo > rhs.hi:
        verdict = Verdict.FAIL
    else:
        verdict = Verdict.INDETERMINATE
    return VerificationReport(claim, params, lhs, rhs, verdict, "<=", note)


def check_lt(claim: str, lhs, rhs, note: str = "", **params) -> VerificationReport:
    lhs, rhs = _as_bounded(lhs), _as_bounded(rhs)
    if lhs.hi < rhs.lo:
        verdict = Verdict.PASS
    elif lhs.lo >= rhs.hi:
        verdict = Verdict.FAIL
    else:
        verdict = Verdict.INDETERMINATE
    return VerificationReport(claim, params, lhs, rhs, verdict, "<", note)


def check_eq(claim: str, lhs, rhs, note: str = "", **params) -> VerificationReport:
    """Exact equality (rationals) or interval overlap (bounded values)."""
    if isinstance(lhs, BoundedValue) or isinstance(rhs, BoundedValue):
        lb, rb = _as_bounded(lhs), _as_bounded(rhs)
        ok = abs(lb.value - rb.value) <= lb.abs_error + rb.abs_error
        return VerificationReport(
            claim, params, lb, rb, Verdict.PASS if ok else Verdict.FAIL, "=", note
        )
    ok = lhs == rhs
    # keep exact operands exact; they serialize as "num/den"
    exact = lambda x: Fraction(x) if isinstance(x, int) and not isinstance(x, bool) else x
    return VerificationReport(
        claim,
        params,
        BoundedValue(exact(lhs)),
        BoundedValue(exact(rhs)),
        Verdict.PASS if ok else Verdict.FAIL,
        "=",
        note,
    )
