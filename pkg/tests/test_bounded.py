import math
from fractions import Fraction

import mpmath
from hypothesis import given, strategies as st

from relclass.bounded import BoundedValue, Verdict, check_eq, check_le, check_lt

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
radius = st.floats(min_value=0, max_value=1e-3)


@given(finite, radius, finite, radius)
def test_arithmetic_encloses(a, ea, b, eb):
    x, y = BoundedValue(a, ea), BoundedValue(b, eb)
    for op in (lambda u, v: u + v, lambda u, v: u - v, lambda u, v: u * v):
        z = op(x, y)
        lo, hi = Fraction(z.value) - Fraction(z.abs_error), Fraction(z.value) + Fraction(z.abs_error)
        for da in (-ea, 0, ea):
            for db in (-eb, 0, eb):
                exact = op(Fraction(a) + Fraction(da), Fraction(b) + Fraction(db))
                assert lo <= exact <= hi


def test_log_exp_roundtrip():
    x = BoundedValue(3.0, 1e-12)
    y = x.log().exp()
    assert isinstance(y.value, mpmath.mpf)
    assert y.contains(3.0)


def test_verdicts():
    assert check_le("c", BoundedValue(1.0, 0.1), 2.0).verdict is Verdict.PASS
    assert check_le("c", BoundedValue(3.0, 0.1), 2.0).verdict is Verdict.FAIL
    assert check_le("c", BoundedValue(2.0, 0.1), 2.0).verdict is Verdict.INDETERMINATE
    assert check_lt("c", 1, 2).passed
    assert check_eq("c", Fraction(1, 3), Fraction(2, 6)).passed
    assert not check_eq("c", Fraction(1, 3), Fraction(1, 4)).passed
    rep = check_le("c", 1.0, 2.0, p=7)
    assert rep.to_dict()["params"] == {"p": 7}


def test_contains_width():
    x = BoundedValue(math.pi, 1e-9)
    assert x.contains(3.1415926531)
    assert not x.contains(3.1415)
    assert abs(x.width() - 2e-9) < 1e-12
