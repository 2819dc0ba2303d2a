import mpmath
import pytest

from relclass.classnumber import (
    B1,
    FieldSpec,
    compute,
    galois_orbits,
    hminus_amgm_bound,
    quadratic_forms_class_number,
    relative_class_number_exact,
    relative_class_number_float,
    specialized_bounds,
)
from relclass.characters import character
from relclass.errors import InvalidInput, ResourceLimit
from relclass.numtheory import euler_phi, odd_divisors

# known h^- of Q(zeta_p)
CYCLOTOMIC_HMINUS = {3: 1, 5: 1, 7: 1, 11: 1, 13: 1, 17: 1, 19: 1, 23: 3, 29: 8, 31: 9, 37: 37, 41: 121, 43: 211, 47: 695}


def brute_forms(D):
    # reduced forms a x^2 + b x y + c y^2 with |b| <= a <= c, b >= 0 when |b| = a or a = c
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            from math import gcd

            if gcd(gcd(a, abs(b)), c) == 1:
                h += 1
        a += 1
    return h


def test_field_spec():
    s = FieldSpec(23, 1)
    assert (s.m, s.w, s.Q) == (22, 46, 1)
    assert FieldSpec(23, 11).w == 2
    assert FieldSpec(31, 5).is_mersenne
    with pytest.raises(InvalidInput):
        FieldSpec(23, 2)
    with pytest.raises(InvalidInput):
        FieldSpec(21, 1)


def test_B1_quadratic():
    assert B1(character(23, 11)).coeffs[0] == -3
    assert B1(character(7, 3)).coeffs[0] == -1


def test_golden_values():
    assert relative_class_number_exact(FieldSpec(23, 1)) == 3
    assert relative_class_number_exact(FieldSpec(23, 11)) == 3
    assert relative_class_number_exact(FieldSpec(7, 3)) == 1
    assert relative_class_number_exact(FieldSpec(3, 1)) == 1
    assert relative_class_number_exact(FieldSpec(31, 15)) == 3


def test_cyclotomic_table():
    for p, h in CYCLOTOMIC_HMINUS.items():
        assert relative_class_number_exact(FieldSpec(p, 1)) == h, p


def test_forms_oracle():
    assert quadratic_forms_class_number(7) == 1
    assert quadratic_forms_class_number(23) == 3
    assert quadratic_forms_class_number(31) == 3
    for p in (7, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83, 163, 199, 239):
        if p % 4 == 3:
            assert quadratic_forms_class_number(p) == brute_forms(-p)
            assert relative_class_number_exact(FieldSpec(p, (p - 1) // 2)) == quadratic_forms_class_number(p)


def test_orbit_representative_independence():
    for p, d in ((31, 1), (43, 3), (61, 5), (127, 7)):
        s = FieldSpec(p, d)
        assert relative_class_number_exact(s, representative=0) == relative_class_number_exact(s, representative=-1)


def test_orbits_cover_characters():
    for p in (31, 61, 113):
        for d in odd_divisors(p - 1):
            s = FieldSpec(p, d)
            assert sum(euler_phi(e) for _, e in galois_orbits(s)) == s.m // 2


def test_float_interval_contains_exact():
    for p in (23, 31, 43, 61, 101):
        for d in odd_divisors(p - 1):
            s = FieldSpec(p, d)
            h = relative_class_number_exact(s)
            f = relative_class_number_float(s)
            assert f.contains(h), (p, d)


def test_float_width_for_golden():
    f = relative_class_number_float(FieldSpec(23, 1))
    assert f.contains(3) and f.width() < 1e-3


def test_high_precision_float():
    f = relative_class_number_float(FieldSpec(127, 7), prec=120)
    assert f.contains(200135)
    assert f.abs_error < mpmath.mpf(10) ** -20


def test_bounds():
    for p in (7, 23, 31, 43, 127):
        for d in odd_divisors(p - 1):
            s = FieldSpec(p, d)
            h = relative_class_number_exact(s)
            assert h <= hminus_amgm_bound(s) * (1 + 1e-12)
            for v in specialized_bounds(s).values():
                assert hminus_amgm_bound(s) <= v * (1 + 1e-12)


def test_orbit_cap():
    with pytest.raises(ResourceLimit):
        relative_class_number_exact(FieldSpec(1009, 1), orbit_cap=100)


def test_compute_float_only():
    res = compute(FieldSpec(8191, 13), exact=False)
    assert res.exact is None
    assert res.float.value > 0
