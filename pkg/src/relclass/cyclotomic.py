"""Exact arithmetic in Q(zeta_e) = Q[x] / Phi_e(x).

Elements are stored as ``phi(e)`` Fraction coefficients on the power basis.
Rational norms are resultants Res(Phi_e, f), computed multi-modularly: modulo
a prime q = 1 (mod e) the cyclotomic polynomial splits into linear factors,
so the resultant is the product of f at the primitive e-th roots of unity in
GF(q).  Residues are combined by CRT until the modulus exceeds twice a
rigorous size bound on the norm.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, log2, lcm, prod

import numpy as np

from .numtheory import divisors, euler_phi, factorize, is_prime


def _mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


@lru_cache(maxsize=256)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Phi_n(x) = prod_{k | n} (x**k - 1) ** mu(n/k); multiplications and exact
    divisions by the binomials x**k - 1 are both O(deg) recurrences.
    """
    poly = [1]
    ups = [k for k in divisors(n) if _mobius(n // k) == 1]
    downs = [k for k in divisors(n) if _mobius(n // k) == -1]
    for k in ups:
        # multiply by x^k - 1
        out = [0] * (len(poly) + k)
        for i, c in enumerate(poly):
            out[i + k] += c
            out[i] -= c
        poly = out
    for k in downs:
        # divide by x^k - 1: q_i = q_{i+k} - f_{i+k} ... solved top-down
        deg = len(poly) - 1
        q = [0] * (deg - k + 1)
        rem = list(poly)
        for i in range(deg, k - 1, -1):
            c = rem[i]
            if c:
                q[i - k] = c
                rem[i] = 0
                rem[i - k] += c
        assert not any(rem), "non-exact cyclotomic division"
        poly = q
    return tuple(poly)


def _reduce(coeffs: list, e: int) -> list:
    """Reduce a coefficient list (any length) modulo the monic Phi_e."""
    phi = cyclotomic_poly(e)
    deg = len(phi) - 1
    sparse = [(i, c) for i, c in enumerate(phi[:-1]) if c]
    c = list(coeffs)
    for top in range(len(c) - 1, deg - 1, -1):
        lead = c[top]
        if lead:
            c[top] = 0
            base = top - deg
            for i, pc in sparse:
                c[base + i] -= lead * pc
    c = c[:deg] + [0] * (deg - len(c))
    return c


class CyclotomicElement:
    """An element of Q(zeta_e) with exact rational coefficients."""

    __slots__ = ("e", "coeffs")

    def __init__(self, e: int, coeffs, reduce: bool = True):
        if e < 1:
            raise ValueError("order must be positive")
        self.e = e
        cs = list(coeffs)
        if not all(isinstance(c, int) for c in cs):
            cs = [Fraction(c) for c in cs]
        if reduce:
            cs = _reduce(cs, e)
        elif len(cs) != self.degree:
            raise ValueError("unreduced coefficient list has the wrong length")
        # reduce in ints when possible, convert once
        self.coeffs = tuple(Fraction(c) for c in cs)

    @property
    def degree(self) -> int:
        return euler_phi(self.e)

    @classmethod
    def from_exponents(cls, e: int, weights: dict) -> CyclotomicElement:
        """sum_k weights[k] * zeta_e**k."""
        full = [0] * e
        for k, w in weights.items():
            full[k % e] += w
        return cls(e, full)

    @classmethod
    def rational(cls, e: int, c) -> CyclotomicElement:
        return cls(e, [c])

    def _check(self, other: CyclotomicElement) -> None:
        if other.e != self.e:
            raise ValueError("elements live in different cyclotomic fields")

    def __eq__(self, other):
        if isinstance(other, CyclotomicElement):
            return self.e == other.e and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.e, self.coeffs))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicElement.rational(self.e, other)
        self._check(other)
        return CyclotomicElement(self.e, [a + b for a, b in zip(self.coeffs, other.coeffs)], reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement(self.e, [-a for a in self.coeffs], reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement(self.e, [a * other for a in self.coeffs], reduce=False)
        self._check(other)
        out = [Fraction(0)] * (2 * self.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return CyclotomicElement(self.e, out)

    __rmul__ = __mul__

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def galois(self, t: int) -> CyclotomicElement:
        """Apply sigma_t : zeta -> zeta**t (t coprime to e)."""
        if gcd(t, self.e) != 1:
            raise ValueError(f"{t} is not a unit mod {self.e}")
        full = [Fraction(0)] * self.e
        for i, a in enumerate(self.coeffs):
            if a:
                full[i * t % self.e] += a
        return CyclotomicElement(self.e, full)

    def conjugate(self) -> CyclotomicElement:
        return self.galois(-1 % self.e if self.e > 1 else 1)

    def to_complex(self) -> complex:
        z = np.exp(2j * np.pi * np.arange(self.degree) / self.e)
        return complex(np.dot(np.array([float(c) for c in self.coeffs]), z))

    def norm(self) -> Fraction:
        """N_{Q(zeta_e)/Q}(self) as an exact rational."""
        den = lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1
        ints = [int(c * den) for c in self.coeffs]
        return Fraction(integer_norm(ints, self.e), den**self.degree)

    def __repr__(self):
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"CyclotomicElement(e={self.e}, {' + '.join(terms) or '0'})"


def norm_log2_bound(ints: list, e: int) -> float:
    """log2 of an upper bound for |Res(Phi_e, f)|, f of degree < e.

    Parseval over all e-th roots of unity with AM-GM over the phi(e)
    primitive ones: |N|**2 <= (e * ||f||_2**2 / phi(e)) ** phi(e).
    """
    sq = sum(c * c for c in ints)
    if sq == 0:
        return 0.0
    phi = euler_phi(e)
    return 0.5 * phi * (log2(sq) + log2(e) - log2(phi))


def _split_primes(e: int, start_bits: int = 30):
    """Primes q = 1 (mod e) below 2**31, ascending from about 2**start_bits."""
    k = max(1, (1 << start_bits) // e)
    while True:
        q = k * e + 1
        if q >= 1 << 31:
            raise RuntimeError("ran out of word-size split primes")
        if is_prime(q):
            yield q
        k += 1


def _primitive_root_of_unity(e: int, q: int) -> int:
    qs = list(factorize(e))
    for a in range(2, q):
        z = pow(a, (q - 1) // e, q)
        if all(pow(z, e // r, q) != 1 for r in qs):
            return z
    raise RuntimeError("no primitive root of unity found")


def _norm_mod(ints: list, e: int, q: int) -> int:
    z = _primitive_root_of_unity(e, q)
    units = [t for t in range(1, e + 1) if gcd(t, e) == 1]
    roots = np.array([pow(z, t, q) for t in units], dtype=np.int64)
    acc = np.zeros(len(roots), dtype=np.int64)
    for c in reversed(ints):
        acc = (acc * roots + (c % q)) % q
    out = 1
    for v in acc.tolist():
        out = out * v % q
    return out


def integer_norm(ints: list, e: int) -> int:
    """Res(Phi_e, sum ints[i] x**i) for an integer coefficient list."""
    if e == 1 or len(ints) == 0:
        c = ints[0] if ints else 0
        return c ** euler_phi(e)
    if not any(ints):
        return 0
    bits = norm_log2_bound(ints, e) + 2
    residue, modulus = 0, 1
    for q in _split_primes(e):
        r = _norm_mod(ints, e, q)
        # incremental CRT
        t = (r - residue) * pow(modulus, -1, q) % q
        residue += modulus * t
        modulus *= q
        if log2(modulus) > bits:
            break
    if residue > modulus // 2:
        residue -= modulus
    return residue


def norm_by_embeddings(elem: CyclotomicElement) -> complex:
    """Floating product over complex embeddings; test oracle only."""
    units = [t for t in range(1, elem.e + 1) if gcd(t, elem.e) == 1]
    cs = np.array([float(c) for c in elem.coeffs])
    vals = [np.dot(cs, np.exp(2j * np.pi * t * np.arange(len(cs)) / elem.e)) for t in units]
    return complex(prod(vals))
