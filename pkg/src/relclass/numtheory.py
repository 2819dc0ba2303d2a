"""Primes, primitive roots, discrete logarithms and the subgroups H_d of (Z/pZ)*."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt

import numpy as np

from .errors import InvalidInput, ResourceLimit

MAX_TABLE_PRIME = 2**31

# Deterministic for n < 3.3e24, which covers 64-bit inputs.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    t, s = n - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, t, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; fine for n <= 2**31."""
    out: dict[int, int] = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    ds = [1]
    for q, e in factorize(n).items():
        ds = [x * q**k for x in ds for k in range(e + 1)]
    return sorted(ds)


def odd_divisors(n: int) -> list[int]:
    if n < 1:
        raise InvalidInput(f"odd_divisors needs n >= 1, got {n}")
    while n % 2 == 0:
        n //= 2
    return divisors(n)


def euler_phi(n: int) -> int:
    out = n
    for q in factorize(n):
        out = out // q * (q - 1)
    return out


def multiplicative_order(a: int, n: int) -> int:
    a %= n
    order = euler_phi(n)
    for q in factorize(order):
        while order % q == 0 and pow(a, order // q, n) == 1:
            order //= q
    return order


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")


def primitive_root(p: int) -> int:
    """Least primitive root modulo the prime ``p``."""
    _require_prime(p)
    if p == 2:
        return 1
    qs = list(factorize(p - 1))
    g = 2
    while any(pow(g, (p - 1) // q, p) == 1 for q in qs):
        g += 1
    return g


def mersenne_exponent(p: int) -> int | None:
    """Return d with p = 2**d - 1, or None."""
    n = p + 1
    if n < 4 or n & (n - 1):
        return None
    return n.bit_length() - 1


@dataclass(frozen=True, eq=False)
class PrimeModulus:
    """An odd prime with its least primitive root and index tables.

    ``powers[k] = g**k mod p`` and ``dlog[a] = k`` for ``a = g**k``; ``dlog[0]``
    is a sentinel of -1.
    """

    p: int
    g: int = field(init=False)
    powers: np.ndarray = field(init=False, repr=False)
    dlog: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        p = self.p
        if p < 3 or not is_prime(p):
            raise InvalidInput(f"modulus must be an odd prime, got {p}")
        if p > MAX_TABLE_PRIME:
            raise ResourceLimit(f"p = {p} exceeds the discrete-log table limit 2**31")
        g = primitive_root(p)
        powers = np.empty(p - 1, dtype=np.int64)
        x = 1
        for k in range(p - 1):
            powers[k] = x
            x = x * g % p
        dlog = np.full(p, -1, dtype=np.int64)
        dlog[powers] = np.arange(p - 1, dtype=np.int64)
        powers.flags.writeable = False
        dlog.flags.writeable = False
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "powers", powers)
        object.__setattr__(self, "dlog", dlog)

    def index(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise InvalidInput(f"{a} is not a unit mod {self.p}")
        return int(self.dlog[a])


@lru_cache(maxsize=64)
def prime_modulus(p: int) -> PrimeModulus:
    return PrimeModulus(p)


def check_pd(p: int, d: int) -> None:
    _require_prime(p)
    if p < 3:
        raise InvalidInput("p must be an odd prime")
    if d < 1 or d % 2 == 0 or (p - 1) % d:
        raise InvalidInput(f"d = {d} is not an odd divisor of p - 1 = {p - 1}")


@dataclass(frozen=True)
class SubgroupH:
    p: int
    d: int
    elements: tuple[int, ...]

    @property
    def m(self) -> int:
        return (self.p - 1) // self.d

    def __contains__(self, a: int) -> bool:
        return a % self.p in self.elements


def subgroup_Hd(p: int, d: int) -> SubgroupH:
    """The unique subgroup of order d, as ``{x : x**d = 1 mod p}``."""
    check_pd(p, d)
    return _subgroup(p, d)


@lru_cache(maxsize=4096)
def _subgroup(p: int, d: int) -> SubgroupH:
    # x = g^((p-1)/d) generates the subgroup for any primitive root g
    gen = pow(primitive_root(p), (p - 1) // d, p)
    elems, x = [], 1
    for _ in range(d):
        elems.append(x)
        x = x * gen % p
    return SubgroupH(p, d, tuple(sorted(elems)))


def subgroup_Hd_by_roots(p: int, d: int) -> SubgroupH:
    """{x : x**d = 1 mod p} by exhaustion; independent cross-check."""
    check_pd(p, d)
    return SubgroupH(p, d, tuple(x for x in range(1, p) if pow(x, d, p) == 1))


def subgroup_with_minus_one(p: int, d: int) -> tuple[int, ...]:
    """H' = <-1, H_d>, of order 2d."""
    H = subgroup_Hd(p, d).elements
    return tuple(sorted(set(H) | {p - h for h in H}))


def rho_prime(lam: int, p: int) -> int:
    r = lam % p
    if r == 0:
        raise InvalidInput("lambda must be a unit mod p")
    return r


def rho(lam: int, p: int) -> int:
    """min{ r*s : r, s >= 1, r = lam*s (mod p) }.

    For each s the least admissible r is (lam*s mod p); once s exceeds the
    running minimum no product can beat it.
    """
    lam %= p
    if lam == 0:
        raise InvalidInput("lambda must be a unit mod p")
    best = lam
    s = 2
    while s < best:
        r = lam * s % p
        if r and r * s < best:
            best = r * s
        s += 1
    return best


def theta(H_prime, p: int) -> int:
    nontrivial = [lam for lam in H_prime if lam % p != 1]
    if not nontrivial:
        raise InvalidInput("H' must be non-trivial")
    return min(rho(lam, p) for lam in nontrivial)


def primes_up_to(n: int) -> np.ndarray:
    """Sieve of Eratosthenes, returning an int64 array."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for q in range(3, isqrt(n) + 1, 2):
        if sieve[q]:
            sieve[q * q :: 2 * q] = False
    return np.flatnonzero(sieve).astype(np.int64)
