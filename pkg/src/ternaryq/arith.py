"""Exact integer and modular arithmetic.

Rationals are :class:`fractions.Fraction` throughout; the helpers here only
ever touch Python ints, so nothing overflows.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, prod

import numpy as np

from .errors import (FactorLimitExceeded, InvalidModulus, ModuliNotCoprime,
                     NonResidue, NotInvertible, PreconditionViolated)

Rat = Fraction

DEFAULT_TRIAL_LIMIT = 10**6
TRIAL_LIMIT_ENV = "TERNARYQ_TRIAL_LIMIT"

# Miller-Rabin with these bases is exact below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_EXACT_BELOW = 3317044064679887385961981


_trial_limit_override = None


def set_trial_limit(limit: int | None) -> None:
    """Process-wide trial-division bound; None restores env/default lookup."""
    global _trial_limit_override
    _trial_limit_override = limit


def trial_limit() -> int:
    env = os.environ.get(TRIAL_LIMIT_ENV)
    if env:
        return int(env)
    if _trial_limit_override is not None:
        return _trial_limit_override
    return DEFAULT_TRIAL_LIMIT


@lru_cache(maxsize=8)
def _primes_upto(limit: int) -> tuple:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return tuple(int(p) for p in np.flatnonzero(sieve))


def _miller_rabin(n: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality test; raises beyond the certified range."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < 43 * 43:
        return True
    if n >= _MR_EXACT_BELOW:
        raise FactorLimitExceeded(f"primality of {n} cannot be certified")
    return _miller_rabin(n)


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple  # ((prime, exponent), ...) with primes increasing

    def value(self) -> int:
        return self.sign * prod(p**e for p, e in self.factors)

    def primes(self) -> list:
        return [p for p, _ in self.factors]


def factorize(n: int, limit: int | None = None) -> Factorization:
    """Prime factorization by trial division plus a certified cofactor test."""
    if n == 0:
        raise PreconditionViolated("cannot factorize 0")
    limit = trial_limit() if limit is None else limit
    sign = -1 if n < 0 else 1
    n = abs(n)
    factors = []
    for p in _primes_upto(max(limit, 2)):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    else:
        # trial primes exhausted with a cofactor possibly composite
        if n > 1 and n >= limit * limit:
            if n >= _MR_EXACT_BELOW or not _miller_rabin(n):
                raise FactorLimitExceeded(
                    f"cofactor {n} is unresolved above trial limit {limit}")
    if n > 1:
        factors.append((n, 1))
    return Factorization(sign, tuple(factors))


def squarefree_part(n: int) -> int:
    """Signed squarefree core of a nonzero integer."""
    f = factorize(n)
    return f.sign * prod(p for p, e in f.factors if e % 2)


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factorize(n).factors)


@dataclass(frozen=True)
class SquarefreeSplit:
    core: int
    root: Fraction

    def value(self) -> Fraction:
        return self.core * self.root**2


def squarefree_split(N) -> SquarefreeSplit:
    """Write N = core * root**2 with core a signed squarefree integer, root > 0."""
    N = Fraction(N)
    if N == 0:
        raise PreconditionViolated("zero has no squarefree part")
    m = N.numerator * N.denominator
    f = factorize(m)
    core = f.sign * prod(p for p, e in f.factors if e % 2)
    s = prod(p ** (e // 2) for p, e in f.factors)
    return SquarefreeSplit(core, Fraction(s, N.denominator))


def inv_mod(a: int, m: int) -> int:
    if m < 2:
        raise InvalidModulus(f"modulus must be >= 2, got {m}")
    if gcd(a, m) != 1:
        raise NotInvertible(f"{a} is not invertible mod {m}")
    return pow(a, -1, m)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion; 0 when p divides a."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise InvalidModulus(f"{p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def jacobi(m: int, n: int) -> int:
    """Jacobi symbol (m/n) for odd n >= 1, via reciprocity (no factoring)."""
    if n < 1 or n % 2 == 0:
        raise InvalidModulus(f"Jacobi symbol needs odd n >= 1, got {n}")
    m %= n
    acc = 1
    while m:
        while m % 2 == 0:
            m //= 2
            if n % 8 in (3, 5):
                acc = -acc
        m, n = n, m
        if m % 4 == 3 and n % 4 == 3:
            acc = -acc
        m %= n
    return acc if n == 1 else 0


def sqrt_mod(a: int, p: int) -> int:
    """Square root of a modulo an odd prime p (Tonelli-Shanks).

    Returns the smaller of the two roots.
    """
    a %= p
    if legendre(a, p) == -1:
        raise NonResidue(f"{a} is not a square mod {p}")
    if a == 0:
        return 0
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        r = pow(a, (p + 1) // 4, p)
    else:
        z = 2
        while legendre(z, p) != -1:
            z += 1
        c = pow(z, q, p)
        r = pow(a, (q + 1) // 2, p)
        t = pow(a, q, p)
        m = s
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            r = r * b % p
            c = b * b % p
            t = t * c % p
            m = i
    return min(r, p - r)


def crt(residues) -> tuple:
    """Combine [(r_i, m_i), ...] with pairwise coprime moduli into (r, M)."""
    r, M = 0, 1
    for ri, mi in residues:
        if gcd(M, mi) != 1:
            raise ModuliNotCoprime(f"modulus {mi} shares a factor with {M}")
        # r + M*t = ri (mod mi)
        t = (ri - r) * pow(M, -1, mi) % mi if mi > 1 else 0
        r, M = r + M * t, M * mi
    return r % M, M


def egcd(a: int, b: int) -> tuple:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def odd_prime_factors(n: int) -> list:
    return [p for p in factorize(n).primes() if p != 2]
