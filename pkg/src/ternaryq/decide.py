"""Representability decisions and explicit witnesses.

``is_represented`` is the exact rational criterion: after normalizing the
form and stripping squares from the target it checks the sign, the 2-adic
class and one pair of Legendre symbols per odd prime shared by the target
and a coefficient.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

import numpy as np

from . import _kernels
from .arith import egcd, is_squarefree, legendre, odd_prime_factors, squarefree_split
from .errors import NoSolution, PreconditionViolated
from .forms import DiagonalForm, normalize
from .local import int_coeffs, represents_mod, two_adic_classify


def as_diagonal(f) -> DiagonalForm:
    if isinstance(f, DiagonalForm):
        return f
    if hasattr(f, "form"):
        return f.form
    return DiagonalForm(*f)


# ------------------------------------------------------------------ verdicts

@dataclass(frozen=True)
class SignMismatch:
    kind = "sign"

    def to_dict(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class TwoAdicExclusion:
    modulus: int
    residue: int
    kind = "two_adic"

    def to_dict(self):
        return {"kind": self.kind, "modulus": self.modulus, "residue": self.residue}


@dataclass(frozen=True)
class PrimeCondition:
    """Both (-product of the other coefficients / p) and (n*coef/p^2 / p) are -1."""

    p: int
    slot: int
    other_symbol: int
    target_symbol: int
    kind = "prime"

    def to_dict(self):
        return {"kind": self.kind, "p": self.p, "slot": self.slot,
                "other_symbol": self.other_symbol,
                "target_symbol": self.target_symbol}


@dataclass(frozen=True)
class Verdict:
    represented: bool
    failures: tuple
    core: int
    lam: Fraction

    def __bool__(self):
        return self.represented

    def to_dict(self):
        return {"represented": self.represented,
                "failures": [f.to_dict() for f in self.failures]}


def is_represented(f, N) -> Verdict:
    f = as_diagonal(f)
    N = Fraction(N)
    if N == 0:
        raise PreconditionViolated("target must be nonzero")
    nf = normalize(f)
    n = squarefree_split(N / nf.lam).core
    co = nf.coeffs
    failures = []

    if (f.is_positive() and n < 0) or (f.is_negative() and n > 0):
        failures.append(SignMismatch())

    cls = two_adic_classify(co)
    if cls.excludes(n):
        failures.append(TwoAdicExclusion(cls.modulus, cls.residue))

    a, b, c = co
    for slot, own, o1, o2 in ((0, a, b, c), (1, b, a, c), (2, c, a, b)):
        for p in odd_prime_factors(own):
            if n % p:
                continue
            unit = n * own // (p * p)
            assert unit % p != 0
            s_other, s_target = legendre(-o1 * o2, p), legendre(unit, p)
            if s_other == -1 and s_target == -1:
                failures.append(PrimeCondition(p, slot, s_other, s_target))

    return Verdict(not failures, tuple(failures), n, nf.lam)


# -------------------------------------------------------------- progressions

@dataclass(frozen=True)
class Progression:
    residue: int
    modulus: int

    def __post_init__(self):
        if not 0 <= self.residue < self.modulus:
            raise PreconditionViolated("residue must lie in [0, modulus)")

    def members(self, count: int, start: int = 0) -> list:
        return [self.residue + k * self.modulus for k in range(start, start + count)]

    def __contains__(self, n) -> bool:
        return n % self.modulus == self.residue

    def to_dict(self):
        return {"residue": self.residue, "modulus": self.modulus}


def excluded_progressions(f) -> list:
    """Arithmetic progressions of positive integers that f never represents."""
    f = as_diagonal(f)
    if not f.is_positive():
        raise PreconditionViolated("excluded progressions need positive coefficients")
    nf = normalize(f)
    S = squarefree_split(f.a * f.b * f.c).core
    mod = 8 * nf.d1 * nf.d2 * nf.d3 * S * S
    progs = [Progression(-S % mod, mod)]
    if f.is_integral():
        abc = int(f.a * f.b * f.c)
        progs.append(Progression(-abc % (8 * abc * abc), 8 * abc * abc))
        if f.is_normalized() and abc % 2 == 0:
            progs.append(Progression(-abc % (4 * abc * abc), 4 * abc * abc))
    seen, out = set(), []
    for pr in progs:
        if pr not in seen:
            seen.add(pr)
            out.append(pr)
    return sorted(out, key=lambda pr: (pr.modulus, pr.residue))


# --------------------------------------------------- integral universality

@dataclass(frozen=True)
class IsotropicVector:
    x0: int
    y0: int
    z0: int

    @property
    def vector(self):
        return (self.x0, self.y0, self.z0)


@dataclass(frozen=True)
class Witness:
    x: Fraction
    y: Fraction
    z: Fraction
    target: Fraction

    @property
    def vector(self):
        return (self.x, self.y, self.z)

    def check(self, f) -> bool:
        return as_diagonal(f)(self.x, self.y, self.z) == self.target


def _mixed_normalized(f) -> tuple:
    try:
        co = int_coeffs(as_diagonal(f))
    except ValueError as e:
        raise PreconditionViolated(str(e)) from None
    a, b, c = co
    if not all(is_squarefree(v) for v in co) or not gcd(a, b) == gcd(a, c) == gcd(b, c) == 1:
        raise PreconditionViolated("coefficients must be squarefree and pairwise coprime")
    if all(v > 0 for v in co) or all(v < 0 for v in co):
        raise PreconditionViolated("coefficients must not all have the same sign")
    return co


def residue_conditions(f) -> list:
    """Odd primes p | coefficient where -(product of the other two) is not a square mod p."""
    a, b, c = int_coeffs(as_diagonal(f))
    bad = []
    for own, o1, o2 in ((a, b, c), (b, a, c), (c, a, b)):
        for p in odd_prime_factors(own):
            if legendre(-o1 * o2, p) != 1:
                bad.append(p)
    return sorted(bad)


def universal_over_Z(f) -> bool:
    """Does the mixed-sign normalized form represent every integer with integers?"""
    a, b, c = _mixed_normalized(f)
    if residue_conditions((a, b, c)):
        return False
    abc = a * b * c
    mod = 16 if abc % 2 == 0 else 8
    return represents_mod((a, b, c), -abc, mod, primitive=False) is not None


def legendre_isotropic(f) -> IsotropicVector:
    """Primitive nonzero integer zero of f, searched inside Holzer's box."""
    a, b, c = _mixed_normalized(f)
    bx, by, bz = isqrt(abs(b * c)), isqrt(abs(a * c)), isqrt(abs(a * b))
    for z in range(bz + 1):
        for y in range(by + 1):
            rem = -(b * y * y + c * z * z)
            if rem % a:
                continue
            x2 = rem // a
            if x2 < 0:
                continue
            x = isqrt(x2)
            if x * x != x2 or x > bx or (x, y, z) == (0, 0, 0):
                continue
            g = gcd(gcd(x, y), z)
            return IsotropicVector(x // g, y // g, z // g)
    raise NoSolution(f"{(a, b, c)} has no nontrivial zero")


def _unit_combination(A) -> tuple:
    """Integers (s0, s1, s2) with A . s = gcd(A), via two extended gcds."""
    g01, s, t = egcd(A[0], A[1])
    g, u, w = egcd(g01, A[2])
    return g, (u * s, u * t, w)


def witness_from_seeds(f, iso, aux, n: int, dot: int = 1) -> tuple:
    """Solve f(k*iso + aux) = n, using f(k*iso + aux) = 2*dot*k + f(aux)."""
    f = as_diagonal(f)
    a, b, c = int_coeffs(f)
    x0, y0, z0 = iso
    assert a * x0 * aux[0] + b * y0 * aux[1] + c * z0 * aux[2] == dot
    q = int(f(*aux))
    if (n - q) % (2 * dot):
        raise PreconditionViolated("seed has the wrong residue for this target")
    k = (n - q) // (2 * dot)
    return tuple(k * v0 + v1 for v0, v1 in zip(iso, aux))


def integer_witness(f, n: int) -> Witness:
    """Integers x, y, z with f(x, y, z) = n for a universal form."""
    f = as_diagonal(f)
    if not universal_over_Z(f):
        raise PreconditionViolated(f"{f} is not universal over the integers")
    co = int_coeffs(f)
    n = int(n)
    if n == 0:
        return Witness(Fraction(0), Fraction(0), Fraction(0), Fraction(0))
    has_even = any(v % 2 == 0 for v in co)
    if has_even and n % 4 == 0:
        w = integer_witness(f, n // 4)
        return Witness(2 * w.x, 2 * w.y, 2 * w.z, Fraction(n))

    iso = legendre_isotropic(f).vector
    a, b, c = co
    x0, y0, z0 = iso
    g, base = _unit_combination((a * x0, b * y0, c * z0))
    assert g == 1
    dot = 2 if has_even and n % 2 == 0 else 1
    base = tuple(dot * v for v in base)
    shifts = ((b * y0, -a * x0, 0), (c * z0, 0, -a * x0), (0, c * z0, -b * y0))
    for coefs in itertools.product((0, 1), repeat=3):
        aux = tuple(base[i] + sum(m * s[i] for m, s in zip(coefs, shifts))
                    for i in range(3))
        if (n - int(f(*aux))) % (2 * dot) == 0:
            sol = witness_from_seeds(f, iso, aux, n, dot)
            break
    else:  # pragma: no cover - excluded by the parity argument
        raise NoSolution(f"no parity-compatible seed for n={n}")
    sol = tuple(abs(v) for v in sol)
    assert f(*sol) == n
    return Witness(*(Fraction(v) for v in sol), Fraction(n))


# ------------------------------------------------------ rational witnesses

def cleared_equation(f, N) -> tuple:
    """Integers (A, B, C, P) with f = N  <=>  A x^2 + B y^2 + C z^2 = P t^2."""
    f = as_diagonal(f)
    vals = list(f.coeffs) + [Fraction(N)]
    L = lcm(*(v.denominator for v in vals))
    ints = [int(v * L) for v in vals]
    g = gcd(*ints)
    return tuple(v // g for v in ints)


def rational_witness(f, N, max_den: int = 24, max_num: int = 600):
    """Bounded search for rationals with f(x, y, z) = N.

    Candidates are (x/t, y/t, z/t) with 1 <= t <= max_den and
    0 <= x, y, z <= max_num; the smallest t wins, then the smallest (x, y, z).
    None only means nothing was found within the bounds.
    """
    N = Fraction(N)
    A, B, C, P = cleared_equation(f, N)
    M, T = int(max_num), int(max_den)
    if not _kernels.fits_int64(P * T * T, A * M * M, B * M * M, C * M * M):
        return _rational_witness_bigint(A, B, C, P, T, M, N)
    xs = np.arange(M + 1, dtype=np.int64)
    sq = xs * xs
    cz = C * sq  # strictly monotone in z, so each value names one z
    order = np.argsort(cz)
    cz_sorted = cz[order]
    for t in range(1, T + 1):
        rem = (P * t * t - A * sq[:, None] - B * sq[None, :]).ravel()
        pos = np.clip(np.searchsorted(cz_sorted, rem), 0, M)
        hit = np.flatnonzero(cz_sorted[pos] == rem)
        if len(hit):
            i = int(hit[0])
            x, y = divmod(i, M + 1)
            z = int(order[pos[i]])
            return Witness(Fraction(x, t), Fraction(y, t), Fraction(z, t), N)
    return None


def _rational_witness_bigint(A, B, C, P, T, M, N):
    czs = {C * z * z: z for z in range(M + 1)}
    for t in range(1, T + 1):
        Pt = P * t * t
        for x in range(M + 1):
            for y in range(M + 1):
                z = czs.get(Pt - A * x * x - B * y * y)
                if z is not None:
                    return Witness(Fraction(x, t), Fraction(y, t), Fraction(z, t), N)
    return None
