"""Brute-force ground truth, kept free of number theory on purpose.

Nothing here calls the decision procedures' helpers except where a
cross-check compares against them explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm

from . import _kernels
from .decide import Witness, as_diagonal, is_represented
from .errors import ModulusTooLarge
from .local import DEFAULT_ENUM_BOUND, int_coeffs


@dataclass(frozen=True)
class ResidueReport:
    modulus: int
    represented: frozenset
    missing: frozenset


def residues_represented(f, modulus: int, bound: int = DEFAULT_ENUM_BOUND) -> ResidueReport:
    """Every residue a x^2 + b y^2 + c z^2 takes mod ``modulus``."""
    if modulus > bound:
        raise ModulusTooLarge(f"modulus {modulus} exceeds enumeration bound {bound}")
    a, b, c = int_coeffs(f)
    mask = _kernels.residue_mask(a, b, c, modulus)
    rep = frozenset(int(r) for r in range(modulus) if mask[r])
    return ResidueReport(modulus, rep, frozenset(range(modulus)) - rep)


def brute_rational(f, N, max_den: int = 24, max_num: int = 600):
    """First (x/t, y/t, z/t) with f = N, smallest t then smallest (x, y, z)."""
    f = as_diagonal(f)
    N = Fraction(N)
    den = lcm(f.a.denominator, f.b.denominator, f.c.denominator, N.denominator)
    A, B, C, P = (int(v * den) for v in (f.a, f.b, f.c, N))
    T, M = int(max_den), int(max_num)
    if _kernels.fits_int64(P * T * T, A * M * M, B * M * M, C * M * M):
        hit = _kernels.first_solution(A, B, C, P, T, M)
    else:
        hit = _slow_search(A, B, C, P, T, M)
    if hit is None:
        return None
    t, x, y, z = hit
    return Witness(Fraction(x, t), Fraction(y, t), Fraction(z, t), N)


def _slow_search(A, B, C, P, T, M):
    for t in range(1, T + 1):
        for x in range(M + 1):
            for y in range(M + 1):
                rem = P * t * t - A * x * x - B * y * y
                if rem % C:
                    continue
                z2 = rem // C
                if 0 <= z2 and isqrt(z2) ** 2 == z2 and isqrt(z2) <= M:
                    return t, x, y, isqrt(z2)
    return None


@dataclass
class CrosscheckReport:
    progression: object
    checked: list = field(default_factory=list)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self):
        return {"progression": self.progression.to_dict() if self.progression else None,
                "checked": len(self.checked), "ok": self.ok,
                "violations": [{"N": n, "reason": r} for n, r in self.violations]}


def crosscheck_progression(f, prog, count: int, max_den: int = 24,
                           max_num: int = 600) -> CrosscheckReport:
    """Confirm the first ``count`` members are neither decided representable
    nor found by brute search.  ``prog=None`` is a vacuous pass.
    """
    report = CrosscheckReport(prog)
    if prog is None:
        return report
    for N in prog.members(count):
        if N == 0:
            continue
        report.checked.append(N)
        if is_represented(f, N).represented:
            report.violations.append((N, "decided representable"))
        w = brute_rational(f, N, max_den, max_num)
        if w is not None:
            report.violations.append((N, f"witness {tuple(str(v) for v in w.vector)}"))
    return report


def congruence_solvable(f, target: int, modulus: int) -> bool:
    """Direct enumeration: is f = target (mod modulus) solvable at all?"""
    a, b, c = int_coeffs(f)
    return bool(_kernels.residue_mask(a, b, c, modulus)[target % modulus])


def primitive_residues(f, p: int, k: int) -> frozenset:
    """Residues mod p**k hit by some triple not all divisible by p."""
    a, b, c = int_coeffs(f)
    m = p**k
    mask = _kernels.residue_mask(a, b, c, m, p)
    return frozenset(int(r) for r in range(m) if mask[r])


def _gcd3(x, y, z):
    return gcd(gcd(x, y), z)
