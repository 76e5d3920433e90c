"""Congruence-level machinery for a normalized diagonal form.

Everything here assumes squarefree, pairwise coprime integer coefficients.
Odd primes dividing a coefficient and the prime 2 are the only places where
a squarefree target can fail to be represented; the checks below decide
each place with finitely many symbol evaluations or residue lookups.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .arith import factorize, inv_mod, legendre, odd_prime_factors
from .errors import InvalidModulus, ModulusTooLarge, NotLiftable, PreconditionViolated

DEFAULT_ENUM_BOUND = 10**5


def int_coeffs(f) -> tuple:
    """Integer coefficient triple of a normalized form, diagonal form or tuple."""
    co = f.coeffs if hasattr(f, "coeffs") else tuple(f)
    out = []
    for v in co:
        if int(v) != v:
            raise PreconditionViolated(f"coefficient {v} is not an integer")
        out.append(int(v))
    return tuple(out)


def _rotations(co):
    """(index, own coefficient, the other two) for each slot."""
    a, b, c = co
    return ((0, a, b, c), (1, b, a, c), (2, c, a, b))


@dataclass(frozen=True)
class TwoAdicClass:
    """Residues mod 8 (all coefficients odd) or mod 16 (one even).

    ``residue`` is the single excluded class, or None when every class is
    represented.
    """

    modulus: int
    residue: int | None = None

    @property
    def is_complete(self) -> bool:
        return self.residue is None

    @property
    def kind(self) -> str:
        if self.residue is None:
            return "complete"
        return f"excluded_mod{self.modulus}"

    def excludes(self, n: int) -> bool:
        return self.residue is not None and n % self.modulus == self.residue


def two_adic_classify(f) -> TwoAdicClass:
    a, b, c = int_coeffs(f)
    evens = [v for v in (a, b, c) if v % 2 == 0]
    if not evens:
        if a % 4 == b % 4 == c % 4:
            return TwoAdicClass(8, -a * b * c % 8)
        return TwoAdicClass(8)
    if len(evens) > 1:
        raise PreconditionViolated("coefficients are not pairwise coprime")
    e = evens[0]
    o1, o2 = [v for v in (a, b, c) if v % 2]
    if (o1 + o2 - e) % 8 == 0 or (o1 + o2 - 2 * e) % 8 == 0:
        return TwoAdicClass(16, -a * b * c % 16)
    return TwoAdicClass(16)


@dataclass(frozen=True)
class PrimeObstruction:
    """Odd p dividing one coefficient with (-product of the others / p) = -1.

    Then n*p is not represented for every unit n in ``excluded_unit_residues``.
    """

    p: int
    slot: int
    symbol_value: int
    excluded_unit_residues: tuple

    def excludes(self, N: int) -> bool:
        return N % self.p == 0 and (N // self.p) % self.p in self.excluded_unit_residues


def prime_obstructions(f) -> list:
    out = []
    for slot, own, o1, o2 in _rotations(int_coeffs(f)):
        for p in odd_prime_factors(own):
            s = legendre(-o1 * o2, p)
            if s == -1:
                cofactor = own // p
                bad = tuple(n for n in range(1, p) if legendre(cofactor * n, p) == -1)
                out.append(PrimeObstruction(p, slot, s, bad))
    out.sort(key=lambda o: (o.p, o.slot))
    return out


@dataclass(frozen=True)
class ModSolution:
    """Residues x, y, z with f(x, y, z) = target (mod modulus).

    ``target`` is kept as the integer asked about, not its residue, so
    repeated lifting keeps converging to the same integer.
    """

    modulus: int
    x: int
    y: int
    z: int
    target: int

    @property
    def vector(self) -> tuple:
        return (self.x, self.y, self.z)

    def holds(self, f) -> bool:
        a, b, c = int_coeffs(f)
        return (a * self.x**2 + b * self.y**2 + c * self.z**2 - self.target) % self.modulus == 0


def prime_power(m: int):
    """(p, k) with m = p**k, or None."""
    if m < 2:
        return None
    fac = factorize(m).factors
    return fac[0] if len(fac) == 1 else None


def represents_mod(f, n: int, modulus: int, primitive: bool = True,
                   bound: int = DEFAULT_ENUM_BOUND):
    """A solution of f = n (mod modulus) by full enumeration, or None.

    With ``primitive`` the modulus must be a prime power p**k and the
    solution has some coordinate prime to p.
    """
    if modulus > bound:
        raise ModulusTooLarge(f"modulus {modulus} exceeds enumeration bound {bound}")
    a, b, c = int_coeffs(f)
    p = 0
    if primitive:
        pp = prime_power(modulus)
        if pp is None:
            raise InvalidModulus(f"primitive solutions need a prime-power modulus, got {modulus}")
        p = pp[0]
    px, py, ux, uy = _kernels.pair_table(a, b, modulus, p)
    for z in range(modulus):
        r = (n - c * z * z) % modulus
        if not primitive or z % p:
            if px[r] >= 0:
                return ModSolution(modulus, int(px[r]), int(py[r]), z, n)
        elif ux[r] >= 0:
            return ModSolution(modulus, int(ux[r]), int(uy[r]), z, n)
    return None


def lift_solution(f, sol: ModSolution, p: int) -> ModSolution:
    """Refine a solution mod p**m to one mod p**(m+1) by one coordinate shift."""
    co = int_coeffs(f)
    pk = prime_power(sol.modulus)
    if pk is None or pk[0] != p:
        raise InvalidModulus(f"modulus {sol.modulus} is not a power of {p}")
    m = pk[1]
    M, M1 = sol.modulus, sol.modulus * p
    if not sol.holds(co):
        raise PreconditionViolated("seed is not a solution")
    vec = list(sol.vector)
    n = sol.target
    k = (sum(ci * v * v for ci, v in zip(co, vec)) - n) // M

    def done(v):
        out = ModSolution(M1, *(t % M1 for t in v), n)
        assert out.holds(co)
        return out

    if k % p == 0:
        return done(vec)

    if p == 2:
        if n % 4 == 0:
            raise NotLiftable("targets divisible by 4 are reduced by scaling first")
        for i, (ci, v) in enumerate(zip(co, vec)):
            if v % 2 == 0:
                continue
            if ci % 2 and m >= 3:
                vec[i] = v + k * 2 ** (m - 1)
                return done(vec)
            if ci % 2 == 0 and m >= 4:
                vec[i] = v + k * 2 ** (m - 2)
                return done(vec)
        raise NotLiftable(f"no odd coordinate can absorb the correction mod {M1}")

    for i, (ci, v) in enumerate(zip(co, vec)):
        if ci % p and v % p:
            vec[i] = v - inv_mod(2 * ci * v, p) * k % p * M
            return done(vec)
    for i, (ci, v) in enumerate(zip(co, vec)):
        if ci % p == 0 and v % p:
            if m >= 2:
                vec[i] = v - inv_mod(2 * (ci // p) * v, p) * k % p * (M // p)
                return done(vec)
            # mod p the seed says nothing about c' z^2 mod p; search directly
            rest = sum(cj * w * w for j, (cj, w) in enumerate(zip(co, vec)) if j != i)
            for w in range(M1):
                if w % p and (rest + ci * w * w - n) % M1 == 0:
                    vec[i] = w
                    return done(vec)
    raise NotLiftable(f"no solution mod {M1} extends the seed mod {M}")


def locally_solvable(f, n: int, p: int) -> bool:
    """Is the squarefree integer n represented by f over the p-adic integers?"""
    co = int_coeffs(f)
    if p == 2:
        return not two_adic_classify(co).excludes(n)
    for _, own, o1, o2 in _rotations(co):
        if own % p == 0:
            if n % p:
                return True
            return legendre(-o1 * o2, p) == 1 or legendre(n * own // (p * p), p) == 1
    return True
