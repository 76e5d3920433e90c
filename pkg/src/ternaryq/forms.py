"""Ternary quadratic forms over the rationals.

A general form is diagonalized by completing squares; a diagonal form is then
rescaled to squarefree, pairwise coprime integer coefficients.  The rescaling
is recorded exactly so values can be transported back and forth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import is_squarefree, squarefree_split
from .errors import DegenerateForm

Matrix = tuple  # 3x3 tuple of tuples of Fraction


def _fr(v) -> Fraction:
    if isinstance(v, str):
        return Fraction(v.strip())
    return Fraction(v)


@dataclass(frozen=True)
class DiagonalForm:
    a: Fraction
    b: Fraction
    c: Fraction

    def __init__(self, a, b, c):
        a, b, c = _fr(a), _fr(b), _fr(c)
        if a == 0 or b == 0 or c == 0:
            raise DegenerateForm("diagonal coefficients must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def coeffs(self) -> tuple:
        return (self.a, self.b, self.c)

    def __call__(self, x, y, z) -> Fraction:
        return self.a * _fr(x)**2 + self.b * _fr(y)**2 + self.c * _fr(z)**2

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.coeffs)

    def is_positive(self) -> bool:
        return all(v > 0 for v in self.coeffs)

    def is_negative(self) -> bool:
        return all(v < 0 for v in self.coeffs)

    def is_normalized(self) -> bool:
        if not self.is_integral():
            return False
        a, b, c = (int(v) for v in self.coeffs)
        return (all(is_squarefree(v) for v in (a, b, c))
                and gcd(a, b) == gcd(a, c) == gcd(b, c) == 1)

    def permuted(self, order) -> "DiagonalForm":
        co = self.coeffs
        return DiagonalForm(*(co[i] for i in order))

    def __repr__(self):
        return f"DiagonalForm({self.a}, {self.b}, {self.c})"


def _det3(m) -> Fraction:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


@dataclass(frozen=True)
class TernaryForm:
    """q11 x^2 + q22 y^2 + q33 z^2 + q12 xy + q13 xz + q23 yz."""

    q11: Fraction
    q22: Fraction
    q33: Fraction
    q12: Fraction
    q13: Fraction
    q23: Fraction

    def __init__(self, q11, q22, q33, q12=0, q13=0, q23=0):
        vals = dict(q11=q11, q22=q22, q33=q33, q12=q12, q13=q13, q23=q23)
        for k, v in vals.items():
            object.__setattr__(self, k, _fr(v))
        if _det3(self.matrix()) == 0:
            raise DegenerateForm("form has zero determinant")

    @classmethod
    def from_diagonal(cls, f: DiagonalForm) -> "TernaryForm":
        return cls(f.a, f.b, f.c)

    @classmethod
    def from_matrix(cls, m) -> "TernaryForm":
        return cls(m[0][0], m[1][1], m[2][2],
                   2 * m[0][1], 2 * m[0][2], 2 * m[1][2])

    def matrix(self) -> Matrix:
        h = Fraction(1, 2)
        return ((self.q11, h * self.q12, h * self.q13),
                (h * self.q12, self.q22, h * self.q23),
                (h * self.q13, h * self.q23, self.q33))

    def determinant(self) -> Fraction:
        return _det3(self.matrix())

    def __call__(self, x, y, z) -> Fraction:
        x, y, z = _fr(x), _fr(y), _fr(z)
        return (self.q11 * x * x + self.q22 * y * y + self.q33 * z * z
                + self.q12 * x * y + self.q13 * x * z + self.q23 * y * z)


def evaluate(f, x, y, z) -> Fraction:
    return f(x, y, z)


def _matmul(A, B):
    return tuple(tuple(sum((A[i][k] * B[k][j] for k in range(3)), Fraction(0))
                       for j in range(3)) for i in range(3))


def _transpose(A):
    return tuple(tuple(A[j][i] for j in range(3)) for i in range(3))


def _identity():
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(3))
                 for i in range(3))


def apply_transform(T, v) -> tuple:
    v = [_fr(t) for t in v]
    return tuple(sum((T[i][j] * v[j] for j in range(3)), Fraction(0))
                 for i in range(3))


def diagonalize(Q: TernaryForm) -> tuple:
    """Return (DiagonalForm, T) with Q(T v) equal to the diagonal form at v.

    Completes squares pivot by pivot.  A zero pivot is repaired by the
    substitution x_k = u + v, x_j = u - v when that produces a nonzero
    square term, otherwise by swapping in a later variable.
    """
    M = Q.matrix()
    T = _identity()
    for k in range(3):
        if M[k][k] == 0:
            P = None
            for j in range(k + 1, 3):
                if M[k][j] != 0 and 2 * M[k][j] + M[j][j] != 0:
                    P = [list(r) for r in _identity()]
                    P[k][j], P[j][k], P[j][j] = Fraction(1), Fraction(1), Fraction(-1)
                    break
            if P is None:
                for j in range(k + 1, 3):
                    if M[j][j] != 0:
                        P = [list(r) for r in _identity()]
                        P[k][k] = P[j][j] = Fraction(0)
                        P[k][j] = P[j][k] = Fraction(1)
                        break
            if P is None:
                raise DegenerateForm("form is singular")
            P = tuple(tuple(r) for r in P)
            M = _matmul(_matmul(_transpose(P), M), P)
            T = _matmul(T, P)
        E = [list(r) for r in _identity()]
        for j in range(k + 1, 3):
            E[k][j] = -M[k][j] / M[k][k]
        E = tuple(tuple(r) for r in E)
        M = _matmul(_matmul(_transpose(E), M), E)
        T = _matmul(T, E)
    return DiagonalForm(M[0][0], M[1][1], M[2][2]), T


@dataclass(frozen=True)
class NormalizedForm:
    """Squarefree, pairwise coprime integer form plus its rescaling data.

    ``source(u1*x, u2*y, u3*z) == lam * form(x, y, z)`` holds identically.
    ``d`` is the common gcd and ``d1, d2, d3`` the pairwise gcds that were
    extracted from the squarefree cores.
    """

    a: int
    b: int
    c: int
    lam: Fraction
    u: tuple
    d: int = 1
    d1: int = 1
    d2: int = 1
    d3: int = 1

    @property
    def coeffs(self) -> tuple:
        return (self.a, self.b, self.c)

    @property
    def form(self) -> DiagonalForm:
        return DiagonalForm(self.a, self.b, self.c)

    def __call__(self, x, y, z) -> Fraction:
        return self.form(x, y, z)


@lru_cache(maxsize=4096)
def normalize(f: DiagonalForm) -> NormalizedForm:
    splits = [squarefree_split(v) for v in f.coeffs]
    a1, b1, c1 = (s.core for s in splits)
    r, s, t = (sp.root for sp in splits)

    d = gcd(gcd(a1, b1), c1)
    a2, b2, c2 = a1 // d, b1 // d, c1 // d

    d1, d2, d3 = gcd(a2, b2), gcd(a2, c2), gcd(b2, c2)
    assert gcd(d1, d2) == gcd(d1, d3) == gcd(d2, d3) == 1
    a3 = a2 // (d1 * d2)
    b3 = b2 // (d1 * d3)
    c3 = c2 // (d2 * d3)

    a, b, c = a3 * d3, b3 * d2, c3 * d1
    lam = Fraction(d * d1 * d2 * d3)
    u = (Fraction(d3) / r, Fraction(d2) / s, Fraction(d1) / t)

    for orig, new, ui in zip(f.coeffs, (a, b, c), u):
        assert orig * ui**2 == lam * new
    return NormalizedForm(a, b, c, lam, u, d, d1, d2, d3)
