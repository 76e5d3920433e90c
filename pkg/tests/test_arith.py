from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ternaryq import arith
from ternaryq.arith import (crt, factorize, inv_mod, is_prime, jacobi, legendre,
                            sqrt_mod, squarefree_split)
from ternaryq.errors import (FactorLimitExceeded, InvalidModulus, ModuliNotCoprime,
                             NonResidue, NotInvertible)

SMALL_PRIMES = [p for p in range(3, 200) if all(p % d for d in range(2, p))]


def squares_mod(p):
    return {x * x % p for x in range(p)}


def legendre_by_enumeration(a, p):
    if a % p == 0:
        return 0
    return 1 if a % p in squares_mod(p) else -1


def jacobi_by_factoring(m, n):
    # product definition over the factorization of n
    out = 1
    for p, e in factorize(n).factors:
        out *= legendre_by_enumeration(m, p) ** e
    return out


def test_inv_mod():
    assert inv_mod(3, 7) == 5
    assert inv_mod(1, 9) == 1
    with pytest.raises(NotInvertible):
        inv_mod(4, 6)


@pytest.mark.parametrize("n, sign, factors", [
    (10, 1, ((2, 1), (5, 1))),
    (-1, -1, ()),
    (360, 1, ((2, 3), (3, 2), (5, 1))),
    (-98, -1, ((2, 1), (7, 2))),
])
def test_factorize_examples(n, sign, factors):
    f = factorize(n)
    assert (f.sign, f.factors) == (sign, factors)


def test_factorize_large_prime_cofactor():
    p = 1_000_000_007
    f = factorize(12 * p)
    assert f.factors == ((2, 2), (3, 1), (p, 1))


def test_factor_limit_exceeded():
    # product of two primes just above the trial bound
    n = 1009 * 1013
    with pytest.raises(FactorLimitExceeded):
        factorize(n, limit=100)
    assert factorize(n, limit=2000).factors == ((1009, 1), (1013, 1))


def test_trial_limit_env(monkeypatch):
    monkeypatch.setenv(arith.TRIAL_LIMIT_ENV, "100")
    with pytest.raises(FactorLimitExceeded):
        factorize(1009 * 1013)


@given(st.integers(min_value=-10**9, max_value=10**9).filter(bool))
def test_factorize_reconstructs(n):
    f = factorize(n)
    assert f.value() == n
    ps = f.primes()
    assert ps == sorted(ps) and len(set(ps)) == len(ps)
    assert all(is_prime(p) for p in ps)


@pytest.mark.parametrize("N, core, root", [
    (12, 3, Fraction(2)),
    (Fraction(9, 4), 1, Fraction(3, 2)),
    (-7, -7, Fraction(1)),
    (Fraction(-5, 12), -15, Fraction(1, 6)),
])
def test_squarefree_split_examples(N, core, root):
    s = squarefree_split(N)
    assert (s.core, s.root) == (core, root)


@given(st.fractions(min_value=-10**8, max_value=10**8, max_denominator=10**4).filter(bool))
def test_squarefree_split_reconstructs(N):
    s = squarefree_split(N)
    assert s.core * s.root**2 == N
    assert s.root > 0
    assert all(e == 1 for _, e in factorize(s.core).factors)


def test_squarefree_split_beyond_trial_bound():
    # 10^17 - 1 = 9 * 2071723 * 5363222357 leaves a composite cofactor
    with pytest.raises(FactorLimitExceeded):
        squarefree_split(-(10**17 - 1))


def test_legendre_examples():
    assert legendre(-1, 5) == 1
    assert legendre(1, 11) == 1
    # (-1)^((7-1)/2)
    assert legendre(-1, 7) == (-1) ** ((7 - 1) // 2) == -1
    assert legendre(14, 7) == 0
    for bad in (2, 9, 1, -3):
        with pytest.raises(InvalidModulus):
            legendre(1, bad)


def test_jacobi_examples():
    assert jacobi(-1, 5) == 1
    assert jacobi(17, 1) == 1
    # (2/n) = (-1)^((n^2-1)/8) at n = 15
    assert jacobi(2, 15) == (-1) ** ((15**2 - 1) // 8) == 1
    for bad in (0, -3, 8):
        with pytest.raises(InvalidModulus):
            jacobi(1, bad)


def test_jacobi_matches_legendre_on_primes():
    for p in SMALL_PRIMES:
        for a in range(p):
            assert jacobi(a, p) == legendre(a, p) == legendre_by_enumeration(a, p)


odd = st.integers(min_value=1, max_value=10**6).map(lambda k: 2 * k + 1)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), odd)
def test_jacobi_multiplicative(m, m2, n):
    assert jacobi(m * m2, n) == jacobi(m, n) * jacobi(m2, n)


@given(odd, odd)
def test_jacobi_reciprocity(m, n):
    if gcd(m, n) != 1:
        return
    assert jacobi(n, m) * jacobi(m, n) == (-1) ** ((n - 1) // 2 * ((m - 1) // 2))


@settings(max_examples=60)
@given(st.integers(-500, 500), st.integers(1, 2000).map(lambda k: 2 * k + 1))
def test_jacobi_is_factored_product(m, n):
    assert jacobi(m, n) == jacobi_by_factoring(m, n)


def test_sqrt_mod_examples():
    assert sqrt_mod(2, 7) in (3, 4)
    assert sqrt_mod(0, 13) == 0
    # squares mod 7 are {0, 1, 2, 4}
    assert squares_mod(7) == {0, 1, 2, 4}
    with pytest.raises(NonResidue):
        sqrt_mod(3, 7)


def test_sqrt_mod_counts():
    for p in [q for q in SMALL_PRIMES if q <= 100]:
        ok = 0
        for a in range(p):
            try:
                r = sqrt_mod(a, p)
            except NonResidue:
                continue
            assert 0 <= r < p and r * r % p == a
            ok += 1
        assert ok == (p + 1) // 2


def test_sqrt_mod_tonelli_branch():
    # p = 1 mod 8 exercises the general loop
    p = 998244353
    for a in (2, 3, 5, 10, 12345):
        if legendre(a, p) == 1:
            r = sqrt_mod(a, p)
            assert r * r % p == a


def test_crt():
    assert crt([(1, 3), (2, 5)]) == (7, 15)
    assert crt([(0, 11)]) == (0, 11)
    r, M = crt([(2, 4), (3, 9), (1, 25)])
    assert M == 900 and r % 4 == 2 and r % 9 == 3 and r % 25 == 1
    with pytest.raises(ModuliNotCoprime):
        crt([(1, 4), (1, 6)])


def test_is_prime_agrees_with_sieve():
    sieve = set(arith._primes_upto(5000))
    assert all(is_prime(n) == (n in sieve) for n in range(5000))
    assert not is_prime(561)
