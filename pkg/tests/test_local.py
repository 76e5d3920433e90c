import random

import pytest

from ternaryq.arith import is_squarefree
from ternaryq.errors import ModulusTooLarge, NotLiftable
from ternaryq.forms import DiagonalForm, normalize
from ternaryq.local import (ModSolution, lift_solution, locally_solvable, prime_obstructions,
                            represents_mod, two_adic_classify)
from ternaryq.oracle import residues_represented

from conftest import normalized_triples

TRIPLES_15 = normalized_triples(15)


def values_mod(co, m):
    # plain triple loop, independent of the kernels
    a, b, c = co
    return {(a * x * x + b * y * y + c * z * z) % m
            for x in range(m) for y in range(m) for z in range(m)}


def nonresidues(p):
    sq = {x * x % p for x in range(1, p)}
    return {n for n in range(1, p) if n not in sq}


@pytest.mark.parametrize("co, modulus, residue", [
    ((1, 1, 1), 8, 7),
    ((1, 1, 10), 16, 6),
    ((1, 1, 3), 8, None),
])
def test_classify_examples(co, modulus, residue):
    cls = two_adic_classify(normalize(DiagonalForm(*co)))
    assert (cls.modulus, cls.residue) == (modulus, residue)
    missing = set(range(modulus)) - values_mod(co, modulus)
    assert missing == (set() if residue is None else {residue})


def test_classify_matches_enumeration():
    for co in TRIPLES_15:
        cls = two_adic_classify(co)
        rep = residues_represented(co, cls.modulus)
        assert sorted(rep.missing) == ([] if cls.residue is None else [cls.residue]), co


def test_classification_stabilizes_mod_32():
    for co in TRIPLES_15:
        cls = two_adic_classify(co)
        rep = residues_represented(co, 32).represented
        for r in range(32):
            if r % 4:
                assert (r in rep) == (not cls.excludes(r)), (co, r)


@pytest.mark.parametrize("co, expected", [
    ((1, 1, 10), []),
    ((1, 1, 7), [(7, {3, 5, 6})]),
    ((1, 2, 5), [(5, {2, 3})]),
])
def test_obstruction_examples(co, expected):
    obs = prime_obstructions(co)
    assert [(o.p, set(o.excluded_unit_residues)) for o in obs] == expected
    for o in obs:
        assert o.symbol_value == -1
        assert len(o.excluded_unit_residues) == (o.p - 1) // 2


def test_obstructions_match_enumeration_mod_p_squared():
    for co in normalized_triples(30)[::3] + [(-3, 5, 7), (1, -2, 15)]:
        listed = {o.p: set(o.excluded_unit_residues) for o in prime_obstructions(co)}
        for p in {q for v in co for q in (3, 5, 7, 11, 13, 17, 19, 23, 29) if v % q == 0}:
            for n in range(1, p):
                sol = represents_mod(co, n * p % (p * p), p * p)
                assert (sol is None) == (n in listed.get(p, set())), (co, p, n)
        for p, bad in listed.items():
            if sorted(bad) == sorted(nonresidues(p)):
                continue
            # own-coefficient cofactor is a non-residue: the classes flip
            assert bad == set(range(1, p)) - nonresidues(p)


def test_represents_mod_examples():
    f = DiagonalForm(1, 1, 1)
    assert represents_mod(f, 7, 8) is None
    sol = represents_mod(f, 6, 8)
    assert sol is not None and sol.holds(f.coeffs)
    assert represents_mod(DiagonalForm(1, 1, 10), 6, 16) is None
    with pytest.raises(ModulusTooLarge):
        represents_mod(f, 1, 10**6)
    with pytest.raises(ModulusTooLarge):
        represents_mod(f, 1, 1000, bound=999)


def test_lift_examples():
    f = (1, 1, 1)
    out = lift_solution(f, ModSolution(3, 1, 1, 0, 5), 3)
    assert out.modulus == 9 and out.holds(f)
    assert tuple(v % 3 for v in out.vector) == (1, 1, 0)
    out = lift_solution(f, ModSolution(7, 1, 1, 0, 2), 7)
    assert (out.modulus, out.vector) == (49, (1, 1, 0))
    with pytest.raises(NotLiftable):
        lift_solution((1, 2, 5), ModSolution(5, 0, 0, 1, 10), 5)
    # the enumeration agrees that 10 has no primitive solution mod 25
    assert represents_mod((1, 2, 5), 10, 25) is None


def lift_chain(co, n, p, k):
    sol = represents_mod(co, n, p)
    assert sol is not None
    for _ in range(k - 1):
        prev = sol
        sol = lift_solution(co, sol, p)
        assert sol.holds(co)
        assert sol.modulus == prev.modulus * p
        assert sum(v % prev.modulus != w for v, w in zip(sol.vector, prev.vector)) <= 1
        assert any(v % p for v in sol.vector)
    return sol


def test_lift_to_fifth_power():
    rng = random.Random(11)
    pool = normalized_triples(40)
    for _ in range(50):
        co = rng.choice(pool)
        p = rng.choice((3, 5, 7, 11))
        n = rng.randrange(-500, 500)
        while n % p == 0:
            n += 1
        sol = lift_chain(co, n, p, 5)
        assert sol.modulus == p**5
        assert sum(c * v * v for c, v in zip(co, sol.vector)) % p**5 == n % p**5


def test_lift_through_dividing_prime():
    # p divides a coefficient and the target, and the local conditions at p hold
    co = (1, 1, 5)
    assert locally_solvable(co, 5, 5)
    sol = represents_mod(co, 5, 5)
    for _ in range(3):
        sol = lift_solution(co, sol, 5)
        assert sol.holds(co)


def test_two_adic_lifts():
    for co, n in [((1, 1, 1), 3), ((1, 1, 1), 6), ((1, 1, 10), 3), ((1, 3, 2), 5)]:
        m0 = 8 if all(c % 2 for c in co) else 16
        sol = represents_mod(co, n, m0)
        for _ in range(4):
            sol = lift_solution(co, sol, 2)
            assert sol.holds(co)
        assert sol.modulus == m0 * 16


@pytest.mark.parametrize("co, n, p, expected", [
    ((1, 1, 1), 7, 2, False),
    ((1, 1, 10), 3, 5, True),
    ((1, 1, 7), 21, 7, False),
])
def test_locally_solvable_examples(co, n, p, expected):
    assert locally_solvable(co, n, p) is expected


def test_locally_solvable_21_by_enumeration():
    assert represents_mod((1, 1, 7), 21, 49) is None


def test_locally_solvable_at_two_matches_mod_64():
    forms = TRIPLES_15[::4] + [(-1, 1, 2), (3, -5, 7), (-1, -1, -1)]
    for co in forms:
        rep = residues_represented(co, 64).represented
        for n in range(-60, 61):
            if n and is_squarefree(n):
                assert locally_solvable(co, n, 2) == (n % 64 in rep), (co, n)


def test_locally_solvable_odd_matches_enumeration():
    for co in normalized_triples(20)[::2]:
        for p in (3, 5, 7, 11, 13, 17, 19):
            for n in range(-40, 41):
                if n and is_squarefree(n):
                    found = represents_mod(co, n % (p * p), p * p) is not None
                    assert locally_solvable(co, n, p) == found, (co, n, p)
