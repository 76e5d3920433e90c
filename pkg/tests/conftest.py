from math import gcd

import pytest
from hypothesis import settings

from ternaryq.arith import is_squarefree

# first calls pay for sieving and JIT compilation
settings.register_profile("default", deadline=None)
settings.load_profile("default")


def normalized_triples(bound, lo=1):
    """Sorted positive squarefree pairwise coprime triples with entries <= bound."""
    out = []
    for a in range(lo, bound + 1):
        for b in range(a, bound + 1):
            for c in range(b, bound + 1):
                if all(is_squarefree(v) for v in (a, b, c)) and \
                        gcd(a, b) == gcd(a, c) == gcd(b, c) == 1:
                    out.append((a, b, c))
    return out


def mixed_triples(abc_bound):
    """Mixed-sign squarefree pairwise coprime triples with |abc| <= abc_bound."""
    out = []
    vals = [v for v in range(-abc_bound, abc_bound + 1) if v and is_squarefree(v)]
    for a in vals:
        for b in vals:
            if b < a or abs(a * b) > abc_bound or gcd(a, b) != 1:
                continue
            for c in vals:
                if c < b or abs(a * b * c) > abc_bound:
                    continue
                if min(a, b, c) > 0 or max(a, b, c) < 0:
                    continue
                if gcd(a, c) == gcd(b, c) == 1:
                    out.append((a, b, c))
    return out


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    monkeypatch.setenv("TERNARYQ_NO_NUMBA", "1" if request.param == "numpy" else "0")
    return request.param
