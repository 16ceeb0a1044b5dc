"""Brute-force oracles shared by unit and acceptance tests."""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from itertools import permutations, product

from hkepw import hklattice


def load_picard_fixtures() -> dict:
    text = (resources.files("hkepw") / "data" / "picard_fixtures.json").read_text()
    return json.loads(text)


def fixture_sublattice(f) -> hklattice.EmbeddedSublattice:
    if "basis" in f:
        return hklattice.EmbeddedSublattice.from_json(f)
    return hklattice.EmbeddedSublattice.whole(hklattice.IntegralLattice(tuple(map(tuple, f["gram"]))))


def box(rank: int, radius: int = 10):
    return (v for v in product(range(-radius, radius + 1), repeat=rank) if any(v))


def brute_q_classes(P, x, q0, bound, radius=10):
    L = P.lattice
    qx = L.qform(x)
    out = []
    for a in box(L.rank, radius):
        if L.qform(a) == q0 and Fraction(2 * L.bilinear(a, x) ** 2, qx) - q0 <= bound:
            out.append(a)
    return sorted(out)


def brute_walls(P, h0, h1, radius=10):
    L = P.lattice
    out = []
    for a in box(L.rank, radius):
        q = L.qform(a)
        if q == -2 or (q == -10 and P.ambient_divisibility(a) == 2):
            p0, p1 = L.bilinear(a, h0), L.bilinear(a, h1)
            if p0 * p1 <= 0 and (p0, p1) != (0, 0):
                out.append((a, "q=-2" if q == -2 else "q=-10,div=2"))
    return sorted(out)


def matching_sum_by_permutations(G, alphas) -> Fraction:
    """Symmetrized sum over all permutations, divided by n! 2^n: an independent
    route to the matching sum."""
    from math import factorial

    k = len(alphas)
    n = k // 2

    def pair(u, v):
        return sum(Fraction(G[i][j]) * u[i] * v[j] for i in range(len(G)) for j in range(len(G)) if u[i] and v[j])

    total = Fraction(0)
    for perm in permutations(range(k)):
        t = Fraction(1)
        for i in range(n):
            t *= pair(alphas[perm[2 * i]], alphas[perm[2 * i + 1]])
        total += t
    return total / (factorial(n) * 2**n)
