"""Deterministic randomness: every task derives its generator from (seed, index)."""
from __future__ import annotations

import hashlib
import random
from fractions import Fraction


def task_rng(seed: int, *index) -> random.Random:
    key = ":".join(str(x) for x in (seed, *index)).encode()
    return random.Random(int.from_bytes(hashlib.sha256(key).digest()[:8], "big"))


def random_vector(rng: random.Random, n: int = 6, bound: int = 3, nonzero: bool = True) -> list[Fraction]:
    while True:
        v = [Fraction(rng.randint(-bound, bound)) for _ in range(n)]
        if not nonzero or any(v):
            return v


def random_symmetric(rng: random.Random, n: int = 10, bound: int = 3) -> list[list[Fraction]]:
    M = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            M[i][j] = M[j][i] = Fraction(rng.randint(-bound, bound))
    return M


def random_gl(rng: random.Random, n: int = 6, bound: int = 2) -> list[list[Fraction]]:
    from .linalg import det

    while True:
        g = [[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        if det(g) != 0:
            return g


def random_unimodular(rng: random.Random, n: int = 6, steps: int = 12) -> list[list[Fraction]]:
    """Product of elementary integer operations; det = +-1 and integer inverse."""
    g = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        f = rng.choice((-2, -1, 1, 2))
        g[i] = [a + f * b for a, b in zip(g[i], g[j])]
    perm = list(range(n))
    rng.shuffle(perm)
    return [g[p] for p in perm]
