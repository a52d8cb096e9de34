"""Shared random-instance generators for the test suite.

Everything is driven by an explicit `random.Random` so test runs are
reproducible; fractions come from small numerator/denominator pools to keep
the exact arithmetic fast.
"""

from __future__ import annotations

import random
from fractions import Fraction

from thermomaj import Perm, Vec, all_perms, beta_permutation, mat_vec
from thermomaj.structure import _stability_witness


def rand_fraction(rng: random.Random, lo: int = -4, hi: int = 4, max_den: int = 5) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_positive(rng: random.Random, hi: int = 9, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(1, hi), rng.randint(1, max_den))


def rand_d(rng: random.Random, n: int) -> Vec:
    return tuple(rand_positive(rng) for _ in range(n))


def rand_d_with_zeros(rng: random.Random, n: int) -> Vec:
    d = [rand_positive(rng) if rng.random() < 0.7 else Fraction(0) for _ in range(n)]
    if all(q == 0 for q in d):
        d[rng.randrange(n)] = rand_positive(rng)
    return tuple(d)


def rand_y(rng: random.Random, n: int) -> Vec:
    return tuple(rand_fraction(rng) for _ in range(n))


def rand_perm(rng: random.Random, n: int) -> Perm:
    image = list(range(1, n + 1))
    rng.shuffle(image)
    return Perm(tuple(image))


def same_trace(rng: random.Random, y: Vec) -> Vec:
    """A random vector with the same trace as y."""
    n = len(y)
    x = [rand_fraction(rng) for _ in range(n)]
    shift = (sum(y) - sum(x)) / n
    return tuple(q + shift for q in x)


def reachable_from(rng: random.Random, d: Vec, y: Vec) -> Vec:
    """A point of M_d(y): the image of y under a random mixture of
    beta-permutations (any sigma, tau give a Gibbs-stochastic matrix)."""
    n = len(d)
    terms = rng.randint(1, 3)
    weights = [rand_positive(rng) for _ in range(terms)]
    scale = sum(weights)
    out = tuple(Fraction(0) for _ in range(n))
    for w in weights:
        a = beta_permutation(d, rand_perm(rng, n), rand_perm(rng, n))
        out = tuple(o + w / scale * q for o, q in zip(out, mat_vec(a, y)))
    return out


def rand_stable_d(rng: random.Random, n: int) -> Vec:
    while True:
        d = rand_d(rng, n)
        if _stability_witness(d) is None:
            return d


def rand_unstable_d(rng: random.Random, n: int) -> Vec:
    """Plant a subset-sum collision: one entry equals the sum of others."""
    while True:
        d = list(rand_d(rng, n))
        k = rng.randrange(n)
        others = [i for i in range(n) if i != k]
        size = rng.randint(1, min(2, len(others)))
        chosen = rng.sample(others, size)
        d[k] = sum(d[i] for i in chosen)
        if all(q > 0 for q in d):
            return tuple(d)


def exhaustive_perms(n: int) -> list[Perm]:
    return list(all_perms(n))
