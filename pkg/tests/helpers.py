"""Shared generators for randomized (seeded) property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from isoclass import DiscreteDistribution, WeightedSample


def rational_eta(rng: random.Random, denom: int = 40) -> Fraction:
    return Fraction(rng.randint(0, denom), denom)


def random_distinct_points(rng: random.Random, n: int, d: int, grid: int = 4):
    """n distinct lattice points in {0..grid-1}^d (n is capped by grid**d)."""
    n = min(n, grid**d)
    points = set()
    while len(points) < n:
        points.add(tuple(rng.randint(0, grid - 1) for _ in range(d)))
    return sorted(points)


def random_rational_distribution(
    rng: random.Random, max_points: int = 5, d: int = 1, grid: int = 4
) -> DiscreteDistribution:
    points = random_distinct_points(rng, rng.randint(1, max_points), d, grid)
    raw = [rng.randint(1, 9) for _ in points]
    total = sum(raw)
    mass = tuple(Fraction(r, total) for r in raw)
    eta = tuple(rational_eta(rng) for _ in points)
    return DiscreteDistribution(tuple(points), mass, eta)


def random_small_sample(rng: random.Random, max_n: int = 12, d: int = 1, grid: int = 3) -> WeightedSample:
    n = rng.randint(1, max_n)
    points = [tuple(rng.randint(0, grid - 1) for _ in range(d)) for _ in range(n)]
    labels = [rng.choice((-1, 1)) for _ in range(n)]
    return WeightedSample.unweighted(labels, points)
