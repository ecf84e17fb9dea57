"""Seeded random field elements, points and transformations.

All randomness goes through numpy's PCG64 generator seeded from
``SeedSequence([seed, *stream])``, so independent streams (e.g. one per
trial) are reproducible and do not depend on execution order.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .exactcore import ExactMatrix, FieldSpec, determinant
from .veronese import PointConfig, ProjPoint

__all__ = [
    "make_rng",
    "random_element",
    "random_point",
    "random_config",
    "random_invertible",
]

# rational samples are small integers unless asked otherwise
DEFAULT_RATIONAL_BOUND = 9


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), *map(int, stream)])))


def random_element(field: FieldSpec, rng: np.random.Generator, bound: int = DEFAULT_RATIONAL_BOUND):
    p = field.characteristic
    if p:
        return int(rng.integers(0, p))
    return Fraction(int(rng.integers(-bound, bound + 1)))


def random_rational(rng: np.random.Generator, bound: int = DEFAULT_RATIONAL_BOUND) -> Fraction:
    """A random rational ``a/b`` with ``|a| <= bound`` and ``1 <= b <= bound``."""
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))


def random_point(r: int, field: FieldSpec, rng: np.random.Generator,
                 bound: int = DEFAULT_RATIONAL_BOUND) -> ProjPoint:
    while True:
        coords = [random_element(field, rng, bound) for _ in range(r + 1)]
        if any(x != 0 for x in coords):
            return ProjPoint(tuple(coords), field)


def random_config(r: int, n: int, field: FieldSpec, rng: np.random.Generator,
                  bound: int = DEFAULT_RATIONAL_BOUND) -> PointConfig:
    return PointConfig(tuple(random_point(r, field, rng, bound) for _ in range(n)), field)


def random_invertible(size: int, field: FieldSpec, rng: np.random.Generator,
                      bound: int = DEFAULT_RATIONAL_BOUND) -> ExactMatrix:
    while True:
        rows = [[random_element(field, rng, bound) for _ in range(size)] for _ in range(size)]
        g = ExactMatrix.from_rows(rows, field)
        if determinant(g) != 0:
            return g
