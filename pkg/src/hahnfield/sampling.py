"""Seeded random generation of exact test data.

All randomness flows through numpy's PCG64 bit generator, so a given seed
reproduces the same draws on every platform.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .groups import GroupElement


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_scalar(rng: np.random.Generator, bound: int = 9, nonzero: bool = False) -> Fraction:
    while True:
        num = int(rng.integers(-bound, bound + 1))
        den = int(rng.integers(1, bound + 1))
        if num or not nonzero:
            return Fraction(num, den)


def random_element(
    rng: np.random.Generator, n: int, bound: int = 9, density: float = 0.6, nonzero: bool = False
) -> GroupElement:
    while True:
        coeffs = [
            random_scalar(rng, bound, nonzero=True) if rng.random() < density else Fraction(0)
            for _ in range(n)
        ]
        g = GroupElement(coeffs)
        if g or not nonzero:
            return g


def random_int_element(rng: np.random.Generator, n: int, lo: int, hi: int) -> GroupElement:
    return GroupElement(int(x) for x in rng.integers(lo, hi + 1, size=n))
