# -*- coding: utf-8 -*-

import math
import logging
from typing import List, Iterable, Sequence
from fractions import Fraction

import numpy as np

logger = logging.getLogger(__name__)


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """
    Return a numpy Generator for the given seed and optional stream keys.

    The same (seed, stream) always yields the same sequence; no global random
    state is touched.
    """
    if seed < 0:
        raise ValueError(f"expected non-negative seed, given {seed}")
    return np.random.default_rng([int(seed)] + [int(s) for s in stream])


def random_integers(rng: np.random.Generator, bound: int, count: int) -> List[int]:
    """
    Draw `count` integers uniformly from [-bound, bound] as python ints.
    """
    if count == 0:
        return []
    return [int(x) for x in rng.integers(-bound, bound + 1, size=count)]


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    result = 1
    for v in values:
        result = result * v.denominator // math.gcd(result, v.denominator)
    return result


def integer_row(values: Sequence[Fraction]) -> List[int]:
    """
    Scale a rational row to integers by the lcm of its denominators.
    The result spans the same line; it is not reduced by the gcd.
    """
    scale = lcm_of_denominators(values)
    return [int(v * scale) for v in values]


def primitive_vector(values: Sequence[Fraction]) -> List[int]:
    """
    Given a rational vector, return the unique indivisible integer vector on
    the same positive ray (denominators cleared, divided by the gcd).

    The zero vector maps to itself.
    """
    ints = integer_row(values)
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return ints
    return [x // g for x in ints]


def gcd_of(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, int(v))
    return g
