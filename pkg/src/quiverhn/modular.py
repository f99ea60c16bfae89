# -*- coding: utf-8 -*-
"""
Linear algebra modulo word-sized primes

Residues are numpy int64 arrays with entries in [0, p) for p < 2**31, so the
product of two residues fits in 63 bits; every step reduces before the next
multiplication.  A rank modulo p never exceeds the rank over the rationals.

Exact subspaces are recovered from reduced echelon forms taken modulo several
primes by Chinese remaindering and rational reconstruction.  A recovered
value is only a candidate: callers check it in exact arithmetic.
"""

import math
import logging
from typing import List, Tuple, Optional, Sequence
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import errors, exactla
from .exactla import Mat, Subspace

logger = logging.getLogger(__name__)

# the largest integers below 2**31 of the form 2**31 - k that are expected to be prime
_CANDIDATES = (2 ** 31 - 1, 2 ** 31 - 19, 2 ** 31 - 61, 2 ** 31 - 69, 2 ** 31 - 85, 2 ** 31 - 99, 2 ** 31 - 105, 2 ** 31 - 151)


def is_prime(p: int) -> bool:
    """
    Trial division.
    """
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for k in range(3, math.isqrt(p) + 1, 2):
        if p % k == 0:
            return False
    return True


@lru_cache(maxsize=None)
def primes() -> Tuple[int, ...]:
    """
    The moduli used for modular elimination, largest first.
    """
    found = tuple(p for p in _CANDIDATES if is_prime(p))
    if not found:
        raise errors.InvariantError("no word-sized prime among the candidates")
    return found


def residue(x: Fraction, p: int) -> int:
    """
    x mod p; ZeroDivisionError when p divides the denominator.
    """
    den = x.denominator % p
    if not den:
        raise ZeroDivisionError("denominator {} vanishes mod {}".format(x.denominator, p))
    return x.numerator * pow(den, -1, p) % p


def residues(m: Mat, p: int) -> np.ndarray:
    out = np.zeros((m.rows, m.cols), dtype=np.int64)
    for i, r in enumerate(m.entries):
        for j, x in enumerate(r):
            if x:
                out[i, j] = residue(x, p)
    return out


def echelon(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form of `a` mod p: (nonzero rows, pivot columns).
    The form is canonical, so equal row spaces give equal arrays.
    """
    m = np.array(a, dtype=np.int64) % p
    if m.ndim != 2:
        raise errors.DimensionError("expected a matrix, given an array of dimension {}".format(m.ndim))
    nrows, ncols = m.shape
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r, c:] = m[r, c:] * inv % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit, c:] = (m[hit, c:] - np.outer(col[hit], m[r, c:]) % p) % p
        pivots.append(c)
        r += 1
    return m[:r].copy(), pivots


def rank(a: np.ndarray, p: int) -> int:
    return len(echelon(a, p)[1])


def kernel(a: np.ndarray, p: int) -> np.ndarray:
    """
    Rows spanning {v : a v = 0} mod p.
    """
    ncols = a.shape[1]
    rows, pivots = echelon(a, p)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        if pivots:
            out[k, pivots] = (-rows[:, f]) % p
    return out


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """
    a @ b mod p without overflow: one rank-one update per inner index.
    """
    if a.shape[1] != b.shape[0]:
        raise errors.DimensionError("cannot multiply {} by {}".format(a.shape, b.shape))
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = (out + np.outer(a[:, k], b[k, :])) % p
    return out


def rational_reconstruction(a: int, m: int) -> Optional[Fraction]:
    """
    The fraction r/s with |r|, |s| <= sqrt(m/2) and r = s a mod m, or None.
    """
    bound = math.isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def lift_rows(stack: Sequence[np.ndarray], moduli: Sequence[int]) -> Optional[List[List[Fraction]]]:
    """
    Combine the same rows taken modulo several primes and reconstruct each
    entry as a fraction; None when some entry has no small enough preimage.
    """
    if len(stack) != len(moduli) or not stack:
        raise ValueError("expected one array per modulus")
    rows = stack[0].tolist()
    modulus = moduli[0]
    for arr, p in zip(stack[1:], moduli[1:]):
        if arr.shape != stack[0].shape:
            raise errors.DimensionError("residue arrays of shapes {} and {}".format(stack[0].shape, arr.shape))
        inv = pow(modulus % p, -1, p)
        for r, other in zip(rows, arr.tolist()):
            for j, (x, y) in enumerate(zip(r, other)):
                r[j] = x + modulus * ((y - x) * inv % p)
        modulus *= p
    out = []
    for r in rows:
        values = []
        for x in r:
            q = rational_reconstruction(x, modulus)
            if q is None:
                return None
            values.append(q)
        out.append(values)
    return out


def lift_subspace(stack: Sequence[np.ndarray], moduli: Sequence[int], ambient_dim: int, pivots: Sequence[int]) -> Optional[Subspace]:
    """
    The subspace whose reduced echelon rows reduce to `stack`, or None.
    Lifted rows that are already in canonical form are taken as they are.
    """
    rows = lift_rows(stack, moduli)
    if rows is None:
        return None
    pivots = tuple(pivots)
    canonical = len(rows) == len(pivots) and all(
        r[p] == 1 and not any(r[:p]) and all(r[q] == 0 for q in pivots if q != p) for r, p in zip(rows, pivots)
    )
    if canonical:
        return Subspace._from_canonical(ambient_dim, tuple(tuple(r) for r in rows), pivots)
    return Subspace(ambient_dim, rows)


def rank_lower_bound(m: Mat) -> int:
    """
    Rank of m modulo the first prime not dividing a denominator; never above
    the rank over the rationals.  Falls back to the exact rank.
    """
    for p in primes():
        try:
            return rank(residues(m, p), p)
        except ZeroDivisionError:
            continue
    logger.debug("every modulus divides a denominator, computing the rank exactly")
    return exactla.rank(m)
