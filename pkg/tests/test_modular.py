import math
from fractions import Fraction

import numpy as np
import pytest

from quiverhn import utils, errors, exactla, modular
from quiverhn.exactla import Mat, Subspace


def random_int_matrix(rng, rows, cols, bound=3, rank=None):
    if rank is None:
        return Mat(rows, cols, [utils.random_integers(rng, bound, cols) for _ in range(rows)])
    left = Mat(rows, rank, [utils.random_integers(rng, bound, rank) for _ in range(rows)])
    right = Mat(rank, cols, [utils.random_integers(rng, bound, cols) for _ in range(rank)])
    return left @ right


def test_primes():
    ps = modular.primes()
    assert len(ps) >= 4
    assert len(set(ps)) == len(ps)
    for p in ps:
        assert p < 2 ** 31
        assert all(p % k for k in range(2, math.isqrt(p) + 1))
    assert not modular.is_prime(2 ** 31 - 3)
    assert modular.is_prime(2)
    assert not modular.is_prime(1)


def test_residue():
    assert modular.residue(Fraction(1, 2), 7) == 4
    assert modular.residue(Fraction(-3), 7) == 4
    assert modular.residue(Fraction(0), 7) == 0
    with pytest.raises(ZeroDivisionError):
        modular.residue(Fraction(1, 7), 7)

    m = Mat(1, 2, [["1/3", "-2"]])
    assert modular.residues(m, 11).tolist() == [[4, 9]]


def test_echelon_matches_exact_form():
    rng = utils.make_rng(21)
    p = modular.primes()[0]
    for k in range(30):
        m = random_int_matrix(rng, 5, 7, rank=int(rng.integers(0, 6)))
        exact = Subspace(7, m.entries)
        rows, pivots = modular.echelon(modular.residues(m, p), p)
        assert pivots == list(exact.pivots)
        expected = [[modular.residue(x, p) for x in r] for r in exact.vectors()]
        assert rows.tolist() == expected
        assert modular.rank(modular.residues(m, p), p) == exactla.rank(m)


def test_echelon_errors():
    with pytest.raises(errors.DimensionError):
        modular.echelon(np.zeros(3, dtype=np.int64), 7)
    rows, pivots = modular.echelon(np.zeros((0, 4), dtype=np.int64), 7)
    assert rows.shape == (0, 4)
    assert pivots == []


def test_kernel():
    rng = utils.make_rng(4)
    p = modular.primes()[1]
    for _ in range(10):
        m = random_int_matrix(rng, 4, 6, rank=3)
        a = modular.residues(m, p)
        k = modular.kernel(a, p)
        assert k.shape == (6 - exactla.rank(m), 6)
        assert not modular.matmul(a, k.T, p).any()
        assert modular.rank(k, p) == k.shape[0]


def test_matmul_does_not_overflow():
    p = modular.primes()[0]
    rng = utils.make_rng(8)
    a = rng.integers(p - 1000, p, size=(3, 40), dtype=np.int64)
    b = rng.integers(p - 1000, p, size=(40, 2), dtype=np.int64)
    expected = (a.astype(object) @ b.astype(object)) % p
    assert modular.matmul(a, b, p).tolist() == expected.tolist()

    with pytest.raises(errors.DimensionError):
        modular.matmul(a, a, p)


def test_rational_reconstruction():
    p = modular.primes()[0]
    for x in [Fraction(0), Fraction(5), Fraction(-3, 7), Fraction(1000, 999)]:
        assert modular.rational_reconstruction(modular.residue(x, p), p) == x


def test_lift_rows_needs_enough_primes():
    ps = modular.primes()[:2]
    value = Fraction(123456, 789)
    stack = [np.array([[modular.residue(value, p), 1]], dtype=np.int64) for p in ps]
    assert modular.lift_rows(stack, ps) == [[value, 1]]

    with pytest.raises(ValueError):
        modular.lift_rows(stack, ps[:1])


def test_lift_subspace():
    ps = modular.primes()[:2]
    exact = Subspace(4, [[2, 1, 0, 3], [0, 3, 1, -1]])
    stack = [np.array([[modular.residue(x, p) for x in r] for r in exact.vectors()], dtype=np.int64) for p in ps]
    assert modular.lift_subspace(stack, ps, 4, exact.pivots) == exact
    assert modular.lift_subspace(stack[:1], ps[:1], 4, exact.pivots) == exact


def test_rank_lower_bound():
    rng = utils.make_rng(2)
    for _ in range(10):
        m = random_int_matrix(rng, 5, 5, rank=int(rng.integers(0, 6)))
        assert modular.rank_lower_bound(m) == exactla.rank(m)

    # the first modulus divides a denominator; the next one is used
    p = modular.primes()[0]
    m = Mat(2, 2, [[Fraction(1, p), 0], [0, 1]])
    assert modular.rank_lower_bound(m) == 2
