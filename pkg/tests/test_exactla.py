from fractions import Fraction

import pytest

from quiverhn import utils, errors, exactla
from quiverhn.exactla import Mat, Subspace


def test_to_rational():
    assert exactla.to_rational(3) == Fraction(3)
    assert exactla.to_rational("-4/6") == Fraction(-2, 3)
    assert exactla.to_rational(" 7 ") == Fraction(7)
    assert exactla.to_rational(Fraction(1, 2)) == Fraction(1, 2)

    with pytest.raises(errors.InstanceFormatError):
        exactla.to_rational("1/0")
    with pytest.raises(errors.InstanceFormatError):
        exactla.to_rational("x")
    with pytest.raises(errors.InstanceFormatError):
        exactla.to_rational(1.5)  # type: ignore
    with pytest.raises(errors.InstanceFormatError):
        exactla.to_rational(True)


def test_format_rational():
    assert exactla.format_rational(Fraction(4, 3)) == "4/3"
    assert exactla.format_rational(Fraction(-8, 2)) == "-4"
    assert exactla.format_rational(Fraction(0)) == "0"


def test_mat_basics():
    m = Mat(2, 3, [[1, 2, 3], [4, 5, 6]])
    assert m.shape == (2, 3)
    assert m[1, 2] == 6
    assert m.transpose().shape == (3, 2)
    assert m.transpose()[2, 0] == 3
    assert m.column(1) == (2, 5)

    i = Mat.identity(3)
    assert m @ i == m
    assert (Mat.identity(2) @ m) == m
    assert m.apply_vector([1, 0, -1]) == (-2, -2)

    with pytest.raises(errors.DimensionError):
        m @ m
    with pytest.raises(errors.DimensionError):
        Mat(2, 2, [[1, 2]])


def test_mat_json():
    m = Mat(2, 2, [["1/2", 0], [3, "-2/4"]])
    assert m.to_json() == [["1/2", "0"], ["3", "-1/2"]]
    assert Mat.from_json(m.to_json()) == m
    assert Mat.from_json([], 3, 0).shape == (3, 0)

    with pytest.raises(errors.DimensionError):
        Mat.from_json([["1", "2"]], 2, 2)


def test_kron():
    a = Mat(2, 2, [[1, 2], [3, 4]])
    b = Mat.identity(2)
    k = b.kron(a)
    assert k.shape == (4, 4)
    assert k.submatrix(0, 2, 0, 2) == a
    assert k.submatrix(2, 4, 2, 4) == a
    assert k.submatrix(0, 2, 2, 4).is_zero()


def test_rank():
    assert exactla.rank(Mat(2, 2)) == 0
    assert exactla.rank(Mat.identity(4)) == 4
    assert exactla.rank(Mat(3, 3, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])) == 2
    assert exactla.rank(Mat(2, 2, [["1/2", "1/3"], [3, 2]])) == 1


def test_bareiss_is_fraction_free():
    rows, pivots = exactla.bareiss_echelon([[2, 4, 6], [1, 3, 5], [3, 7, 11]], 3)
    assert pivots == [0, 1]
    assert all(isinstance(x, int) for r in rows for x in r)


def test_inverse():
    m = Mat(2, 2, [[2, 1], [1, 1]])
    inv = exactla.inverse(m)
    assert m @ inv == Mat.identity(2)
    assert inv @ m == Mat.identity(2)

    with pytest.raises(errors.DimensionError):
        exactla.inverse(Mat(2, 2, [[1, 2], [2, 4]]))


def test_subspace_canonical():
    a = Subspace(3, [[1, 1, 0], [0, 1, 1]])
    b = Subspace(3, [[2, 2, 0], [1, 2, 1], [1, 0, -1]])
    assert a == b
    assert hash(a) == hash(b)
    assert a.dim == 2
    assert a.basis.shape == (3, 2)

    assert Subspace.zero(3).is_zero()
    assert Subspace.full(3).is_full()
    assert Subspace.coordinate(3, [0, 2]) == Subspace(3, [[1, 0, 0], [0, 0, 5]])


def test_membership():
    s = Subspace(3, [[1, 1, 0]])
    assert [2, 2, 0] in s
    assert [1, 0, 0] not in s

    with pytest.raises(errors.DimensionError):
        [1, 1] in s


def test_image_kernel():
    m = Mat(2, 3, [[1, 0, -1], [0, 1, 1]])
    assert exactla.image(m).is_full()
    k = exactla.kernel(m)
    assert k.dim == 1
    assert [1, -1, 1] in k

    assert exactla.kernel(Mat(2, 3)).is_full()
    assert exactla.kernel(Mat.identity(3)).is_zero()


def test_rank_nullity():
    m = Mat(3, 4, [[1, 2, 0, 1], [0, 1, 1, 0], [1, 3, 1, 1]])
    assert exactla.rank(m) + exactla.kernel(m).dim == 4
    assert exactla.image(m).dim == exactla.rank(m)


def test_annihilator():
    u = Subspace(3, [[1, 1, 0]])
    a = exactla.annihilator(u)
    assert a.rows == 2
    assert all(x == 0 for x in a.apply_vector([1, 1, 0]))

    assert exactla.annihilator(Subspace.full(3)).rows == 0
    assert exactla.annihilator(Subspace.zero(2)) == Mat.identity(2)


def test_apply_preimage():
    m = Mat(2, 2, [[1, 0], [0, 0]])
    e1 = Subspace.coordinate(2, [0])
    e2 = Subspace.coordinate(2, [1])

    assert exactla.apply(m, Subspace.full(2)) == e1
    assert exactla.apply(m, e2).is_zero()
    assert exactla.preimage(m, Subspace.zero(2)) == e2
    assert exactla.preimage(m, e1).is_full()

    with pytest.raises(errors.DimensionError):
        exactla.apply(m, Subspace.full(3))


def test_sum_intersect_contains():
    a = Subspace(3, [[1, 0, 0], [0, 1, 0]])
    b = Subspace(3, [[0, 1, 0], [0, 0, 1]])
    assert exactla.sum_spaces(a, b).is_full()
    assert exactla.intersect(a, b) == Subspace.coordinate(3, [1])
    assert exactla.contains(a, Subspace.coordinate(3, [0]))
    assert not exactla.contains(a, b)
    assert exactla.sum_all([a, b, Subspace.zero(3)], 3).is_full()

    with pytest.raises(errors.DimensionError):
        exactla.intersect(a, Subspace.full(2))


def test_dimension_formula():
    a = Subspace(4, [[1, 2, 0, 1], [0, 1, 1, 1]])
    b = Subspace(4, [[1, 3, 1, 2], [1, 0, 0, 0]])
    s = exactla.sum_spaces(a, b)
    i = exactla.intersect(a, b)
    assert s.dim + i.dim == a.dim + b.dim


def test_complement_and_projection():
    u = Subspace(3, [[1, 2, 0]])
    c = exactla.complement_basis(u)
    p = exactla.projection_onto_complement(u)
    assert c.shape == (3, 2)
    assert p.shape == (2, 3)
    assert p @ c == Mat.identity(2)
    assert all(x == 0 for x in p.apply_vector([1, 2, 0]))
    assert exactla.sum_spaces(u, exactla.image(c)).is_full()

    full = Subspace.full(2)
    assert exactla.complement_basis(full).shape == (2, 0)
    assert exactla.projection_onto_complement(full).shape == (0, 2)


def test_subspace_json():
    s = Subspace(2, [["1/2", 1]])
    assert s.to_json() == [["1", "2"]]
    assert Subspace(2, s.to_json()) == s


def test_modular_law_random():
    rng = utils.make_rng(30)
    for _ in range(100):
        n = int(rng.integers(1, 7))
        a = Subspace(n, [utils.random_integers(rng, 2, n) for _ in range(int(rng.integers(0, n + 1)))])
        b = Subspace(n, [utils.random_integers(rng, 2, n) for _ in range(int(rng.integers(0, n + 1)))])
        s = exactla.sum_spaces(a, b)
        i = exactla.intersect(a, b)
        assert s.dim + i.dim == a.dim + b.dim
        assert exactla.contains(s, a) and exactla.contains(s, b)
        assert exactla.contains(a, i) and exactla.contains(b, i)
