from fractions import Fraction

import pytest
import fixtures

from quiverhn import gen, hn, disc, errors, oracles, shrunk
from quiverhn.quiver import Quiver, Weight, Representation, slope
from quiverhn.exactla import Mat
from quiverhn.oracles import PatternSpace


def test_koenig_examples():
    c, columns = oracles.koenig_disc(PatternSpace(2, []))
    assert c == 2
    assert columns == [0, 1]

    result = oracles.koenig_disc(PatternSpace(2, [(0, 0)]))
    assert result.c == 1
    assert result.columns == [1]
    assert result.matching == [(0, 0)]

    full = PatternSpace(3, [(i, j) for i in range(3) for j in range(3)])
    assert oracles.koenig_disc(full).c == 0


def test_koenig_deficiency():
    # columns 0 and 1 both only reach row 2
    p = PatternSpace(3, [(2, 0), (2, 1), (0, 2), (1, 2)])
    result = oracles.koenig_disc(p)
    assert result.c == 1
    assert len(result.columns) - len(p.neighbours(result.columns)) == 1
    assert len(result.matching) == 2


def test_pattern_space():
    p = PatternSpace(2, [(0, 1)])
    assert Mat(2, 2, [[0, 5], [0, 0]]) in p.matrix_space()
    assert p.neighbours([1]) == [0]
    assert p.neighbours([0]) == []

    with pytest.raises(errors.DimensionError):
        PatternSpace(2, [(2, 0)])

    assert oracles.pattern_of(p.matrix_space()).support == p.support
    assert oracles.pattern_of(shrunk.MatrixSpace(2, [Mat.identity(2)])) is None


def test_koenig_matches_disc_four_lines():
    m, theta, _ = fixtures.load("four_lines")
    space, _ = disc.build_matrix_space(m, disc.reduced_weight(m, theta)[0])
    pattern = oracles.pattern_of(space)
    assert pattern is not None
    assert oracles.koenig_disc(pattern).c == 1
    assert shrunk.min_shrunk(space, 0).c == 1


def test_bipartite_oracle_four_lines():
    m, theta, _ = fixtures.load("four_lines")
    assert oracles.bipartite_disc_oracle(m, theta) == 4


def test_bipartite_oracle_zero_maps():
    m, theta, _ = fixtures.load("four_lines")
    zero = Representation(m.quiver, m.dims)
    assert oracles.bipartite_disc_oracle(zero, theta) == 16


def test_bipartite_oracle_identity():
    q = Quiver(["x", "y"], [("a", "x", "y")])
    m = Representation(q, {"x": 1, "y": 1}, {"a": Mat.identity(1)})
    assert oracles.bipartite_disc_oracle(m, Weight({"x": 1, "y": -1})) == 0


def test_oracle_unsupported():
    q = Quiver(["x", "y"], [("a", "x", "y")])
    m = Representation(q, {"x": 2, "y": 1})
    with pytest.raises(errors.UnsupportedInstance):
        oracles.bipartite_disc_oracle(m, Weight({"x": 1, "y": -2}))

    q = Quiver(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w")])
    m = Representation(q, {"u": 1, "v": 1, "w": 1})
    with pytest.raises(errors.UnsupportedInstance):
        oracles.bipartite_disc_oracle(m, Weight({"u": 1, "v": -2, "w": 1}))
    with pytest.raises(errors.UnsupportedInstance):
        oracles.slope_brute(m, Weight({"u": 1, "v": -2, "w": 1}), Weight.constant(q, 1))


def test_slope_brute_four_lines():
    m, theta, kappa = fixtures.load("four_lines")
    best, winner = oracles.slope_brute(m, theta, kappa)
    assert best == Fraction(4, 3)
    assert winner == fixtures.span_at_y(m, 1)


def test_slope_brute_semistable():
    q = Quiver(["x1", "x4", "y"], [("a1", "x1", "y"), ("a4", "x4", "y")])
    m = Representation(q, {"x1": 1, "x4": 1, "y": 2}, {"a1": Mat(2, 1, [[1], [0]]), "a4": Mat(2, 1, [[0], [1]])})
    best, winner = oracles.slope_brute(m, Weight({"x1": 4, "x4": 4, "y": -4}), Weight.constant(q, 1))
    assert best == 0
    assert winner.is_full()


def test_slope_brute_zero_maps():
    m, theta, kappa = fixtures.load("four_lines")
    zero = Representation(m.quiver, m.dims)
    best, winner = oracles.slope_brute(zero, theta, kappa)
    assert best == 4
    assert winner.dim_vector() == (1, 1, 1, 1, 0)


def test_oracle_agreement_generated():
    spec = gen.GenSpec(seed=1, kind=gen.BIPARTITE, max_vertices=4, max_dim=2, weight_bound=3, kappa_bound=2, balanced=True)
    for index in range(8):
        m, theta, kappa = gen.gen_instance(spec, index)
        assert disc.disc_witness(m, theta, index).value == oracles.bipartite_disc_oracle(m, theta)
        best, _ = oracles.slope_brute(m, theta, kappa)
        assert slope(theta, kappa, hn.scss(m, theta, kappa, index)) == best
