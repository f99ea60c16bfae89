import json
from fractions import Fraction

import pytest
import fixtures

from quiverhn import gen, disc, errors, quiver
from quiverhn.quiver import Path, Arrow, Quiver, SubRep, Weight, Representation
from quiverhn.exactla import Mat, Subspace


def chain(dims=(1, 1, 1)):
    # u -a-> v -b-> w with identity-like maps
    q = Quiver(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w")])
    du, dv, dw = dims
    maps = {
        "a": Mat(dv, du, [[1 if i == j else 0 for j in range(du)] for i in range(dv)]),
        "b": Mat(dw, dv, [[1 if i == j else 0 for j in range(dv)] for i in range(dw)]),
    }
    return Representation(q, {"u": du, "v": dv, "w": dw}, maps)


def test_quiver_order():
    q = Quiver(["w", "v", "u"], [("b", "v", "w"), ("a", "u", "v")])
    assert q.order == ("u", "v", "w")

    # ties follow declaration order
    q = Quiver(["b", "a", "c"], [("x", "a", "c"), ("y", "b", "c")])
    assert q.order == ("b", "a", "c")


def test_quiver_errors():
    with pytest.raises(errors.AcyclicityError):
        Quiver(["u"], [("l", "u", "u")])
    with pytest.raises(errors.AcyclicityError):
        Quiver(["u", "v"], [("a", "u", "v"), ("b", "v", "u")])
    with pytest.raises(errors.InstanceFormatError):
        Quiver(["u"], [("a", "u", "z")])
    with pytest.raises(errors.InstanceFormatError):
        Quiver(["u", "u"], [])
    with pytest.raises(errors.InstanceFormatError):
        Quiver(["u", "v"], [("a", "u", "v"), ("a", "u", "v")])


def test_arrow_lookup():
    q = Quiver(["u", "v"], [("a", "u", "v"), ("b", "u", "v")])
    assert q.arrow("b") == Arrow("b", "u", "v")
    assert [a.id for a in q.arrows_into("v")] == ["a", "b"]
    assert q.arrows_from("v") == []
    assert q.graph().number_of_edges() == 2


def test_enumerate_paths():
    q = Quiver(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w"), ("c", "u", "w")])
    paths, total = quiver.enumerate_paths(q)
    assert total == 3 + 4
    assert Path(("b", "a"), "u", "w") in paths
    assert Path(("c",), "u", "w") in paths
    assert all(not p.is_trivial() for p in paths)

    # parallel arrows give distinct paths
    q = Quiver(["u", "v", "w"], [("a", "u", "v"), ("a2", "u", "v"), ("b", "v", "w")])
    paths, total = quiver.enumerate_paths(q)
    assert len([p for p in paths if p.source == "u" and p.target == "w"]) == 2
    assert total == 3 + 5


def test_path_map_composition():
    q = Quiver(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w")])
    ma = Mat(2, 1, [[1], [2]])
    mb = Mat(1, 2, [[3, 5]])
    m = Representation(q, {"u": 1, "v": 2, "w": 1}, {"a": ma, "b": mb})
    p = Path(("b", "a"), "u", "w")
    assert quiver.path_map(m, p) == mb @ ma
    assert quiver.path_map(m, p) == Mat(1, 1, [[13]])
    assert quiver.path_map(m, Path.trivial("v")) == Mat.identity(2)

    grouped = quiver.path_maps(m)
    assert [p for p, _ in grouped[("u", "w")]] == [p]
    assert ("v", "v") not in grouped
    assert ("v", "v") in quiver.path_maps(m, include_trivial=True)


def test_representation_validation():
    q = Quiver(["u", "v"], [("a", "u", "v")])
    with pytest.raises(errors.DimensionError):
        Representation(q, {"u": 1, "v": 2}, {"a": Mat(1, 1)})
    with pytest.raises(errors.DimensionError):
        Representation(q, {"u": -1, "v": 2})
    with pytest.raises(errors.InstanceFormatError):
        Representation(q, {"u": 1, "z": 2})

    m = Representation(q, {"u": 1, "v": 2})
    assert m.maps["a"].is_zero()
    assert m.dim_vector() == (1, 2)


def test_weight():
    q = Quiver(["u", "v"], [("a", "u", "v")])
    theta = Weight({"u": 3, "v": -1})
    assert theta["u"] == 3
    assert theta["z"] == 0
    assert theta({"u": 1, "v": 3}) == 0
    assert theta.scaled(2) == Weight({"u": 6, "v": -2})
    assert Weight({"u": 1, "v": 0}) == Weight({"u": 1})
    assert Weight.constant(q, 1).to_json() == {"u": 1, "v": 1}

    with pytest.raises(errors.WeightError):
        Weight({"u": "x"})
    with pytest.raises(errors.WeightError):
        Weight({"u": 1.5})
    with pytest.raises(errors.WeightError):
        Weight({"u": True})


def test_slope_and_theta_d():
    m, theta, kappa = fixtures.load("four_lines")
    assert quiver.slope(theta, kappa, m) == 0
    assert quiver.slope(theta, kappa, fixtures.span_at_y(m, 1)) == Fraction(4, 3)

    with pytest.raises(errors.ZeroRepresentationError):
        quiver.slope(theta, kappa, SubRep.zero(m))
    with pytest.raises(errors.WeightError):
        quiver.slope(theta, Weight({"y": 1}), m)

    kappa = Weight({"x1": 1, "x2": 2, "x3": 1, "x4": 1, "y": 1})
    td = quiver.theta_d(theta, kappa, m.dims)
    assert td(m) == 0
    # kappa(d) = 9, Theta(d) = 0
    assert td == theta.scaled(9)


def test_theta_d_vanishes_on_d():
    theta = Weight({"u": 2, "v": -3, "w": 1})
    kappa = Weight({"u": 1, "v": 2, "w": 3})
    d = {"u": 2, "v": 1, "w": 4}
    assert quiver.theta_d(theta, kappa, d)(d) == 0

    with pytest.raises(errors.WeightError):
        quiver.theta_d(theta, Weight({"u": 0, "v": 1, "w": 1}), d)


def test_is_subrep():
    m, _, _ = fixtures.load("four_lines")
    assert quiver.is_subrep(SubRep.zero(m))
    assert quiver.is_subrep(SubRep.full(m))
    assert quiver.is_subrep(fixtures.span_at_y(m, 1, 2))

    # x1 hits e2, which is missing at y
    bad = SubRep(m, {"x1": Subspace.full(1), "y": Subspace.coordinate(4, [0])})
    assert not quiver.is_subrep(bad)

    with pytest.raises(errors.DimensionError):
        SubRep(m, {"y": Subspace.full(3)})


def test_subrep_lattice():
    m, _, _ = fixtures.load("four_lines")
    a = fixtures.span_at_y(m, 1, 2)
    b = fixtures.span_at_y(m, 1, 3)
    s = quiver.sum_subreps(a, b)
    i = quiver.intersect_subreps(a, b)
    assert s == fixtures.span_at_y(m, 1, 2, 3)
    assert i == fixtures.span_at_y(m, 1)
    assert quiver.is_subrep(s) and quiver.is_subrep(i)
    assert s.contains(a) and a.contains(i)
    assert not a.contains(b)

    other, _, _ = fixtures.load("four_lines")
    assert a == fixtures.span_at_y(other, 1, 2)

    with pytest.raises(errors.SubrepresentationError):
        quiver.sum_subreps(a, SubRep.zero(chain()))


def test_invariant_closure():
    m, _, _ = fixtures.load("four_lines")
    s = quiver.invariant_closure(m, {"x1": Subspace.full(1), "x4": Subspace.full(1)})
    assert s.spaces["y"] == Subspace.coordinate(4, [1, 2])
    assert s.dim_vector() == (1, 0, 0, 1, 2)
    assert quiver.is_subrep(s)

    c = chain((1, 2, 2))
    s = quiver.invariant_closure(c, {"u": Subspace.full(1)})
    assert s.dim_vector() == (1, 1, 1)


def test_quotient():
    m, theta, _ = fixtures.load("four_lines")
    s = fixtures.span_at_y(m, 1)
    quo = quiver.quotient_rep(m, s)
    assert quo.rep.dim_vector() == (1, 0, 0, 1, 3)
    for v in m.quiver.vertices:
        assert quo.projections[v] @ quo.sections[v] == Mat.identity(quo.rep.dims[v])
    # the quotient map commutes with the arrows
    for a in m.quiver.arrows:
        assert quo.projections[a.head] @ m.maps[a.id] == quo.rep.maps[a.id] @ quo.projections[a.tail]

    t = SubRep.full(quo.rep)
    assert quo.pullback(t).is_full()
    assert quo.pullback(SubRep.zero(quo.rep)) == s
    assert quo.push(s).is_zero()
    assert quo.push(SubRep.full(m)).is_full()

    with pytest.raises(errors.SubrepresentationError):
        quiver.quotient_rep(m, SubRep(m, {"x1": Subspace.full(1)}))


def test_pullback_is_subrep():
    m, _, _ = fixtures.load("four_lines")
    s = fixtures.span_at_y(m, 1)
    quo = quiver.quotient_rep(m, s)
    # the closure of the x1 line in M/S
    t = quiver.invariant_closure(quo.rep, {"x1": Subspace.full(1)})
    up = quiver.pullback(m, s, t)
    assert quiver.is_subrep(up)
    assert up == fixtures.span_at_y(m, 1, 2)
    assert quo.push(up) == t


def test_restriction():
    m, _, _ = fixtures.load("four_lines")
    s = fixtures.span_at_y(m, 1, 2)
    res = quiver.sub_representation(m, s)
    assert res.rep.dim_vector() == (1, 1, 1, 0, 2)
    for a in m.quiver.arrows:
        lhs = m.maps[a.id] @ res.inclusions[a.tail]
        rhs = res.inclusions[a.head] @ res.rep.maps[a.id]
        assert lhs == rhs

    inner = fixtures.span_at_y(m, 1)
    t = res.restrict(inner)
    assert quiver.is_subrep(t)
    assert res.pushforward(t) == inner
    assert quiver.pushforward(m, s, t) == inner
    assert res.pushforward(SubRep.full(res.rep)) == s

    with pytest.raises(errors.SubrepresentationError):
        res.restrict(fixtures.span_at_y(m, 3))


def test_load_instance():
    m, theta, kappa = fixtures.load("four_lines")
    assert m.dim_vector() == (1, 1, 1, 1, 4)
    assert theta(m) == 0
    assert kappa == Weight.constant(m.quiver, 1)
    assert m.maps["a3"].column(0) == (2, 0, 0, 0)

    doc = quiver.dump_instance(m, theta, kappa)
    again = quiver.load_instance(json.dumps(doc))
    assert again[0] == m
    assert again[1] == theta

    bare = {"quiver": {"vertices": ["u"]}, "dims": {"u": 2}}
    m, theta, kappa = quiver.load_instance(bare)
    assert theta(m) == 0
    assert kappa["u"] == 1


def test_load_instance_errors():
    with pytest.raises(errors.InstanceFormatError):
        quiver.load_instance("{not json")
    with pytest.raises(errors.InstanceFormatError):
        quiver.load_instance("[]")
    with pytest.raises(errors.InstanceFormatError):
        quiver.load_instance({"dims": {}})
    with pytest.raises(errors.InstanceFormatError):
        quiver.load_instance({"quiver": {"vertices": ["u"]}, "maps": {"zz": []}})
    with pytest.raises(errors.InstanceFormatError):
        quiver.load_instance({"quiver": {"vertices": ["u"], "arrows": [{"id": "a", "tail": "u", "head": "u2"}]}})
    with pytest.raises(errors.DimensionError):
        quiver.load_instance(
            {
                "quiver": {"vertices": ["u", "v"], "arrows": [{"id": "a", "tail": "u", "head": "v"}]},
                "dims": {"u": 1, "v": 2},
                "maps": {"a": [["1"]]},
            }
        )
    with pytest.raises(errors.WeightError):
        quiver.load_instance({"quiver": {"vertices": ["u"]}, "dims": {"u": 1}, "theta": {"u": "1/2"}})
    with pytest.raises(errors.AcyclicityError):
        quiver.load_instance({"quiver": {"vertices": ["u"], "arrows": [{"id": "l", "tail": "u", "head": "u"}]}})


def test_load_instance_rejects_bad_dimensions():
    base = {"quiver": {"vertices": ["u"]}}
    for bad in ["one", 1.5, True, None, [1]]:
        with pytest.raises(errors.InstanceFormatError):
            quiver.load_instance(dict(base, dims={"u": bad}))
    with pytest.raises(errors.InstanceFormatError):
        quiver.load_instance('{"quiver": {"vertices": ["u"]}, "dims": {"u": Infinity}}')

    m, _, _ = quiver.load_instance(dict(base, dims={"u": 2.0}))
    assert m.dims["u"] == 2


def random_short_exact_sequences(count):
    # (m, s, m/s) with s a random invariant closure and all three nonzero
    spec = gen.GenSpec(seed=17, max_vertices=4, max_dim=3, weight_bound=4, kappa_bound=3)
    found = 0
    index = 0
    while found < count:
        m, theta, kappa = gen.gen_instance(spec, index)
        s = disc.random_closure(m, index, 1)
        index += 1
        if s.is_zero() or s.is_full():
            continue
        found += 1
        yield m, theta, kappa, s, quiver.quotient_rep(m, s).rep


def test_seesaw():
    for m, theta, kappa, s, quo in random_short_exact_sequences(100):
        mu_s, mu_m, mu_q = quiver.slope(theta, kappa, s), quiver.slope(theta, kappa, m), quiver.slope(theta, kappa, quo)
        assert (mu_s <= mu_m) == (mu_s <= mu_q) == (mu_m <= mu_q)
        assert (mu_s < mu_m) == (mu_s < mu_q) == (mu_m < mu_q)
        assert (mu_s >= mu_m) == (mu_s >= mu_q) == (mu_m >= mu_q)


def test_weight_is_additive():
    for m, theta, kappa, s, quo in random_short_exact_sequences(100):
        assert theta(m) == theta(s) + theta(quo)
        assert kappa(m) == kappa(s) + kappa(quo)
        assert quiver.weight_of(theta, m) == theta(m)
