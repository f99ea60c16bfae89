import time

import pytest

from quiverhn import gen, hn, disc, utils, kempf, quiver, shrunk, oracles
from quiverhn.quiver import Quiver, Weight, Representation
from quiverhn.exactla import Mat

GENERAL = gen.GenSpec(seed=11, max_vertices=5, max_dim=4, weight_bound=5, kappa_bound=3, balanced=True)
BIPARTITE = gen.GenSpec(seed=11, kind=gen.BIPARTITE, max_vertices=5, max_dim=4, weight_bound=5, kappa_bound=3, balanced=True)


def disc_value(m, theta, seed):
    """
    disc(M, theta) for any theta: an isolated line weighing -theta(M) balances
    the weight and adds max(0, -theta(M)) to the maximum.
    """
    total = theta(m)
    q = Quiver(list(m.quiver.vertices) + ["pad"], [(a.id, a.tail, a.head) for a in m.quiver.arrows])
    padded = Representation(q, dict(m.dims, pad=1), dict(m.maps))
    weights = {v: theta[v] for v in m.quiver.vertices}
    weights["pad"] = -total
    return disc.disc_witness(padded, Weight(weights), seed).value - max(0, -total)


def other_kappa(m, kappa):
    # differs from kappa at every vertex and stays in [1, 3]
    return Weight({v: kappa[v] % 3 + 1 for v in m.quiver.vertices})


def test_disc_value_of_unbalanced_weight():
    q = Quiver(["x", "y"], [("a", "x", "y")])
    m = Representation(q, {"x": 1, "y": 1}, {"a": Mat.identity(1)})
    assert disc_value(m, Weight({"x": 2, "y": -1}), 0) == 1
    assert disc_value(m, Weight({"x": -1, "y": 3}), 0) == 3


@pytest.mark.slow
def test_hn_on_generated_instances():
    unstable = 0
    for index in range(200):
        m, theta, kappa = gen.gen_instance(GENERAL, index)
        assert theta(m) == 0
        f = hn.hn_filtration(m, theta, kappa, 0)
        report = hn.verify_hn(f, theta, kappa, 1)
        assert report.ok, (index, report.violations)
        for seed in (1, 2):
            assert hn.hn_filtration(m, theta, kappa, seed) == f
        if len(f) < 2:
            continue
        unstable += 1

        # some HN term attains disc and every witness contains the scss, whatever kappa
        witness = disc.disc_witness(m, theta, index)
        assert theta(witness.witness) == witness.value > 0
        for k in (kappa, other_kappa(m, kappa)):
            fk = f if k is kappa else hn.hn_filtration(m, theta, k, 0)
            _, term = hn.theorem_a_term(fk, theta)
            assert theta(term) == witness.value
            assert witness.witness.contains(fk[1])
            assert term.contains(fk[1])

        # the optimal value drops by Theta(M_1) on the quotient by the scss
        top = f[1]
        quo = quiver.quotient_rep(m, top).rep
        assert disc_value(quo, theta, index) == witness.value - theta(top)

        result = kempf.kempf_ops(f, theta, kappa)
        assert kempf.kempf_function_check(result.u, f.kappa_values, 200, index).ok
        assert kempf.limit_exists(result.ops, m)[0]
    assert unstable > 0


@pytest.mark.slow
def test_oracles_on_generated_bipartite_instances():
    for index in range(100):
        m, theta, kappa = gen.gen_instance(BIPARTITE, index)
        assert disc.disc_witness(m, theta, index).value == oracles.bipartite_disc_oracle(m, theta)
        best, _ = oracles.slope_brute(m, theta, kappa)
        assert quiver.slope(theta, kappa, hn.scss(m, theta, kappa, index)) == best


@pytest.mark.slow
def test_certificates_on_random_patterns():
    for index in range(100):
        p = gen.gen_pattern(11, index)
        space = p.matrix_space()
        cert = shrunk.min_shrunk(space, index)
        assert cert.c == oracles.koenig_disc(p).c
        assert shrunk.verify_certificate(space, cert).ok
        assert -(-cert.rank // cert.degree) == space.n - cert.c


def four_arms(scale, rng):
    # x1..x4 -> y with every dimension multiplied by scale
    q = Quiver(["x1", "x2", "x3", "x4", "y"], [("a{}".format(i), "x{}".format(i), "y") for i in range(1, 5)])
    dims = {"x1": scale, "x2": scale, "x3": scale, "x4": scale, "y": 2 * scale}
    maps = {"a{}".format(i): Mat(2 * scale, scale, [utils.random_integers(rng, 2, scale) for _ in range(2 * scale)]) for i in range(1, 5)}
    theta = Weight({"x1": 1, "x2": 1, "x3": 1, "x4": 1, "y": -2})
    return Representation(q, dims, maps), theta, Weight.constant(q, 1)


@pytest.mark.slow
def test_doubling_dimensions_stays_within_envelope():
    rng = utils.make_rng(41)
    elapsed = []
    for scale in (1, 2):
        m, theta, kappa = four_arms(scale, rng)
        start = time.perf_counter()
        f = hn.hn_filtration(m, theta, kappa, 0)
        elapsed.append(time.perf_counter() - start)
        assert hn.verify_hn(f, theta, kappa, 1).ok
    assert elapsed[1] <= 10 * max(elapsed[0], 0.05)
