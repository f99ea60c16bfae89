# -*- coding: utf-8 -*-
"""
Strongly contradicting semistable subrepresentations and Harder-Narasimhan
filtrations

Everything here is driven by G = disc(., theta_d): a representation is
semistable exactly when G vanishes, and otherwise F yields a proper
subrepresentation that still contains the scss.  Iterating F finds the scss;
peeling off scss's of successive quotients gives the HN filtration.

All filtration steps are kept as subrepresentations of the original M, so two
filtrations can be compared directly.
"""

import logging
from typing import Any, Dict, List, Tuple, Optional
from fractions import Fraction

from . import disc, errors, shrunk
from .quiver import Weight, SubRep, Representation, slope, weight_of, kappa_check, quotient_rep, sub_representation, is_subrep

logger = logging.getLogger(__name__)


class Filtration(object):
    """
    0 = M_0 < M_1 < ... < M_r = M.

    parent:         Representation M
    steps:          [M_1, ..., M_r] as SubReps of M
    quotient_dims:  dimension vectors of M_i / M_{i-1}
    theta_values:   Theta(M_i / M_{i-1})
    kappa_values:   kappa(M_i / M_{i-1})
    slopes:         mu(M_i / M_{i-1})

    The constructor does not check the HN conditions; see verify_hn.
    """

    parent: Representation
    steps: List[SubRep]
    quotient_dims: List[Dict[str, int]]
    theta_values: List[int]
    kappa_values: List[int]
    slopes: List[Fraction]

    def __init__(self, parent: Representation, steps: List[SubRep], theta: Weight, kappa: Weight):
        self.parent = parent
        self.steps = list(steps)
        self.theta = theta
        self.kappa = kappa
        self.quotient_dims = []
        self.theta_values = []
        self.kappa_values = []
        self.slopes = []
        prev = {v: 0 for v in parent.quiver.vertices}
        for s in self.steps:
            if s.parent is not parent and s.parent != parent:
                raise errors.SubrepresentationError("filtration step of another representation")
            dims = {v: s.spaces[v].dim - prev[v] for v in parent.quiver.vertices}
            self.quotient_dims.append(dims)
            t = weight_of(theta, dims)
            k = weight_of(kappa, dims)
            self.theta_values.append(t)
            self.kappa_values.append(k)
            self.slopes.append(Fraction(t, k) if k else Fraction(0))
            prev = s.dims

    def __len__(self) -> int:
        return len(self.steps)

    def __getitem__(self, i: int) -> SubRep:
        """
        M_i for 0 <= i <= r; M_0 is the zero subrepresentation.
        """
        if i == 0:
            return SubRep.zero(self.parent)
        return self.steps[i - 1]

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Filtration):
            return NotImplemented
        return self.steps == other.steps

    def __repr__(self) -> str:
        return "Filtration({})".format(" < ".join(str(s.dim_vector()) for s in self.steps))

    def to_json(self) -> Dict[str, Any]:
        return {
            "steps": [
                {
                    "dims": s.dims,
                    "basis": s.to_json(),
                    "quotient_dims": q,
                    "theta": t,
                    "kappa": k,
                    "slope": str(mu),
                }
                for s, q, t, k, mu in zip(self.steps, self.quotient_dims, self.theta_values, self.kappa_values, self.slopes)
            ],
        }


def scss(m: Representation, theta: Weight, kappa: Weight, seed: int, budget: int = shrunk.DEFAULT_RETRY_BUDGET) -> SubRep:
    """
    The subrepresentation of maximal slope that is largest among those.

    Starting from M, replace the current subrepresentation N by F(N) while
    G(N) > 0; every step shrinks the total dimension.
    """
    if m.is_zero():
        raise errors.ZeroRepresentationError("scss of the zero representation")
    if not kappa_check(kappa, m.quiver):
        raise errors.WeightError("kappa must be at least 1 at every vertex: {}".format(kappa))
    current = SubRep.full(m)
    rounds = 0
    while True:
        restricted = sub_representation(m, current)
        found = disc.destabilizer(restricted.rep, theta, kappa, seed, budget)
        if found.value == 0:
            break
        nxt = restricted.pushforward(found.witness)
        if nxt.is_zero() or nxt.total_dim() >= current.total_dim():
            raise errors.InvariantError("F did not return a proper nonzero subrepresentation at {}".format(current.dims))
        logger.debug("scss: G = %d, %s -> %s", found.value, current.dim_vector(), nxt.dim_vector())
        current = nxt
        rounds += 1
    if slope(theta, kappa, current) < slope(theta, kappa, m):
        raise errors.InvariantError("scss has smaller slope than M")
    logger.debug("scss found after %d rounds: %s", rounds, current.dim_vector())
    return current


def hn_filtration(m: Representation, theta: Weight, kappa: Weight, seed: int, budget: int = shrunk.DEFAULT_RETRY_BUDGET) -> Filtration:
    if m.is_zero():
        raise errors.ZeroRepresentationError("HN filtration of the zero representation")
    if not kappa_check(kappa, m.quiver):
        raise errors.WeightError("kappa must be at least 1 at every vertex: {}".format(kappa))
    steps: List[SubRep] = []
    prev = SubRep.zero(m)
    while True:
        quotient = quotient_rep(m, prev)
        top = scss(quotient.rep, theta, kappa, seed, budget)
        if top.is_full():
            steps.append(SubRep.full(m))
            break
        prev = quotient.pullback(top)
        steps.append(prev)
        logger.debug("HN step %d: %s", len(steps), prev.dim_vector())
    return Filtration(m, steps, theta, kappa)


def subquotient(f: Filtration, i: int) -> Representation:
    """
    M_i / M_{i-1} as a representation.
    """
    restricted = sub_representation(f.parent, f[i])
    lower = restricted.restrict(f[i - 1])
    return quotient_rep(restricted.rep, lower).rep


class HNReport(object):
    """
    ok:         True when no check failed
    violations: descriptions of failed checks
    """

    def __init__(self):
        self.violations: List[str] = []

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, msg: str):
        logger.warning("HN check failed: %s", msg)
        self.violations.append(msg)

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self) -> str:
        return "HNReport(ok={}, {})".format(self.ok, self.violations)

    def to_json(self) -> Dict[str, Any]:
        return {"ok": self.ok, "violations": list(self.violations)}


def verify_hn(f: Filtration, theta: Weight, kappa: Weight, seed: int, budget: int = shrunk.DEFAULT_RETRY_BUDGET) -> HNReport:
    report = HNReport()
    if not f.steps:
        report.add("empty filtration")
        return report
    if not f.steps[-1].is_full():
        report.add("last step is not M")
    prev = SubRep.zero(f.parent)
    chain_ok = True
    for i, s in enumerate(f.steps, 1):
        if not is_subrep(s):
            report.add("step {} is not a subrepresentation".format(i))
            chain_ok = False
        if not s.contains(prev) or s.total_dim() <= prev.total_dim():
            report.add("step {} does not properly contain step {}".format(i, i - 1))
            chain_ok = False
        prev = s
    rebuilt = Filtration(f.parent, f.steps, theta, kappa)
    for i in range(1, len(rebuilt.slopes)):
        if rebuilt.slopes[i] >= rebuilt.slopes[i - 1]:
            report.add("slope {} of quotient {} does not drop below {}".format(rebuilt.slopes[i], i + 1, rebuilt.slopes[i - 1]))
    if not chain_ok:
        return report
    for i in range(1, len(f.steps) + 1):
        q = subquotient(f, i)
        g = disc.G(q, theta, kappa, seed, budget)
        if g:
            report.add("quotient {} is not semistable: G = {}".format(i, g))
    return report


def theorem_a_term(f: Filtration, theta: Weight, seed: Optional[int] = None, budget: int = shrunk.DEFAULT_RETRY_BUDGET) -> Tuple[int, SubRep]:
    """
    For Theta(M) = 0, the index l with mu(M_l / M_{l-1}) > 0 >= mu(M_{l+1} / M_l).
    M_l is Theta-optimal: Theta(M_l) = disc(M, Theta).  When a seed is given
    that equality is checked against disc_witness.
    """
    total = weight_of(theta, f.parent)
    if total != 0:
        raise errors.WeightError("Theta(M) = {}, expected 0".format(total))
    if len(f.steps) < 2:
        raise errors.SubrepresentationError("M is semistable, no destabilizing term")
    slopes = f.slopes
    for l in range(1, len(slopes)):
        if slopes[l - 1] > 0 >= slopes[l]:
            break
    else:
        raise errors.InvariantError("no sign change in the slopes {}".format([str(s) for s in slopes]))
    term = f[l]
    if seed is not None:
        value = disc.disc_witness(f.parent, theta, seed, budget).value
        if weight_of(theta, term) != value:
            raise errors.InvariantError("Theta(M_{}) = {} but disc = {}".format(l, weight_of(theta, term), value))
    return l, term


def hn_type(f: Filtration) -> List[Tuple[Tuple[int, ...], Fraction]]:
    """
    The HN type: quotient dimension vectors with their slopes.
    """
    order = f.parent.quiver.vertices
    return [(tuple(q[v] for v in order), mu) for q, mu in zip(f.quotient_dims, f.slopes)]
