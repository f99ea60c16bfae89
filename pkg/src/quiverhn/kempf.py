# -*- coding: utf-8 -*-
"""
One-parameter subgroups adapted to an unstable representation

A 1-PS that is diagonal in a basis adapted to a filtration 0 < M_1 < ... < M_s
is described by its weights Gamma_1 > ... > Gamma_s, one per layer
M_i / M_{i-1}.  Its Hilbert-Mumford pairing with the character of a weight
theta and its kappa-weighted norm are

    <chi_theta, lambda> = sum_i Gamma_i theta(M_i / M_{i-1})
    ||lambda||^2        = sum_i Gamma_i^2 kappa(M_i / M_{i-1})

On the HN filtration the maximally destabilizing direction has
Gamma_i = u_i = kappa(M) mu(M_i / M_{i-1}) - Theta(M).  Norms and the
instability value are kept squared so they stay rational.

Limits: GL(d) acts by (g . phi)_a = g_{head a} phi_a g_{tail a}^-1, so under
lambda(t) the (k, l) entry of phi_a is scaled by t^(lambda_head[k] - lambda_tail[l]).
"""

import logging
from typing import Any, Dict, List, Tuple, Union, Optional, Sequence
from fractions import Fraction

from . import utils, errors, exactla
from .hn import Filtration
from .quiver import Weight, Representation, weight_of, kappa_check, quotient_rep
from .exactla import Mat

logger = logging.getLogger(__name__)

LIMIT_AT_ZERO = "t0"
LIMIT_AT_INFINITY = "tinf"
DEFAULT_CONVENTION = LIMIT_AT_ZERO
DEFAULT_SAMPLES = 200


class WeightedFiltration(object):
    """
    filtration: Filtration
    gammas:     one Rational per step, strictly decreasing
    """

    filtration: Filtration
    gammas: List[Fraction]

    def __init__(self, filtration: Filtration, gammas: Sequence[Union[int, Fraction, str]]):
        if len(gammas) != len(filtration.steps):
            raise errors.DimensionError("{} weights for a filtration with {} steps".format(len(gammas), len(filtration.steps)))
        self.filtration = filtration
        self.gammas = [exactla.to_rational(g) for g in gammas]
        for a, b in zip(self.gammas, self.gammas[1:]):
            if a <= b:
                raise errors.WeightError("filtration weights must strictly decrease: {}".format([str(g) for g in self.gammas]))

    def scaled(self, factor: Union[int, Fraction]) -> "WeightedFiltration":
        if factor <= 0:
            raise ValueError(f"expected a positive factor, given {factor}")
        return WeightedFiltration(self.filtration, [g * factor for g in self.gammas])

    def __repr__(self) -> str:
        return "WeightedFiltration({}, {})".format(self.filtration, [str(g) for g in self.gammas])


class OneParameterSubgroup(object):
    """
    A 1-PS diagonal in the given per-vertex bases.

    weights:    vertex -> list of weights, one per basis vector
    bases:      vertex -> Mat whose columns are the basis; identity when omitted
    source:     the WeightedFiltration it realizes, if any
    """

    weights: Dict[str, List[Fraction]]
    bases: Dict[str, Mat]
    source: Optional[WeightedFiltration]

    def __init__(self, weights: Dict[str, Sequence[Union[int, Fraction]]], bases: Optional[Dict[str, Mat]] = None, source: Optional[WeightedFiltration] = None):
        self.weights = {v: [exactla.to_rational(x) for x in w] for v, w in weights.items()}
        self.bases = {}
        for v, w in self.weights.items():
            basis = (bases or {}).get(v)
            if basis is None:
                basis = Mat.identity(len(w))
            if basis.shape != (len(w), len(w)):
                raise errors.DimensionError("basis of shape {} for {} weights at {}".format(basis.shape, len(w), v))
            self.bases[v] = basis
        self.source = source

    def flat(self, order: Optional[Sequence[str]] = None) -> List[Fraction]:
        """
        All weights, vertex by vertex.
        """
        out: List[Fraction] = []
        for v in order if order is not None else self.weights:
            out.extend(self.weights.get(v, []))
        return out

    def is_zero(self) -> bool:
        return not any(self.flat())

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, OneParameterSubgroup):
            return NotImplemented
        return self.weights == other.weights and self.bases == other.bases

    def __repr__(self) -> str:
        return "OneParameterSubgroup({})".format({v: [str(x) for x in w] for v, w in self.weights.items()})

    def to_json(self) -> Dict[str, Any]:
        return {
            "weights": {v: [str(x) for x in w] for v, w in self.weights.items()},
            "bases": {v: b.to_json() for v, b in self.bases.items()},
        }


def adapted_bases(f: Filtration) -> Tuple[Dict[str, Mat], Dict[str, List[int]]]:
    """
    Per-vertex bases of M compatible with the filtration, layer by layer,
    and the layer (1-based) of each basis vector.

    Layer i is spanned by the lift, through the section of M / M_{i-1},
    of the image of M_i.
    """
    m = f.parent
    columns: Dict[str, List[Tuple[Fraction, ...]]] = {v: [] for v in m.quiver.vertices}
    layers: Dict[str, List[int]] = {v: [] for v in m.quiver.vertices}
    for i in range(1, len(f.steps) + 1):
        quotient = quotient_rep(m, f[i - 1])
        for v in m.quiver.vertices:
            image = exactla.apply(quotient.projections[v], f[i].spaces[v])
            lifted = exactla.apply(quotient.sections[v], image)
            for vec in lifted.vectors():
                columns[v].append(vec)
                layers[v].append(i)
    bases = {v: Mat.from_columns(columns[v], m.dims[v]) for v in m.quiver.vertices}
    for v, b in bases.items():
        if b.cols != m.dims[v]:
            raise errors.InvariantError("adapted basis at {} has {} vectors, expected {}".format(v, b.cols, m.dims[v]))
    return bases, layers


def to_subgroup(wf: WeightedFiltration) -> OneParameterSubgroup:
    """
    The 1-PS acting on layer i by Gamma_i, in an adapted basis.
    """
    bases, layers = adapted_bases(wf.filtration)
    weights = {v: [wf.gammas[i - 1] for i in layers[v]] for v in layers}
    return OneParameterSubgroup(weights, bases, wf)


def hm_pairing(wf: WeightedFiltration, theta: Weight) -> Fraction:
    """
    <chi_theta, lambda>, evaluated layer by layer and by the telescoped sum
    sum_i (Gamma_i - Gamma_{i+1}) theta(M_i); the two must agree.
    """
    f = wf.filtration
    total = weight_of(theta, f.parent)
    if total != 0:
        raise errors.WeightError("theta(M) = {}, expected 0".format(total))
    layered = sum((g * weight_of(theta, q) for g, q in zip(wf.gammas, f.quotient_dims)), Fraction(0))
    telescoped = Fraction(0)
    for i, g in enumerate(wf.gammas):
        nxt = wf.gammas[i + 1] if i + 1 < len(wf.gammas) else Fraction(0)
        telescoped += (g - nxt) * weight_of(theta, f.steps[i])
    if layered != telescoped:
        raise errors.InvariantError("pairing {} by layers but {} telescoped".format(layered, telescoped))
    return layered


def hm_pairing_entrywise(ops: OneParameterSubgroup, theta: Weight) -> Fraction:
    """
    sum_v theta(v) * (sum of the weights at v), valid for any torus 1-PS.
    """
    return sum((theta[v] * sum(w, Fraction(0)) for v, w in ops.weights.items()), Fraction(0))


def norm_entrywise(ops: OneParameterSubgroup, kappa: Weight) -> Fraction:
    """
    sum_v kappa(v) * sum_i lambda_{i,v}^2
    """
    return sum((kappa[v] * sum((x * x for x in w), Fraction(0)) for v, w in ops.weights.items()), Fraction(0))


def norm(wf: WeightedFiltration, kappa: Weight) -> Fraction:
    """
    The squared kappa-norm, by layers; cross-checked against the entrywise sum
    over the expanded 1-PS.
    """
    if not kappa_check(kappa, wf.filtration.parent.quiver):
        raise errors.WeightError("kappa must be at least 1 at every vertex: {}".format(kappa))
    grouped = sum((g * g * weight_of(kappa, q) for g, q in zip(wf.gammas, wf.filtration.quotient_dims)), Fraction(0))
    entrywise = norm_entrywise(to_subgroup(wf), kappa)
    if grouped != entrywise:
        raise errors.InvariantError("squared norm {} by layers but {} entrywise".format(grouped, entrywise))
    return grouped


class KempfResult(object):
    """
    u:              Gamma of the maximally destabilizing direction on the HN filtration
    ops:            the rational 1-PS ray in the adapted bases
    instability_sq: the square of the instability value
    character:      the weight whose character u maximizes against
    weighted:       the WeightedFiltration (HN filtration, u)
    """

    def __init__(self, u: List[Fraction], ops: OneParameterSubgroup, instability_sq: Fraction, character: Weight, weighted: WeightedFiltration):
        self.u = u
        self.ops = ops
        self.instability_sq = instability_sq
        self.character = character
        self.weighted = weighted

    def __iter__(self):
        return iter((self.u, self.ops, self.instability_sq))

    def __repr__(self) -> str:
        return "KempfResult(u={}, instability_sq={})".format([str(x) for x in self.u], self.instability_sq)


def kempf_ops(f: Filtration, theta: Weight, kappa: Weight) -> KempfResult:
    """
    u_i = kappa(M) mu(M_i / M_{i-1}) - Theta(M), paired with the character of
    theta_d.  When Theta(M) = 0 the ray is scaled to u_i = mu(M_i / M_{i-1})
    and the character is Theta itself.
    """
    if len(f.steps) < 2:
        raise errors.SubrepresentationError("M is semistable, no destabilizing 1-PS")
    if not kappa_check(kappa, f.parent.quiver):
        raise errors.WeightError("kappa must be at least 1 at every vertex: {}".format(kappa))
    big_theta = weight_of(theta, f.parent)
    big_kappa = weight_of(kappa, f.parent)
    if big_theta == 0:
        u = list(f.slopes)
        character = theta
    else:
        u = [big_kappa * mu - big_theta for mu in f.slopes]
        character = Weight({v: big_kappa * theta[v] - big_theta * kappa[v] for v in f.parent.quiver.vertices})
    wf = WeightedFiltration(f, u)
    ops = to_subgroup(wf)
    instability_sq = sum((x * x * k for x, k in zip(u, f.kappa_values)), Fraction(0))
    pairing = hm_pairing(wf, character)
    norm_sq = norm(wf, kappa)
    if pairing * pairing != instability_sq * norm_sq:
        raise errors.InvariantError("pairing^2 {} differs from instability^2 * norm^2 {}".format(pairing * pairing, instability_sq * norm_sq))
    return KempfResult(u, ops, instability_sq, character, wf)


def primitive_lattice_point(ray: Union[OneParameterSubgroup, Sequence[Union[int, Fraction]]]) -> Any:
    """
    The indivisible integral point on the positive ray.  A OneParameterSubgroup
    keeps its bases; a plain sequence gives a list of ints.
    """
    if isinstance(ray, OneParameterSubgroup):
        order = list(ray.weights)
        flat = ray.flat(order)
    else:
        flat = [exactla.to_rational(x) for x in ray]
    if not any(flat):
        raise errors.WeightError("zero ray has no primitive point")
    point = utils.primitive_vector(flat)
    if not isinstance(ray, OneParameterSubgroup):
        return point
    weights = {}
    pos = 0
    for v in order:
        k = len(ray.weights[v])
        weights[v] = point[pos:pos + k]
        pos += k
    return OneParameterSubgroup(weights, ray.bases, ray.source)


def diagonal_matrices(ops: OneParameterSubgroup) -> Dict[str, Mat]:
    """
    The 1-PS in original coordinates: at each vertex P diag(weights) P^-1,
    so lambda(t) = exp(log t * X_v) acts on M_v.
    """
    out = {}
    for v, w in ops.weights.items():
        p = ops.bases[v]
        n = len(w)
        diag = Mat(n, n, [[w[i] if i == j else 0 for j in range(n)] for i in range(n)])
        out[v] = p @ diag @ exactla.inverse(p)
    return out


def in_basis(m: Representation, bases: Dict[str, Mat]) -> Representation:
    """
    M with every map written in the given per-vertex bases: P_head^-1 M(a) P_tail.
    """
    inverses = {v: exactla.inverse(b) for v, b in bases.items()}
    maps = {a.id: inverses[a.head] @ m.maps[a.id] @ bases[a.tail] for a in m.quiver.arrows}
    return Representation(m.quiver, m.dims, maps)


class LimitConstraint(object):
    """
    plus - minus >= 0, each side a (vertex, coordinate) of the 1-PS weights.

    arrow:  the arrow whose nonzero entry produced the constraint
    """

    __slots__ = ("arrow", "plus", "minus")

    def __init__(self, arrow: str, plus: Tuple[str, int], minus: Tuple[str, int]):
        self.arrow = arrow
        self.plus = plus
        self.minus = minus

    def value(self, weights: Dict[str, Sequence[Any]]) -> Any:
        return weights[self.plus[0]][self.plus[1]] - weights[self.minus[0]][self.minus[1]]

    def holds(self, weights: Dict[str, Sequence[Any]]) -> bool:
        return self.value(weights) >= 0

    def key(self) -> Tuple[Tuple[str, int], Tuple[str, int]]:
        return self.plus, self.minus

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, LimitConstraint):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return "-{}[{}] + {}[{}] >= 0".format(self.minus[0], self.minus[1], self.plus[0], self.plus[1])

    def to_json(self) -> Dict[str, Any]:
        return {"arrow": self.arrow, "plus": list(self.plus), "minus": list(self.minus)}


def limit_constraints(m: Representation, convention: str = DEFAULT_CONVENTION) -> List[LimitConstraint]:
    """
    One constraint per nonzero entry M(a)[k, l]; duplicates are dropped.

    lambda(t) acts by g_head M(a) g_tail^-1, so the entry scales by
    t^(lambda_head[k] - lambda_tail[l]).  The default takes the limit at
    t -> 0, where that exponent must be >= 0; at t -> infinity it must be
    <= 0.  The four_lines inequalities are usually stated in the t0 form
    while being labelled t -> infinity; tinf is the literal reading.
    """
    if convention not in (LIMIT_AT_ZERO, LIMIT_AT_INFINITY):
        raise ValueError(f"unknown limit convention {convention!r}")
    seen = set()
    out = []
    for a in m.quiver.arrows:
        ma = m.maps[a.id]
        for k in range(ma.rows):
            for l in range(ma.cols):
                if not ma[k, l]:
                    continue
                head = (a.head, k)
                tail = (a.tail, l)
                c = LimitConstraint(a.id, head, tail) if convention == LIMIT_AT_ZERO else LimitConstraint(a.id, tail, head)
                if c.key() in seen:
                    continue
                seen.add(c.key())
                out.append(c)
    return out


def limit_exists(ops: Union[OneParameterSubgroup, Dict[str, Sequence[Any]]], m: Representation, convention: str = DEFAULT_CONVENTION) -> Tuple[bool, List[LimitConstraint]]:
    """
    Whether lim lambda(t) . M exists, with lambda diagonal in M's coordinates.
    A OneParameterSubgroup carrying non-identity bases is checked against M
    rewritten in those bases.
    """
    if isinstance(ops, OneParameterSubgroup):
        weights: Dict[str, Sequence[Any]] = ops.weights
        if any(b != Mat.identity(b.rows) for b in ops.bases.values()):
            m = in_basis(m, ops.bases)
    else:
        weights = ops
    for v in m.quiver.vertices:
        if len(weights.get(v, ())) != m.dims[v]:
            raise errors.DimensionError("{} weights at vertex {} of dimension {}".format(len(weights.get(v, ())), v, m.dims[v]))
    constraints = limit_constraints(m, convention)
    return all(c.holds(weights) for c in constraints), constraints


class KempfReport(object):
    """
    ok:             True when no sampled point beat u
    best_ratio:     the largest signed g_u(x)^2 seen
    target:         g_u(u)^2 = (u, u)
    samples:        number of points checked
    violations:     descriptions of failed checks
    """

    def __init__(self, target: Fraction):
        self.target = target
        self.best_ratio: Optional[Fraction] = None
        self.samples = 0
        self.violations: List[str] = []

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self) -> str:
        return "KempfReport(ok={}, target={}, best={}, samples={})".format(self.ok, self.target, self.best_ratio, self.samples)

    def to_json(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "target": str(self.target),
            "best_ratio": str(self.best_ratio) if self.best_ratio is not None else None,
            "samples": self.samples,
            "violations": list(self.violations),
        }


def _inner(x: Sequence[Fraction], y: Sequence[Fraction], masses: Sequence[int]) -> Fraction:
    return sum((k * a * b for a, b, k in zip(x, y, masses)), Fraction(0))


def _proportional(x: Sequence[Fraction], u: Sequence[Fraction]) -> bool:
    # x = c u for some c > 0
    ratio = None
    for a, b in zip(x, u):
        if b == 0:
            if a != 0:
                return False
            continue
        r = Fraction(a) / b
        if ratio is None:
            ratio = r
        elif r != ratio:
            return False
    return ratio is not None and ratio > 0


def check_point(report: KempfReport, x: Sequence[Fraction], u: Sequence[Fraction], masses: Sequence[int]):
    """
    Compare g_u(x)^2 (signed) with g_u(u)^2 exactly via (x, u)^2 <= (x, x)(u, u).
    """
    xu = _inner(x, u, masses)
    xx = _inner(x, x, masses)
    uu = report.target
    report.samples += 1
    if xx == 0:
        return
    ratio = xu * xu / xx if xu >= 0 else -(xu * xu) / xx
    if report.best_ratio is None or ratio > report.best_ratio:
        report.best_ratio = ratio
    if xu > 0 and xu * xu > xx * uu:
        report.violations.append("g_u({}) exceeds g_u(u)".format([str(a) for a in x]))
    elif xu > 0 and xu * xu == xx * uu and not _proportional(x, u):
        report.violations.append("g_u({}) attains the maximum away from the ray of u".format([str(a) for a in x]))


def random_cone_point(rng, length: int, bound: int = 50) -> List[Fraction]:
    """
    A random rational point with x_1 > x_2 > ... > x_length.
    """
    steps = [int(s) for s in rng.integers(1, bound + 1, size=max(length - 1, 0))]
    start = Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, 10)))
    point = [start]
    for s in steps:
        point.append(point[-1] - Fraction(s, int(rng.integers(1, 10))))
    return point


def kempf_function_check(u: Sequence[Union[int, Fraction]], masses: Sequence[int], samples: int = DEFAULT_SAMPLES, seed: int = 0) -> KempfReport:
    """
    Sample points of the cone x_1 > ... > x_r and confirm none beats u for
    g_u(x) = (x, u) / sqrt((x, x)), with (x, y) = sum_i masses_i x_i y_i.
    """
    uu = [exactla.to_rational(x) for x in u]
    if len(uu) != len(masses):
        raise errors.DimensionError("{} coordinates but {} masses".format(len(uu), len(masses)))
    if any(k < 1 for k in masses):
        raise errors.WeightError("masses must be at least 1: {}".format(list(masses)))
    for a, b in zip(uu, uu[1:]):
        if a <= b:
            raise errors.WeightError("u is not in the open cone: {}".format([str(x) for x in uu]))
    report = KempfReport(_inner(uu, uu, masses))
    check_point(report, uu, uu, masses)
    rng = utils.make_rng(seed)
    for _ in range(samples):
        check_point(report, random_cone_point(rng, len(uu)), uu, masses)
    if report.violations:
        logger.warning("Kempf function check failed: %s", report.violations[0])
    return report
