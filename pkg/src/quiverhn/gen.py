# -*- coding: utf-8 -*-
"""
Reproducible random instances

Every instance is a pure function of (GenSpec, index): the random stream is
numpy's default generator seeded with (seed, index, attempt).
"""

import logging
from typing import Dict, List, Tuple, Optional
from dataclasses import dataclass

from . import utils, errors
from .quiver import Arrow, Quiver, Weight, Representation, weight_of, enumerate_paths
from .exactla import Mat
from .oracles import PatternSpace

logger = logging.getLogger(__name__)

GENERAL = "general"
BIPARTITE = "bipartite"

ENTRY_BOUND = 3
MAX_ATTEMPTS = 64


@dataclass(frozen=True)
class GenSpec:
    seed: int = 0
    max_vertices: int = 5
    max_dim: int = 4
    density: float = 0.5
    weight_bound: int = 5
    kappa_bound: int = 3
    kind: str = GENERAL
    balanced: bool = False
    max_depth: int = 3


def _random_map(rng, rows: int, cols: int) -> Mat:
    values = utils.random_integers(rng, ENTRY_BOUND, rows * cols)
    return Mat(rows, cols, [values[i * cols:(i + 1) * cols] for i in range(rows)])


def _balance(theta: Dict[str, int], dims: Dict[str, int], limits: Dict[str, Tuple[int, int]], rng) -> bool:
    """
    Shift theta by one at a time until theta(dims) = 0, always at a vertex
    with the most room left inside its limits.  False when no vertex can move.
    """
    order = [v for v in (list(limits)[int(i)] for i in rng.permutation(len(limits))) if dims[v]]
    total = sum(theta[v] * dims[v] for v in dims)
    while total:
        step = -1 if total > 0 else 1
        # room left before theta[v] + step leaves its limits
        room = {v: theta[v] - limits[v][0] if step < 0 else limits[v][1] - theta[v] for v in order}
        movable = [v for v in order if dims[v] <= abs(total) and room[v] > 0]
        if not movable:
            return False
        v = max(movable, key=room.__getitem__)
        theta[v] += step
        total += step * dims[v]
    return True


def _general(spec: GenSpec, rng) -> Optional[Tuple[Representation, Weight, Weight]]:
    n = int(rng.integers(1, spec.max_vertices + 1))
    names = ["v{}".format(i) for i in range(n)]
    order = [names[int(i)] for i in rng.permutation(n)]
    depth = {v: 0 for v in names}
    arrows: List[Arrow] = []
    for j in range(n):
        for i in range(j):
            tail, head = order[i], order[j]
            if depth[tail] + 1 > spec.max_depth:
                continue
            copies = 0
            while copies < 2 and rng.random() < spec.density / (1 + 3 * copies):
                copies += 1
            for _ in range(copies):
                arrows.append(Arrow("a{}".format(len(arrows)), tail, head))
            if copies:
                depth[head] = max(depth[head], depth[tail] + 1)
    q = Quiver(names, arrows)
    dims = {v: int(rng.integers(0, spec.max_dim + 1)) for v in names}
    if not any(dims.values()):
        dims[names[0]] = 1
    if spec.balanced and 1 not in dims.values():
        dims[names[int(rng.integers(0, n))]] = 1
    maps = {a.id: _random_map(rng, dims[a.head], dims[a.tail]) for a in arrows}
    m = Representation(q, dims, maps)
    theta = {v: int(rng.integers(-spec.weight_bound, spec.weight_bound + 1)) for v in names}
    kappa = Weight({v: int(rng.integers(1, spec.kappa_bound + 1)) for v in names})
    if spec.balanced and not _balance(theta, dims, {v: (-spec.weight_bound, spec.weight_bound) for v in names}, rng):
        return None
    return m, Weight(theta), kappa


def _bipartite(spec: GenSpec, rng) -> Optional[Tuple[Representation, Weight, Weight]]:
    s = int(rng.integers(1, max(2, spec.max_vertices - 1)))
    t = int(rng.integers(1, max(2, spec.max_vertices - s + 1)))
    sources = ["x{}".format(i + 1) for i in range(s)]
    sinks = ["y{}".format(j + 1) for j in range(t)]
    arrows = []
    for x in sources:
        for y in sinks:
            if rng.random() < spec.density:
                arrows.append(Arrow("a{}".format(len(arrows) + 1), x, y))
    q = Quiver(sources + sinks, arrows)
    dims = {x: 1 for x in sources}
    dims.update({y: int(rng.integers(1, spec.max_dim + 1)) for y in sinks})
    maps = {a.id: _random_map(rng, dims[a.head], 1) for a in arrows}
    m = Representation(q, dims, maps)
    theta = {x: int(rng.integers(1, spec.weight_bound + 1)) for x in sources}
    theta.update({y: int(rng.integers(-spec.weight_bound, 1)) for y in sinks})
    # sources stay positive and sinks non-positive
    limits = {x: (1, spec.weight_bound) for x in sources}
    limits.update({y: (-spec.weight_bound, 0) for y in sinks})
    if spec.balanced and not _balance(theta, dims, limits, rng):
        return None
    kappa = Weight({v: int(rng.integers(1, spec.kappa_bound + 1)) for v in sources + sinks})
    return m, Weight(theta), kappa


def check_class(spec: GenSpec, m: Representation, theta: Weight, kappa: Weight):
    """
    Raise InvariantError unless the instance satisfies its class guarantees.
    """
    if spec.balanced and weight_of(theta, m) != 0:
        raise errors.InvariantError("generated instance has Theta(M) = {}".format(weight_of(theta, m)))
    if any(abs(theta[v]) > spec.weight_bound for v in m.quiver.vertices):
        raise errors.InvariantError("generated weight outside [-{0}, {0}]: {1}".format(spec.weight_bound, theta))
    if any(kappa[v] < 1 for v in m.quiver.vertices):
        raise errors.InvariantError("generated kappa below 1: {}".format(kappa))
    if spec.kind == BIPARTITE:
        for v in m.quiver.vertices:
            if theta[v] > 0 and (m.dims[v] > 1 or m.quiver.arrows_into(v)):
                raise errors.InvariantError("positive vertex {} breaks the oracle preconditions".format(v))
            if theta[v] <= 0 and m.quiver.arrows_from(v):
                raise errors.InvariantError("arrow leaves non-positive vertex {}".format(v))


def gen_instance(spec: GenSpec, index: int) -> Tuple[Representation, Weight, Weight]:
    if spec.kind not in (GENERAL, BIPARTITE):
        raise ValueError(f"unknown instance class {spec.kind!r}")
    for attempt in range(MAX_ATTEMPTS):
        rng = utils.make_rng(spec.seed, index, attempt)
        if spec.kind == GENERAL:
            out = _general(spec, rng)
        else:
            out = _bipartite(spec, rng)
        if out is None:
            continue
        m, theta, kappa = out
        check_class(spec, m, theta, kappa)
        logger.debug("instance %d: dims %s, %d arrows, %d paths", index, m.dims, len(m.quiver.arrows), enumerate_paths(m.quiver)[1])
        return m, theta, kappa
    raise errors.ValidationError("no instance of class {} after {} attempts".format(spec.kind, MAX_ATTEMPTS))


def gen_pattern(seed: int, index: int, max_n: int = 6, density: float = 0.3) -> PatternSpace:
    """
    A random support pattern of size 1..max_n.
    """
    rng = utils.make_rng(seed, index)
    n = int(rng.integers(1, max_n + 1))
    mask = rng.random((n, n)) < density
    return PatternSpace(n, [(int(i), int(j)) for i, j in zip(*mask.nonzero())])


def gen_stream(spec: GenSpec, count: int) -> List[Tuple[Representation, Weight, Weight]]:
    return [gen_instance(spec, i) for i in range(count)]
