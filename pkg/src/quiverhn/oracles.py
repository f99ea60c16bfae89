# -*- coding: utf-8 -*-
"""
Independent oracles for structured instances

    - koenig_disc: disc of a matrix space spanned by elementary matrices,
      from a maximum bipartite matching
    - bipartite_disc_oracle / slope_brute: exhaustive search over the
      subrepresentations of a one-layer quiver whose positive vertices are
      sources of dimension at most one
"""

import logging
import itertools
from typing import Any, List, Tuple, Iterator, Iterable, Optional, FrozenSet
from fractions import Fraction

import networkx as nx

from . import errors
from .quiver import Weight, SubRep, Representation, weight_of, kappa_check
from .exactla import Mat, Subspace
from .shrunk import BlockGenerator, MatrixSpace

logger = logging.getLogger(__name__)

# sources enumerated exhaustively by the bipartite oracle
MAX_ORACLE_SOURCES = 16


class PatternSpace(object):
    """
    The span of the elementary matrices E_ij, (i, j) in support.

    n:          matrix size
    support:    frozenset of 0-based (row, col) positions
    """

    n: int
    support: FrozenSet[Tuple[int, int]]

    def __init__(self, n: int, support: Iterable[Tuple[int, int]]):
        self.n = n
        cells = frozenset((int(i), int(j)) for i, j in support)
        for i, j in cells:
            if not (0 <= i < n and 0 <= j < n):
                raise errors.DimensionError("position ({}, {}) outside M({})".format(i, j, n))
        self.support = cells

    def matrix_space(self) -> MatrixSpace:
        one = Mat.identity(1)
        return MatrixSpace(self.n, [BlockGenerator(i, j, one) for i, j in sorted(self.support)])

    def neighbours(self, columns: Iterable[int]) -> List[int]:
        cols = set(columns)
        return sorted({i for i, j in self.support if j in cols})

    def __repr__(self) -> str:
        return "PatternSpace(n={}, {})".format(self.n, sorted(self.support))


def pattern_of(space: MatrixSpace) -> Optional[PatternSpace]:
    """
    The pattern whose span is `space`, or None when some generator is not
    a multiple of an elementary matrix.
    """
    cells = set()
    for g in space.generators:
        nz = [(g.row + i, g.col + j) for i, r in enumerate(g.block.entries) for j, x in enumerate(r) if x]
        if len(nz) != 1:
            return None
        cells.add(nz[0])
    return PatternSpace(space.n, cells)


class KoenigResult(object):
    """
    c:          max over column sets S of |S| - |N(S)|
    columns:    a maximizing column set S
    matching:   a maximum matching as (row, col) pairs
    """

    def __init__(self, c: int, columns: List[int], matching: List[Tuple[int, int]]):
        self.c = c
        self.columns = columns
        self.matching = matching

    def __iter__(self) -> Iterator[Any]:
        return iter((self.c, self.columns))

    def __repr__(self) -> str:
        return "KoenigResult(c={}, S={}, |matching|={})".format(self.c, self.columns, len(self.matching))


def koenig_disc(p: PatternSpace) -> KoenigResult:
    """
    c = n - (maximum matching size); the columns outside a minimum vertex
    cover attain the deficiency.
    """
    rows = [("r", i) for i in range(p.n)]
    cols = [("c", j) for j in range(p.n)]
    g = nx.Graph()
    g.add_nodes_from(rows, bipartite=0)
    g.add_nodes_from(cols, bipartite=1)
    g.add_edges_from((("r", i), ("c", j)) for i, j in p.support)
    matching = nx.bipartite.hopcroft_karp_matching(g, top_nodes=cols)
    pairs = sorted((u[1], v[1]) for u, v in matching.items() if u[0] == "r")
    cover = nx.bipartite.to_vertex_cover(g, matching, top_nodes=cols)
    c = p.n - len(pairs)
    columns = [j for j in range(p.n) if ("c", j) not in cover]
    deficiency = len(columns) - len(p.neighbours(columns))
    if deficiency != c or c + len(pairs) != p.n:
        raise errors.InvariantError("matching size {} and deficiency {} disagree for {}".format(len(pairs), deficiency, p))
    return KoenigResult(c, columns, pairs)


def _check_supported(w: Representation, theta: Weight) -> List[str]:
    q = w.quiver
    sources = []
    for v in q.vertices:
        if theta[v] > 0:
            if w.dims[v] > 1:
                raise errors.UnsupportedInstance("positive vertex {} has dimension {}".format(v, w.dims[v]))
            if q.arrows_into(v):
                raise errors.UnsupportedInstance("positive vertex {} is not a source".format(v))
            if w.dims[v] == 1:
                sources.append(v)
        elif q.arrows_from(v):
            raise errors.UnsupportedInstance("arrow leaves non-positive vertex {}".format(v))
    if len(sources) > MAX_ORACLE_SOURCES:
        raise errors.UnsupportedInstance("{} sources exceed the enumeration limit {}".format(len(sources), MAX_ORACLE_SOURCES))
    return sources


def _minimal_subreps(w: Representation, sources: List[str]) -> Iterator[SubRep]:
    # for every set of chosen sources: those lines plus their images, nothing else
    for k in range(len(sources) + 1):
        for chosen in itertools.combinations(sources, k):
            picked = set(chosen)
            spaces = {x: Subspace.full(1) for x in chosen}
            for v in w.quiver.vertices:
                if v in spaces:
                    continue
                images = [w.maps[a.id].column(0) for a in w.quiver.arrows_into(v) if a.tail in picked]
                spaces[v] = Subspace(w.dims[v], images)
            yield SubRep(w, spaces)


def bipartite_disc_oracle(w: Representation, theta: Weight) -> int:
    """
    max theta(S) by enumeration.  Targets are kept minimal: enlarging a
    target never raises theta there since its weight is not positive.
    """
    sources = _check_supported(w, theta)
    best = 0
    for s in _minimal_subreps(w, sources):
        best = max(best, weight_of(theta, s))
    return best


def _enlarge(space: Subspace, extra: int) -> Subspace:
    # space plus the first `extra` standard vectors outside it
    vectors = list(space.vectors())
    n = space.ambient_dim
    current = space
    for i in range(n):
        if extra == 0:
            break
        e = [1 if j == i else 0 for j in range(n)]
        if e in current:
            continue
        vectors.append(e)
        current = Subspace(n, vectors)
        extra -= 1
    return current


def slope_brute(w: Representation, theta: Weight, kappa: Weight) -> Tuple[Fraction, SubRep]:
    """
    The largest slope among nonzero subrepresentations, and one attaining
    it of largest total dimension.  Only dimensions matter for the slope,
    so targets are enlarged by any vectors.
    """
    if not kappa_check(kappa, w.quiver):
        raise errors.WeightError("kappa must be at least 1 at every vertex: {}".format(kappa))
    if w.is_zero():
        raise errors.ZeroRepresentationError("slope of the zero representation")
    sources = _check_supported(w, theta)
    targets = [v for v in w.quiver.vertices if theta[v] <= 0]
    best: Optional[Tuple[Fraction, int]] = None
    winner: Optional[SubRep] = None
    for s in _minimal_subreps(w, sources):
        ranges = [range(s.spaces[y].dim, w.dims[y] + 1) for y in targets]
        for sizes in itertools.product(*ranges):
            dims = dict(s.dims)
            dims.update(zip(targets, sizes))
            k = weight_of(kappa, dims)
            if k == 0:
                continue
            key = (Fraction(weight_of(theta, dims), k), sum(dims.values()))
            if best is None or key > best:
                best = key
                spaces = dict(s.spaces)
                for y, size in zip(targets, sizes):
                    spaces[y] = _enlarge(s.spaces[y], size - s.spaces[y].dim)
                winner = SubRep(w, spaces)
    if best is None or winner is None:
        raise errors.InvariantError("no nonzero subrepresentation enumerated")
    return best[0], winner
