# -*- coding: utf-8 -*-
"""
Discrepancy of a representation

disc(W, theta) is the largest theta(S) over subrepresentations S of W, for a
weight with theta(W) = 0.  It is computed through a matrix space A(W, theta)
of size N = sum over positive vertices of theta(x) d(x): the columns hold
theta(x_i) copies of W_{x_i}, the rows theta(-y_j) copies of W_{y_j}, and
every (row copy, column copy) pair of a path x_i -> y_j contributes W(p) as a
block.  disc(A) = disc(W, theta) and the minimal shrunk subspace of A
restricts to an optimal subrepresentation.
"""

import logging
from typing import Any, Dict, List, Tuple, Optional

from . import utils, errors, shrunk
from .quiver import Weight, SubRep, Representation, is_subrep, theta_d, path_maps, weight_of, kappa_check, invariant_closure
from .exactla import Subspace
from .shrunk import BlockFamily, MatrixSpace, ShrunkCertificate

logger = logging.getLogger(__name__)


class BlockIndex(object):
    """
    Layout of A(W, theta).

    positives:      [(vertex, theta(x), d(x))] for theta(x) > 0, d(x) > 0
    negatives:      [(vertex, -theta(y), d(y))] for theta(y) < 0, d(y) > 0
    column_slots:   per positive vertex, the column offset of each of its copies
    row_slots:      per negative vertex, the row offset of each of its copies
    N:              matrix size
    """

    positives: List[Tuple[str, int, int]]
    negatives: List[Tuple[str, int, int]]
    column_slots: List[List[int]]
    row_slots: List[List[int]]
    N: int

    def __init__(self, positives: List[Tuple[str, int, int]], negatives: List[Tuple[str, int, int]]):
        self.positives = positives
        self.negatives = negatives
        self.column_slots = []
        offset = 0
        for _, mult, d in positives:
            self.column_slots.append([offset + k * d for k in range(mult)])
            offset += mult * d
        n_cols = offset
        self.row_slots = []
        offset = 0
        for _, mult, d in negatives:
            self.row_slots.append([offset + k * d for k in range(mult)])
            offset += mult * d
        if offset != n_cols:
            raise errors.WeightError("positive side has size {} but negative side {}; theta(W) must vanish".format(n_cols, offset))
        self.N = n_cols

    @property
    def column_intervals(self) -> List[range]:
        """
        I+_i: the copy numbers belonging to x_i, numbered consecutively from 0.
        """
        out = []
        start = 0
        for _, mult, _ in self.positives:
            out.append(range(start, start + mult))
            start += mult
        return out

    @property
    def row_intervals(self) -> List[range]:
        out = []
        start = 0
        for _, mult, _ in self.negatives:
            out.append(range(start, start + mult))
            start += mult
        return out

    def to_json(self) -> Dict[str, Any]:
        return {
            "N": self.N,
            "positives": [{"vertex": v, "theta": t, "dim": d} for v, t, d in self.positives],
            "negatives": [{"vertex": v, "theta": -t, "dim": d} for v, t, d in self.negatives],
        }


def _split_weight(w: Representation, theta: Weight) -> Tuple[List[Tuple[str, int, int]], List[Tuple[str, int, int]]]:
    pos = []
    neg = []
    for v in w.quiver.vertices:
        d = w.dims[v]
        if d == 0:
            continue
        t = theta[v]
        if t > 0:
            pos.append((v, t, d))
        elif t < 0:
            neg.append((v, -t, d))
    return pos, neg


def build_matrix_space(w: Representation, theta: Weight) -> Tuple[MatrixSpace, BlockIndex]:
    if weight_of(theta, w) != 0:
        raise errors.WeightError("theta(W) = {}, expected 0".format(weight_of(theta, w)))
    pos, neg = _split_weight(w, theta)
    index = BlockIndex(pos, neg)
    if not pos or not neg:
        return MatrixSpace(index.N), index
    maps = path_maps(w)
    families = []
    raw = 0
    for i, (x, _, _) in enumerate(pos):
        for j, (y, _, _) in enumerate(neg):
            blocks = [wp for _, wp in maps.get((x, y), []) if not wp.is_zero()]
            if not blocks:
                continue
            # every (row copy, column copy) pair of a path x -> y carries W(p)
            families.append(BlockFamily(index.row_slots[j], index.column_slots[i], blocks, tag=(x, y)))
            raw += len(blocks) * len(index.row_slots[j]) * len(index.column_slots[i])
    space = MatrixSpace(index.N, families=families)
    logger.debug("A(W, theta): N=%d, %d raw generators in %d families, basis of %d", index.N, raw, len(families), space.dim)
    return space, index


class DiscWitness(object):
    """
    value:          disc(W, theta)
    witness:        SubRep with theta(witness) = value
    certificate:    ShrunkCertificate for A(W, theta / scale), or None in degenerate cases
    block_index:    BlockIndex of that matrix space
    scale:          gcd the weight was divided by
    """

    value: int
    witness: SubRep
    certificate: Optional[ShrunkCertificate]
    block_index: Optional[BlockIndex]
    scale: int

    def __init__(self, value: int, witness: SubRep, certificate: Optional[ShrunkCertificate] = None, block_index: Optional[BlockIndex] = None, scale: int = 1):
        self.value = value
        self.witness = witness
        self.certificate = certificate
        self.block_index = block_index
        self.scale = scale

    def __repr__(self) -> str:
        return "DiscWitness(value={}, witness={})".format(self.value, self.witness)

    def to_json(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "witness": self.witness.to_json(),
            "certificate": self.certificate.to_json() if self.certificate is not None else None,
            "block_index": self.block_index.to_json() if self.block_index is not None else None,
            "scale": self.scale,
        }


def _recover_witness(w: Representation, index: BlockIndex, u: Subspace) -> Optional[SubRep]:
    # U must be the direct sum of theta(x_i) equal copies of W'_{x_i}
    positive_spaces: Dict[str, Subspace] = {}
    copies = []
    for (x, _, dx), slots in zip(index.positives, index.column_slots):
        pieces = {Subspace(dx, [v[off:off + dx] for v in u.vectors()]) for off in slots}
        if len(pieces) != 1:
            logger.debug("projections of U onto the copies of %s differ", x)
            return None
        wx = pieces.pop()
        positive_spaces[x] = wx
        copies.extend((off, wx) for off in slots)
    if Subspace.placed(index.N, copies) != u:
        logger.debug("shrunk subspace is not a sum of per-vertex copies")
        return None
    closure = invariant_closure(w, positive_spaces)
    for x, wx in positive_spaces.items():
        if closure.spaces[x] != wx:
            logger.debug("closure grows at positive vertex %s", x)
            return None
    return closure


def reduced_weight(w: Representation, theta: Weight) -> Tuple[Weight, int]:
    """
    theta divided by the gcd g of its values on the support of W, and g.
    Vertices outside the support get weight zero; g = 0 when theta vanishes there.
    """
    scale = utils.gcd_of(theta[v] for v in w.quiver.vertices if w.dims[v])
    if scale == 0:
        return Weight({}), 0
    return Weight({v: theta[v] // scale if w.dims[v] else 0 for v in w.quiver.vertices}), scale


def disc_witness(w: Representation, theta: Weight, seed: int, budget: int = shrunk.DEFAULT_RETRY_BUDGET) -> DiscWitness:
    total = weight_of(theta, w)
    if total != 0:
        raise errors.WeightError("theta(W) = {}, expected 0".format(total))
    reduced, scale = reduced_weight(w, theta)
    if scale == 0:
        return DiscWitness(0, SubRep.zero(w))
    pos, neg = _split_weight(w, reduced)
    if not pos:
        return DiscWitness(0, SubRep.zero(w), scale=scale)
    if not neg:
        # unreachable while theta(W) = 0
        sub = invariant_closure(w, {x: Subspace.full(d) for x, _, d in pos})
        return DiscWitness(sum(t * d for _, t, d in pos) * scale, sub, scale=scale)

    space, index = build_matrix_space(w, reduced)
    for attempt in range(budget):
        run_seed = seed if attempt == 0 else int(utils.make_rng(seed, attempt).integers(2 ** 31))
        cert = shrunk.min_shrunk(space, run_seed, budget)
        sub = _recover_witness(w, index, cert.U)
        if sub is None:
            logger.warning("attempt %d: shrunk subspace does not translate back to a subrepresentation, retrying", attempt)
            continue
        if not is_subrep(sub):
            logger.warning("attempt %d: recovered spaces are not invariant, retrying", attempt)
            continue
        if weight_of(reduced, sub) != cert.c:
            logger.warning("attempt %d: theta(W') = %d, expected %d, retrying", attempt, weight_of(reduced, sub), cert.c)
            continue
        return DiscWitness(cert.c * scale, sub, cert, index, scale)
    raise errors.ValidationError("no validated discrepancy witness within budget {}".format(budget))


def destabilizer(m: Representation, theta: Weight, kappa: Weight, seed: int, budget: int = shrunk.DEFAULT_RETRY_BUDGET) -> DiscWitness:
    """
    disc_witness for theta_d, the weight that vanishes on M.
    """
    if not kappa_check(kappa, m.quiver):
        raise errors.WeightError("kappa must be at least 1 at every vertex: {}".format(kappa))
    return disc_witness(m, theta_d(theta, kappa, m.dims), seed, budget)


def F(m: Representation, theta: Weight, kappa: Weight, seed: int, budget: int = shrunk.DEFAULT_RETRY_BUDGET) -> SubRep:
    """
    A subrepresentation attaining disc(M, theta_d).
    """
    return destabilizer(m, theta, kappa, seed, budget).witness


def G(m: Representation, theta: Weight, kappa: Weight, seed: int, budget: int = shrunk.DEFAULT_RETRY_BUDGET) -> int:
    """
    disc(M, theta_d); zero exactly when M is semistable.
    """
    return destabilizer(m, theta, kappa, seed, budget).value


def random_closure(w: Representation, seed: int, stream: int = 0) -> SubRep:
    """
    The invariant closure of random vectors placed at a random set of vertices.
    """
    rng = utils.make_rng(seed, stream)
    spaces = {}
    for v in w.quiver.vertices:
        d = w.dims[v]
        if d == 0 or rng.random() < 0.5:
            continue
        count = int(rng.integers(1, d + 1))
        spaces[v] = Subspace(d, [utils.random_integers(rng, 3, d) for _ in range(count)])
    return invariant_closure(w, spaces)


def upper_bound_check(w: Representation, theta: Weight, value: int, samples: int, seed: int) -> List[SubRep]:
    """
    Sample invariant closures and return those with theta(S) > value.
    An empty list means no counterexample to theta(S) <= disc was found.
    """
    bad = []
    for k in range(samples):
        s = random_closure(w, seed, k)
        if not is_subrep(s):
            raise errors.InvariantError("invariant closure is not a subrepresentation")
        if weight_of(theta, s) > value:
            logger.warning("subrepresentation %s has theta %d above %d", s, weight_of(theta, s), value)
            bad.append(s)
    return bad
