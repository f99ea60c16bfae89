# -*- coding: utf-8 -*-
"""
Matrix spaces, blow-ups, second Wong sequences and shrunk subspaces

A subspace U of Q^n is c-shrunk for a matrix space B when
dim U - dim B(U) >= c, where B(U) is the sum of g(U) over the generators.
The largest such c is disc(B) = n - ncrank(B).

min_shrunk finds c together with a certificate checkable from both sides:

    - U with dim U - dim B(U) = c shows disc(B) >= c
    - a point of the d-blow-up of rank r with ceil(r / d) = n - c shows
      ncrank(B) >= n - c, i.e. disc(B) <= c

A space is stored as block families: one family spans E_qr (x) b for all of
its row offsets q, column offsets r and blocks b, so the many copies of a
block never have to be listed.  Points are sampled at random from the
blow-ups.  Large blow-ups are searched modulo word-sized primes and the
resulting subspace is lifted to the rationals; the certificate is always
re-checked exactly, so a bad sample or a bad prime costs time, never
correctness.
"""

import logging
from typing import Any, Dict, List, Tuple, Union, Iterator, Optional, Sequence
from fractions import Fraction

import numpy as np

from . import utils, errors, exactla, modular
from .exactla import Mat, Subspace

logger = logging.getLogger(__name__)

# samples per blow-up degree; the coefficient range doubles after every failed sample
DEFAULT_RETRY_BUDGET = 6
# independent runs whose minimal subspaces are intersected
DEFAULT_TIGHTEN_ROUNDS = 2
# blow-ups larger than this are searched modulo primes
MODULAR_THRESHOLD = 40

_ZERO = Fraction(0)


class BlockGenerator(object):
    """
    A generator that is zero outside one rectangular block.

    row:        row offset of the block
    col:        column offset of the block
    block:      Mat holding the nonzero part
    tag:        optional label, e.g. the (x, y, q, r) of the disc construction
    """

    __slots__ = ("row", "col", "block", "tag")

    def __init__(self, row: int, col: int, block: Mat, tag: Any = None):
        self.row = row
        self.col = col
        self.block = block
        self.tag = tag

    @property
    def position(self) -> Tuple[int, int, int, int]:
        return self.row, self.col, self.block.rows, self.block.cols

    def dense(self, n: int) -> Mat:
        data = [[_ZERO] * n for _ in range(n)]
        for i, r in enumerate(self.block.entries):
            data[self.row + i][self.col:self.col + self.block.cols] = r
        return Mat._wrap(n, n, tuple(tuple(r) for r in data))

    def apply_vector(self, v: Sequence[Fraction], n: int) -> Tuple[Fraction, ...]:
        part = self.block.apply_vector(v[self.col:self.col + self.block.cols])
        out = [_ZERO] * n
        out[self.row:self.row + self.block.rows] = part
        return tuple(out)

    def __repr__(self) -> str:
        return "BlockGenerator(at=({}, {}), {}x{})".format(self.row, self.col, self.block.rows, self.block.cols)


def _flat(m: Mat) -> Tuple[Fraction, ...]:
    return tuple(x for r in m.entries for x in r)


def _unflat(values: Sequence[Fraction], rows: int, cols: int) -> Mat:
    return Mat._wrap(rows, cols, tuple(tuple(values[i * cols:(i + 1) * cols]) for i in range(rows)))


def _disjoint_intervals(offsets: Sequence[int], length: int) -> bool:
    return all(a + length <= b for a, b in zip(offsets, offsets[1:]))


class BlockFamily(object):
    """
    The span of E_qr (x) b over every row offset q, column offset r and
    block b: each (row copy, column copy) rectangle carries the same space
    of blocks.

    rows:       sorted row offsets, the intervals [q, q + height) disjoint
    cols:       sorted column offsets, likewise
    blocks:     linearly independent Mats of shape height x width
    tag:        optional label
    """

    __slots__ = ("rows", "cols", "blocks", "tag", "height", "width", "_span", "_residues")

    rows: Tuple[int, ...]
    cols: Tuple[int, ...]
    blocks: List[Mat]

    def __init__(self, rows: Sequence[int], cols: Sequence[int], blocks: Sequence[Mat], tag: Any = None, _independent: bool = False):
        if not blocks:
            raise errors.DimensionError("a block family needs at least one block")
        self.height, self.width = blocks[0].shape
        if any(b.shape != blocks[0].shape for b in blocks):
            raise errors.DimensionError("blocks of differing shapes in one family")
        self.rows = tuple(sorted(rows))
        self.cols = tuple(sorted(cols))
        if not _disjoint_intervals(self.rows, self.height) or not _disjoint_intervals(self.cols, self.width):
            raise errors.DimensionError("copies of a {}x{} block overlap".format(self.height, self.width))
        self.tag = tag
        self._residues: Dict[int, np.ndarray] = {}
        self._span = Subspace(self.height * self.width, [_flat(b) for b in blocks])
        if _independent or self._span.dim == len(blocks):
            self.blocks = list(blocks)
        else:
            logger.debug("%d blocks span dimension %d", len(blocks), self._span.dim)
            self.blocks = [_unflat([Fraction(x) for x in utils.integer_row(v)], self.height, self.width) for v in self._span.vectors()]

    @property
    def dim(self) -> int:
        return len(self.rows) * len(self.cols) * len(self.blocks)

    def span(self) -> Subspace:
        """
        The span of the blocks in Q^(height*width), row-major.
        """
        return self._span

    def row_index(self) -> np.ndarray:
        return np.array([q + t for q in self.rows for t in range(self.height)], dtype=np.intp)

    def col_index(self) -> np.ndarray:
        return np.array([r + t for r in self.cols for t in range(self.width)], dtype=np.intp)

    def residues(self, p: int) -> np.ndarray:
        """
        The blocks mod p, shape (blocks, height, width).
        """
        if p not in self._residues:
            self._residues[p] = np.stack([modular.residues(b, p) for b in self.blocks])
        return self._residues[p]

    def generators(self) -> Iterator[BlockGenerator]:
        for q in self.rows:
            for r in self.cols:
                for b in self.blocks:
                    yield BlockGenerator(q, r, b, tag=(self.tag, q, r))

    def blown_up(self, n: int, d: int) -> "BlockFamily":
        rows = [k * n + q for k in range(d) for q in self.rows]
        cols = [l * n + r for l in range(d) for r in self.cols]
        return BlockFamily(rows, cols, self.blocks, tag=self.tag, _independent=True)

    def __repr__(self) -> str:
        return "BlockFamily({} x {} copies of {} blocks {}x{})".format(len(self.rows), len(self.cols), len(self.blocks), self.height, self.width)


def _covers(f: BlockFamily) -> Tuple[set, set]:
    return set(f.row_index().tolist()), set(f.col_index().tolist())


class MatrixSpace(object):
    """
    A linear subspace of n x n rational matrices, stored as block families
    whose rectangles are pairwise disjoint.

    n:          size of the square matrices
    families:   list of BlockFamily
    """

    n: int
    families: List[BlockFamily]

    def __init__(self, n: int, generators: Sequence[Union[Mat, BlockGenerator]] = (), families: Sequence[BlockFamily] = ()):
        if n < 0:
            raise errors.DimensionError("negative matrix space size {}".format(n))
        self.n = n
        blocks = []
        for g in generators:
            if isinstance(g, Mat):
                if g.shape != (n, n):
                    raise errors.DimensionError("generator of shape {} in M({})".format(g.shape, n))
                g = BlockGenerator(0, 0, g)
            if g.row < 0 or g.col < 0 or g.row + g.block.rows > n or g.col + g.block.cols > n:
                raise errors.DimensionError("block {} does not fit in M({})".format(g, n))
            blocks.append(g)
        for f in families:
            if (f.rows and (f.rows[0] < 0 or f.rows[-1] + f.height > n)) or (f.cols and (f.cols[0] < 0 or f.cols[-1] + f.width > n)):
                raise errors.DimensionError("{} does not fit in M({})".format(f, n))
        self.families = _disjoint_families(n, blocks, list(families))
        self._generators: Optional[List[BlockGenerator]] = None
        self._dense_span: Optional[Subspace] = None

    @classmethod
    def full(cls, n: int) -> "MatrixSpace":
        if n == 0:
            return cls(0)
        return cls(n, families=[BlockFamily(range(n), range(n), [Mat.identity(1)])])

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.families)

    @property
    def generators(self) -> List[BlockGenerator]:
        """
        A basis of positioned blocks, listed family by family.
        """
        if self._generators is None:
            self._generators = [g for f in self.families for g in f.generators()]
        return self._generators

    def dense_generators(self) -> List[Mat]:
        return [g.dense(self.n) for g in self.generators]

    def dense_span(self) -> Subspace:
        """
        The span as a subspace of Q^(n*n), row-major.
        """
        if self._dense_span is None:
            self._dense_span = Subspace(self.n * self.n, [_flat(g) for g in self.dense_generators()])
        return self._dense_span

    def __contains__(self, m: Mat) -> bool:
        if m.shape != (self.n, self.n):
            return False
        covered = np.zeros((self.n, self.n), dtype=bool)
        for f in self.families:
            span = f.span()
            for q in f.rows:
                for r in f.cols:
                    if _flat(m.submatrix(q, q + f.height, r, r + f.width)) not in span:
                        return False
            covered[np.ix_(f.row_index(), f.col_index())] = True
        return not any(x and not covered[i, j] for i, row in enumerate(m.entries) for j, x in enumerate(row))

    def __repr__(self) -> str:
        return "MatrixSpace(n={}, dim={})".format(self.n, self.dim)


def _disjoint_families(n: int, blocks: List[BlockGenerator], families: List[BlockFamily]) -> List[BlockFamily]:
    """
    Group positioned blocks by rectangle, reduce each group to a basis and
    check that no two families overlap; overlapping rectangles are reduced
    densely into one family.
    """
    groups: Dict[Tuple[int, int, int, int], List[Mat]] = {}
    for g in blocks:
        if g.block.rows == 0 or g.block.cols == 0:
            continue
        groups.setdefault(g.position, []).append(g.block)
    out = list(families)
    for (row, col, _, _), members in groups.items():
        f = BlockFamily((row,), (col,), members)
        if f.span().dim:
            out.append(f)
    covers = [_covers(f) for f in out]
    disjoint = all(not (a[0] & b[0] and a[1] & b[1]) for i, a in enumerate(covers) for b in covers[i + 1:])
    if disjoint:
        return out
    logger.debug("overlapping generator blocks, reducing the span densely")
    span = Subspace(n * n, [_flat(g.dense(n)) for f in out for g in f.generators()])
    if span.is_zero():
        return []
    return [BlockFamily((0,), (0,), [_unflat(v, n, n) for v in span.vectors()], _independent=True)]


class SampledPoint(object):
    """
    A point sum K[q, r, b] E_qr (x) b of a matrix space, kept as its integer
    coefficients so it can be reduced mod p without building it.

    space:          the MatrixSpace sampled from
    coefficients:   per family, an int64 array of shape (rows, cols, blocks)
    """

    def __init__(self, space: MatrixSpace, coefficients: List[np.ndarray]):
        self.space = space
        self.coefficients = coefficients
        self._exact: Optional[Mat] = None

    def exact(self) -> Mat:
        if self._exact is None:
            n = self.space.n
            data = [[_ZERO] * n for _ in range(n)]
            for f, k in zip(self.space.families, self.coefficients):
                entries = [b.entries for b in f.blocks]
                for qi, q in enumerate(f.rows):
                    for ri, r in enumerate(f.cols):
                        terms = [(int(c), e) for c, e in zip(k[qi, ri], entries) if c]
                        if not terms:
                            continue
                        for i in range(f.height):
                            target = data[q + i]
                            for j in range(f.width):
                                target[r + j] = sum((c * e[i][j] for c, e in terms), _ZERO)
            self._exact = Mat._wrap(n, n, tuple(tuple(r) for r in data))
        return self._exact

    def residues(self, p: int) -> np.ndarray:
        """
        The point mod p; ZeroDivisionError when p divides a denominator of a block.
        """
        out = np.zeros((self.space.n, self.space.n), dtype=np.int64)
        for f, k in zip(self.space.families, self.coefficients):
            blocks = f.residues(p)
            kk = k % p
            acc = np.zeros((len(f.rows), len(f.cols), f.height, f.width), dtype=np.int64)
            for b in range(len(f.blocks)):
                acc = (acc + kk[:, :, b, None, None] * blocks[b][None, None]) % p
            out[np.ix_(f.row_index(), f.col_index())] = acc.transpose(0, 2, 1, 3).reshape(len(f.rows) * f.height, len(f.cols) * f.width)
        return out


class ShrunkCertificate(object):
    """
    n:          size of the matrix space
    U:          the shrunk subspace of Q^n
    c:          dim U - dim B(U)
    BU:         B(U)
    degree:     blow-up degree d of the witness point
    point:      an element of the d-blow-up, an nd x nd Mat
    rank:       rank r of the point
    """

    n: int
    U: Subspace
    c: int
    BU: Subspace
    degree: int
    point: Mat
    rank: int

    def __init__(self, n: int, U: Subspace, c: int, BU: Subspace, degree: int, point: Mat, rank: int):
        self.n = n
        self.U = U
        self.c = c
        self.BU = BU
        self.degree = degree
        self.point = point
        self.rank = rank

    def __repr__(self) -> str:
        return "ShrunkCertificate(n={}, c={}, dim U={}, d={}, rank={})".format(self.n, self.c, self.U.dim, self.degree, self.rank)

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "c": self.c,
            "U": self.U.to_json(),
            "BU": self.BU.to_json(),
            "blowup_degree": self.degree,
            "blowup_point": self.point.to_json(),
            "blowup_rank": self.rank,
        }

    @classmethod
    def from_json(cls, doc: Dict[str, Any]) -> "ShrunkCertificate":
        try:
            n = int(doc["n"])
            d = int(doc["blowup_degree"])
            return cls(
                n,
                Subspace(n, doc["U"]),
                int(doc["c"]),
                Subspace(n, doc["BU"]),
                d,
                Mat.from_json(doc["blowup_point"], n * d, n * d),
                int(doc["blowup_rank"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise errors.InstanceFormatError("malformed certificate: {!r}".format(e))


def space_image(space: MatrixSpace, u: Subspace) -> Subspace:
    """
    B(U) = sum over generators g of g(U).

    Per family, the column copies of U are gathered into one small subspace
    P and the image span{b(P)} is placed at every row copy.
    """
    if u.ambient_dim != space.n:
        raise errors.DimensionError("subspace of Q^{} for matrix space M({})".format(u.ambient_dim, space.n))
    if u.is_zero() or not space.families:
        return Subspace.zero(space.n)
    groups: Dict[Tuple[Tuple[int, ...], int], List[Tuple[Fraction, ...]]] = {}
    for f in space.families:
        source = Subspace(f.width, [v[r:r + f.width] for r in f.cols for v in u.vectors()])
        if source.is_zero():
            continue
        images = groups.setdefault((f.rows, f.height), [])
        for b in f.blocks:
            images.extend(b.apply_vector(s) for s in source.vectors())
    pieces = []
    for (rows, height), images in groups.items():
        v = Subspace(height, images)
        pieces.extend((q, v) for q in rows)
    return Subspace.placed(space.n, pieces)


def blow_up(space: MatrixSpace, d: int) -> MatrixSpace:
    """
    The span of E_kl (x) g acting on Q^(nd), with Q^(nd) = Q^d (x) Q^n, so
    block (k, l) of a point is an element of B.
    """
    if d < 1:
        raise ValueError(f"blow-up degree must be positive, given {d}")
    if d == 1:
        return space
    return MatrixSpace(space.n * d, families=[f.blown_up(space.n, d) for f in space.families])


def sample_point(space: MatrixSpace, rng: np.random.Generator, bound: int) -> SampledPoint:
    """
    A random element with every coefficient an integer in [-bound, bound].
    """
    coefficients = [rng.integers(-bound, bound + 1, size=(len(f.rows), len(f.cols), len(f.blocks)), dtype=np.int64) for f in space.families]
    return SampledPoint(space, coefficients)


def random_point(space: MatrixSpace, rng: np.random.Generator, bound: int) -> Mat:
    return sample_point(space, rng, bound).exact()


def wong_sequence(a: Mat, space: MatrixSpace) -> Iterator[Subspace]:
    """
    Yield T_0 = {0}, T_{i+1} = B(A^-1(T_i)) until the sequence stabilizes.
    The last value yielded is the limit.
    """
    if a.shape != (space.n, space.n):
        raise errors.DimensionError("point of shape {} for matrix space M({})".format(a.shape, space.n))
    t = Subspace.zero(space.n)
    yield t
    while True:
        nxt = space_image(space, exactla.preimage(a, t))
        if nxt.dim == t.dim:
            return
        t = nxt
        yield t


def wong_limit(a: Mat, space: MatrixSpace) -> Subspace:
    """
    The limit T* of the second Wong sequence of (A, B).  When T* lies in the
    image of A, A^-1(T*) is the minimal (n - rank A)-shrunk subspace.
    """
    t = Subspace.zero(space.n)
    for t in wong_sequence(a, space):
        pass
    return t


#
# the same sequence modulo a prime, on echelon rows
#

def _space_image_mod(space: MatrixSpace, u: np.ndarray, p: int) -> np.ndarray:
    n = space.n
    groups: Dict[Tuple[Tuple[int, ...], int], List[np.ndarray]] = {}
    if u.shape[0]:
        for f in space.families:
            if not f.rows or not f.cols:
                continue
            source, _ = modular.echelon(np.concatenate([u[:, r:r + f.width] for r in f.cols]), p)
            if not source.shape[0]:
                continue
            images = groups.setdefault((f.rows, f.height), [])
            for b in f.residues(p):
                images.append(modular.matmul(source, b.T, p))
    placed = []
    for (rows, height), images in groups.items():
        v, _ = modular.echelon(np.concatenate(images), p)
        for q in rows:
            w = np.zeros((v.shape[0], n), dtype=np.int64)
            w[:, q:q + height] = v
            placed.append(w)
    if not placed:
        return np.zeros((0, n), dtype=np.int64)
    return modular.echelon(np.concatenate(placed), p)[0]


def _preimage_mod(a: np.ndarray, t: np.ndarray, p: int) -> np.ndarray:
    # (v, w) in the kernel of [a | -T^T] exactly when a v = sum w_i t_i
    n = a.shape[1]
    k = modular.kernel(np.concatenate([a, (-t.T) % p], axis=1), p)
    return modular.echelon(k[:, :n], p)[0]


def _wong_limit_mod(a: np.ndarray, space: MatrixSpace, p: int) -> np.ndarray:
    t = np.zeros((0, space.n), dtype=np.int64)
    while True:
        nxt = _space_image_mod(space, _preimage_mod(a, t, p), p)
        if nxt.shape[0] == t.shape[0]:
            return t
        t = nxt


def _slice_product_form(u: Subspace, n: int, d: int) -> Optional[Subspace]:
    # U = Q^d (x) U_0 means d stacked copies of U_0; return U_0 or None
    if d == 1:
        return u
    u0 = Subspace(n, [v[:n] for v in u.vectors()])
    if u0.dim * d != u.dim:
        return None
    if Subspace.placed(n * d, [(k * n, u0) for k in range(d)]) != u:
        return None
    return u0


def _slice_product_form_mod(u: np.ndarray, n: int, d: int, p: int) -> Optional[Tuple[np.ndarray, List[int]]]:
    u0, pivots = modular.echelon(u[:, :n], p)
    if u0.shape[0] * d != u.shape[0]:
        return None
    s = u0.shape[0]
    copies = np.zeros((s * d, n * d), dtype=np.int64)
    for k in range(d):
        copies[k * s:(k + 1) * s, k * n:(k + 1) * n] = u0
    # both sides are canonical echelon forms
    if not np.array_equal(copies, u):
        return None
    return u0, pivots


def _search_exact(space: MatrixSpace, big: MatrixSpace, point: SampledPoint, d: int, attempt: int) -> Optional[ShrunkCertificate]:
    n = space.n
    a = point.exact()
    r = exactla.rank(a)
    t = wong_limit(a, big)
    if not exactla.contains(exactla.image(a), t):
        logger.debug("d=%d attempt %d: Wong limit leaves the image of a rank %d point, resampling", d, attempt, r)
        return None
    u = exactla.preimage(a, t)
    if r % d:
        raise errors.InvariantError("shrunk subspace of the {}-blow-up from a point of rank {}".format(d, r))
    u0 = _slice_product_form(u, n, d)
    if u0 is None:
        logger.debug("d=%d attempt %d: shrunk subspace is not of product form, resampling", d, attempt)
        return None
    bu0 = space_image(space, u0)
    c = u0.dim - bu0.dim
    if c != n - r // d:
        logger.debug("d=%d attempt %d: sliced subspace is %d-shrunk, expected %d", d, attempt, c, n - r // d)
        return None
    return ShrunkCertificate(n, u0, c, bu0, d, a, r)


def _search_modular(space: MatrixSpace, big: MatrixSpace, point: SampledPoint, d: int, attempt: int) -> Optional[ShrunkCertificate]:
    """
    The exact search carried out modulo each prime in turn.  Once the
    sliced subspaces agree, they are lifted to the rationals and U_0 is
    checked exactly.  The rank r mod p bounds the rank over Q from below;
    an exact U_0 with dim U_0 - dim B(U_0) = n - r/d bounds it from above.
    """
    n = space.n
    r: Optional[int] = None
    pivots: Optional[List[int]] = None
    stack: List[np.ndarray] = []
    used: List[int] = []
    for p in modular.primes():
        try:
            a = point.residues(p)
        except ZeroDivisionError:
            continue
        rp = modular.rank(a, p)
        t = _wong_limit_mod(a, big, p)
        u = _preimage_mod(a, t, p)
        if u.shape[0] != big.n - rp + t.shape[0]:
            logger.debug("d=%d attempt %d: Wong limit leaves the image of a rank %d point mod %d, resampling", d, attempt, rp, p)
            return None
        if rp % d:
            logger.debug("d=%d attempt %d: rank %d mod %d is not a multiple of the degree, resampling", d, attempt, rp, p)
            return None
        sliced = _slice_product_form_mod(u, n, d, p)
        if sliced is None:
            logger.debug("d=%d attempt %d: shrunk subspace mod %d is not of product form, resampling", d, attempt, p)
            return None
        if r is None:
            r, pivots = rp, sliced[1]
        elif rp != r or sliced[1] != pivots:
            logger.debug("d=%d attempt %d: primes disagree on the rank or the shrunk subspace, resampling", d, attempt)
            return None
        stack.append(sliced[0])
        used.append(p)
        u0 = modular.lift_subspace(stack, used, n, pivots)
        if u0 is None:
            continue
        bu0 = space_image(space, u0)
        c = u0.dim - bu0.dim
        if c != n - r // d:
            logger.debug("d=%d attempt %d: lifted subspace is %d-shrunk, expected %d", d, attempt, c, n - r // d)
            continue
        return ShrunkCertificate(n, u0, c, bu0, d, point.exact(), r)
    logger.debug("d=%d attempt %d: no exact subspace recovered from %d primes", d, attempt, len(used))
    return None


def _certify(space: MatrixSpace, rng: np.random.Generator, budget: int, use_modular: Optional[bool] = None) -> ShrunkCertificate:
    n = space.n
    base_bound = max(2 * n * n, 1)
    for d in range(1, max(1, n - 1) + 1):
        big = blow_up(space, d)
        fast = big.n > MODULAR_THRESHOLD if use_modular is None else use_modular
        search = _search_modular if fast else _search_exact
        bound = base_bound
        for attempt in range(budget):
            cert = search(space, big, sample_point(big, rng, bound), d, attempt)
            if cert is None:
                bound *= 2
                continue
            logger.debug("certified c=%d with a point of rank %d in the %d-blow-up", cert.c, cert.rank, d)
            return cert
        logger.debug("no certificate at blow-up degree %d, raising the degree", d)
    raise errors.ValidationError("no certified shrunk subspace for {} within budget {}".format(space, budget))


def ncrank(space: MatrixSpace, seed: int, budget: int = DEFAULT_RETRY_BUDGET, use_modular: Optional[bool] = None) -> Tuple[int, int, Mat, int]:
    """
    Return (ncrank, d, point, rank): the non-commutative rank together with a
    point of the d-blow-up of rank d * ncrank.  The value is certified by the
    matching shrunk subspace before it is returned.

    `use_modular` forces the search modulo primes on or off; by default it
    is used for blow-ups larger than MODULAR_THRESHOLD.
    """
    cert = _certify(space, utils.make_rng(seed), budget, use_modular)
    return space.n - cert.c, cert.degree, cert.point, cert.rank


def min_shrunk(space: MatrixSpace, seed: int, budget: int = DEFAULT_RETRY_BUDGET, rounds: int = DEFAULT_TIGHTEN_ROUNDS, use_modular: Optional[bool] = None) -> ShrunkCertificate:
    """
    A certificate for disc(B) whose U is the minimal disc(B)-shrunk subspace.

    Each round samples independently; the subspaces of all rounds are
    intersected, which keeps the shrunk property when c = disc(B).
    """
    if rounds < 1:
        raise ValueError(f"expected at least one round, given {rounds}")
    best = _certify(space, utils.make_rng(seed, 0), budget, use_modular)
    for k in range(1, rounds):
        other = _certify(space, utils.make_rng(seed, k), budget, use_modular)
        if other.c != best.c:
            raise errors.InvariantError("independent runs disagree on disc: {} != {}".format(best.c, other.c))
        if other.U == best.U:
            continue
        logger.warning("independent runs produced different shrunk subspaces (dims %d, %d), intersecting", best.U.dim, other.U.dim)
        u = exactla.intersect(best.U, other.U)
        bu = space_image(space, u)
        if u.dim - bu.dim != best.c:
            raise errors.InvariantError("intersection of {}-shrunk subspaces is not {}-shrunk".format(best.c, best.c))
        keep = best if best.rank * other.degree >= other.rank * best.degree else other
        best = ShrunkCertificate(space.n, u, best.c, bu, keep.degree, keep.point, keep.rank)
    return best


class CertificateReport(object):
    """
    ok:         True when no check failed
    violations: human readable descriptions of failed checks
    """

    def __init__(self):
        self.violations: List[str] = []

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, msg: str):
        logger.warning("certificate check failed: %s", msg)
        self.violations.append(msg)

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self) -> str:
        return "CertificateReport(ok={}, {})".format(self.ok, self.violations)


def certified_rank(point: Mat, ceiling: Optional[int] = None) -> int:
    """
    The rank of `point` over Q.  When the rank is already known to be at
    most `ceiling`, a rank mod p equal to the ceiling settles it; otherwise
    the rank is computed exactly.
    """
    if ceiling is not None and modular.rank_lower_bound(point) == ceiling:
        return ceiling
    return exactla.rank(point)


def verify_certificate(space: MatrixSpace, cert: ShrunkCertificate) -> CertificateReport:
    """
    Re-derive every quantity of a certificate from scratch.
    """
    report = CertificateReport()
    n = space.n
    if cert.n != n or cert.U.ambient_dim != n:
        report.add("certificate for M({}) checked against M({})".format(cert.n, n))
        return report
    bu = space_image(space, cert.U)
    if bu != cert.BU:
        report.add("recorded B(U) differs from the recomputed one")
    shrunk_side = cert.U.dim - bu.dim == cert.c
    if not shrunk_side:
        report.add("dim U - dim B(U) = {} - {}, expected c = {}".format(cert.U.dim, bu.dim, cert.c))
    d = cert.degree
    if d < 1 or cert.point.shape != (n * d, n * d):
        report.add("blow-up point has shape {} for degree {}".format(cert.point.shape, d))
        return report
    inside = cert.point in blow_up(space, d)
    if not inside:
        report.add("a block of the blow-up point is not in the matrix space")
    # a valid U gives rank <= d (n - c)
    r = certified_rank(cert.point, d * (n - cert.c) if shrunk_side and inside else None)
    if r != cert.rank:
        report.add("blow-up point has rank {}, recorded {}".format(r, cert.rank))
    if -(-r // d) != n - cert.c:
        report.add("ceil({}/{}) != n - c = {}".format(r, d, n - cert.c))
    return report
