# -*- coding: utf-8 -*-
"""
Exact linear algebra over the rationals

Matrices are dense and immutable.  Elimination is fraction-free (Bareiss):
rows are scaled to integers first, so intermediate entries stay integral and
the only divisions are exact.  Subspaces are kept in a canonical reduced
echelon form, so two Subspace objects are equal exactly when they span the
same space.
"""

import logging
from typing import Any, List, Tuple, Union, Iterable, Optional, Sequence
from fractions import Fraction

from . import errors
from .utils import integer_row

logger = logging.getLogger(__name__)

Rational = Fraction
Scalar = Union[int, Fraction, str]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def to_rational(value: Scalar) -> Fraction:
    """
    Convert an int, Fraction or "p/q" string to a Fraction.
    Raises InstanceFormatError on anything else.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise errors.InstanceFormatError("expected a rational, given a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            if sep:
                return Fraction(int(num), int(den))
            return Fraction(int(num))
        except (ValueError, ZeroDivisionError):
            raise errors.InstanceFormatError("invalid rational literal: {!r}".format(value))
    raise errors.InstanceFormatError("expected a rational, given {}".format(type(value).__name__))


def format_rational(value: Fraction) -> str:
    """
    Return "p/q" in lowest terms, or "p" when the denominator is one.
    """
    return str(Fraction(value))


class Mat(object):
    """
    Dense immutable matrix of Fractions.

    rows:       number of rows
    cols:       number of columns
    entries:    tuple of row tuples
    """

    __slots__ = ("rows", "cols", "entries", "_hash")

    rows: int
    cols: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    def __init__(self, rows: int, cols: int, entries: Optional[Sequence[Sequence[Scalar]]] = None):
        if rows < 0 or cols < 0:
            raise errors.DimensionError("negative matrix shape {}x{}".format(rows, cols))
        if entries is None:
            data = tuple(tuple(_ZERO for _ in range(cols)) for _ in range(rows))
        else:
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise errors.DimensionError("entries do not match shape {}x{}".format(rows, cols))
            data = tuple(tuple(to_rational(x) for x in r) for r in entries)
        self.rows = rows
        self.cols = cols
        self.entries = data
        self._hash: Optional[int] = None

    @classmethod
    def _wrap(cls, rows: int, cols: int, data: Tuple[Tuple[Fraction, ...], ...]) -> "Mat":
        # trusted constructor: data already consists of Fractions with the right shape
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m.entries = data
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._wrap(n, n, tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> "Mat":
        if not rows:
            return cls(0, cols or 0)
        return cls(len(rows), len(rows[0]), rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: int) -> "Mat":
        if not columns:
            return cls(rows, 0)
        if any(len(c) != rows for c in columns):
            raise errors.DimensionError("column length does not match {} rows".format(rows))
        data = tuple(tuple(to_rational(c[i]) for c in columns) for i in range(rows))
        return cls._wrap(rows, len(columns), data)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> List[Tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Mat":
        return Mat._wrap(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise errors.DimensionError("cannot multiply {}x{} by {}x{}".format(self.rows, self.cols, other.rows, other.cols))
        other_cols = list(zip(*other.entries)) if other.rows else [() for _ in range(other.cols)]
        data = []
        for r in self.entries:
            nz = [(k, x) for k, x in enumerate(r) if x]
            out = []
            for c in other_cols:
                s = _ZERO
                for k, x in nz:
                    y = c[k]
                    if y:
                        s += x * y
                out.append(s)
            data.append(tuple(out))
        return Mat._wrap(self.rows, other.cols, tuple(data))

    def apply_vector(self, v: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise errors.DimensionError("vector of length {} for {} columns".format(len(v), self.cols))
        nz = [(k, x) for k, x in enumerate(v) if x]
        return tuple(sum((r[k] * x for k, x in nz), _ZERO) for r in self.entries)

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise errors.DimensionError("cannot add {} and {}".format(self.shape, other.shape))
        return Mat._wrap(self.rows, self.cols, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def scale(self, c: Scalar) -> "Mat":
        f = to_rational(c)
        return Mat._wrap(self.rows, self.cols, tuple(tuple(f * x for x in r) for r in self.entries))

    def submatrix(self, row_start: int, row_stop: int, col_start: int, col_stop: int) -> "Mat":
        return Mat._wrap(
            row_stop - row_start,
            col_stop - col_start,
            tuple(r[col_start:col_stop] for r in self.entries[row_start:row_stop]),
        )

    def kron(self, other: "Mat") -> "Mat":
        data = []
        for r in self.entries:
            for s in other.entries:
                data.append(tuple(a * b for a in r for b in s))
        return Mat._wrap(self.rows * other.rows, self.cols * other.cols, tuple(data))

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self) -> str:
        return "Mat({}x{}, {})".format(self.rows, self.cols, self.to_json())

    def to_json(self) -> List[List[str]]:
        return [[format_rational(x) for x in r] for r in self.entries]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[Scalar]], rows: Optional[int] = None, cols: Optional[int] = None) -> "Mat":
        """
        Build a matrix from row-major nested lists; `rows`/`cols` disambiguate empty shapes.
        """
        if not data:
            return cls(rows or 0, cols or 0)
        m = cls.from_rows(data)
        if (rows is not None and m.rows != rows) or (cols is not None and m.cols != cols):
            raise errors.DimensionError("matrix shape {} does not match expected {}x{}".format(m.shape, rows, cols))
        return m


#
# fraction-free elimination
#

def bareiss_echelon(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[List[List[int]], List[int]]:
    """
    Given integer rows, return (echelon rows, pivot columns) using
    fraction-free Bareiss elimination.  Every division is exact.
    Only the nonzero echelon rows are returned.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    prev = 1
    r = 0
    pivots: List[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        piv_row = m[r]
        piv = piv_row[c]
        for i in range(r + 1, nrows):
            row_i = m[i]
            a = row_i[c]
            for j in range(c, ncols):
                row_i[j] = (piv * row_i[j] - a * piv_row[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _reduced_rows(vectors: Iterable[Sequence[Fraction]], ncols: int) -> Tuple[Tuple[Tuple[Fraction, ...], ...], Tuple[int, ...]]:
    # reduced row echelon form of the span of `vectors`, pivots normalized to one
    ints = [integer_row(v) for v in vectors]
    ints = [r for r in ints if any(r)]
    if not ints:
        return (), ()
    echelon, pivots = bareiss_echelon(ints, ncols)
    rows: List[List[Fraction]] = []
    for k, erow in enumerate(echelon):
        p = pivots[k]
        piv = erow[p]
        rows.append([Fraction(x, piv) for x in erow])
    # back substitution, bottom-up
    for k in range(len(rows) - 1, -1, -1):
        p = pivots[k]
        rk = rows[k]
        for i in range(k):
            f = rows[i][p]
            if f:
                ri = rows[i]
                for j in range(p, ncols):
                    if rk[j]:
                        ri[j] -= f * rk[j]
    return tuple(tuple(r) for r in rows), tuple(pivots)


def rank(m: Mat) -> int:
    """
    Exact rank over the rationals.
    """
    ints = [integer_row(r) for r in m.entries]
    _, pivots = bareiss_echelon(ints, m.cols)
    return len(pivots)


def inverse(m: Mat) -> Mat:
    """
    Exact inverse of a square matrix; DimensionError when singular.
    """
    if m.rows != m.cols:
        raise errors.DimensionError("cannot invert a {}x{} matrix".format(m.rows, m.cols))
    n = m.rows
    augmented = [r + tuple(_ONE if i == j else _ZERO for j in range(n)) for i, r in enumerate(m.entries)]
    rows, pivots = _reduced_rows(augmented, 2 * n)
    if tuple(pivots[:n]) != tuple(range(n)) or len(rows) != n:
        raise errors.DimensionError("matrix is singular")
    return Mat._wrap(n, n, tuple(r[n:] for r in rows))


class Subspace(object):
    """
    A subspace of Q^n in canonical form.

    ambient_dim:    n
    basis:          Mat (n x dim) whose columns span the subspace, in reduced
                    column echelon form
    pivots:         pivot coordinate of each basis column, strictly increasing
    """

    __slots__ = ("ambient_dim", "_rows", "pivots", "_hash")

    ambient_dim: int
    pivots: Tuple[int, ...]

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence[Scalar]] = ()):
        vecs = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise errors.DimensionError("vector of length {} in ambient dimension {}".format(len(v), ambient_dim))
            vecs.append([to_rational(x) for x in v])
        rows, pivots = _reduced_rows(vecs, ambient_dim)
        self.ambient_dim = ambient_dim
        self._rows = rows
        self.pivots = pivots
        self._hash: Optional[int] = None

    @classmethod
    def _from_canonical(cls, ambient_dim: int, rows, pivots) -> "Subspace":
        s = cls.__new__(cls)
        s.ambient_dim = ambient_dim
        s._rows = rows
        s.pivots = pivots
        s._hash = None
        return s

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls._from_canonical(n, (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        rows = tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))
        return cls._from_canonical(n, rows, tuple(range(n)))

    @classmethod
    def coordinate(cls, n: int, coords: Iterable[int]) -> "Subspace":
        """
        The span of the standard basis vectors e_i for i in coords (0-based).
        """
        return cls(n, [[1 if j == i else 0 for j in range(n)] for i in sorted(set(coords))])

    @classmethod
    def placed(cls, n: int, pieces: Iterable[Tuple[int, "Subspace"]]) -> "Subspace":
        """
        The sum of subspaces of smaller spaces, each embedded in Q^n at a
        coordinate offset.  Pieces on disjoint coordinates are assembled
        without elimination.
        """
        items = sorted(((off, s) for off, s in pieces if not s.is_zero()), key=lambda t: t[0])
        for off, s in items:
            if off < 0 or off + s.ambient_dim > n:
                raise errors.DimensionError("subspace of Q^{} at offset {} does not fit in Q^{}".format(s.ambient_dim, off, n))
        vectors = []
        for off, s in items:
            left = (_ZERO,) * off
            right = (_ZERO,) * (n - off - s.ambient_dim)
            vectors.extend(left + r + right for r in s._rows)
        if any(a[0] + a[1].ambient_dim > b[0] for a, b in zip(items, items[1:])):
            return cls(n, vectors)
        return cls._from_canonical(n, tuple(vectors), tuple(off + p for off, s in items for p in s.pivots))

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def basis(self) -> Mat:
        if not self._rows:
            return Mat(self.ambient_dim, 0)
        return Mat._wrap(self.ambient_dim, len(self._rows), tuple(zip(*self._rows)))

    def vectors(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return self._rows

    def is_zero(self) -> bool:
        return not self._rows

    def is_full(self) -> bool:
        return len(self._rows) == self.ambient_dim

    def reduce(self, v: Sequence[Fraction]) -> List[Fraction]:
        """
        Return v minus its component along the canonical basis; zero iff v is in the subspace.
        """
        out = list(v)
        for p, row in zip(self.pivots, self._rows):
            f = out[p]
            if f:
                for j in range(p, self.ambient_dim):
                    if row[j]:
                        out[j] -= f * row[j]
        return out

    def __contains__(self, v: Sequence[Fraction]) -> bool:
        if len(v) != self.ambient_dim:
            raise errors.DimensionError("vector of length {} in ambient dimension {}".format(len(v), self.ambient_dim))
        return not any(self.reduce(v))

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self._rows))
        return self._hash

    def __repr__(self) -> str:
        return "Subspace(n={}, dim={}, {})".format(self.ambient_dim, self.dim, [[format_rational(x) for x in r] for r in self._rows])

    def to_json(self) -> List[List[str]]:
        """
        Basis vectors, one list per vector.
        """
        return [[format_rational(x) for x in r] for r in self._rows]


def span(vectors: Iterable[Sequence[Scalar]], ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, vectors)


def canonical(s: Subspace) -> Subspace:
    return Subspace(s.ambient_dim, s.vectors())


def image(m: Mat) -> Subspace:
    return Subspace(m.rows, m.columns())


def kernel(m: Mat) -> Subspace:
    """
    Null space {v : m v = 0}.
    """
    rows, pivots = _reduced_rows(m.entries, m.cols)
    pivot_set = set(pivots)
    vectors = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [_ZERO] * m.cols
        v[free] = _ONE
        for p, row in zip(pivots, rows):
            v[p] = -row[free]
        vectors.append(v)
    return Subspace(m.cols, vectors)


def annihilator(u: Subspace) -> Mat:
    """
    Rows spanning {w : w . v = 0 for all v in u}.  Zero rows when u is the whole space.
    """
    if u.is_zero():
        return Mat.identity(u.ambient_dim)
    k = kernel(Mat._wrap(u.dim, u.ambient_dim, u.vectors()))
    return Mat._wrap(k.dim, u.ambient_dim, k.vectors())


def apply(m: Mat, u: Subspace) -> Subspace:
    """
    The image m(U).
    """
    if m.cols != u.ambient_dim:
        raise errors.DimensionError("map with {} columns applied to subspace of Q^{}".format(m.cols, u.ambient_dim))
    return Subspace(m.rows, [m.apply_vector(v) for v in u.vectors()])


def preimage(m: Mat, t: Subspace) -> Subspace:
    """
    {v : m v in T}.
    """
    if m.rows != t.ambient_dim:
        raise errors.DimensionError("map with {} rows pulled back from subspace of Q^{}".format(m.rows, t.ambient_dim))
    if t.is_full():
        return Subspace.full(m.cols)
    return kernel(annihilator(t) @ m)


def _check_ambient(u: Subspace, v: Subspace):
    if u.ambient_dim != v.ambient_dim:
        raise errors.DimensionError("ambient dimension mismatch: {} != {}".format(u.ambient_dim, v.ambient_dim))


def sum_spaces(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    if v.is_zero() or u.is_full():
        return u
    if u.is_zero() or v.is_full():
        return v
    return Subspace(u.ambient_dim, u.vectors() + v.vectors())


def sum_all(spaces: Iterable[Subspace], ambient_dim: int) -> Subspace:
    vectors: List[Sequence[Fraction]] = []
    for s in spaces:
        if s.ambient_dim != ambient_dim:
            raise errors.DimensionError("ambient dimension mismatch: {} != {}".format(s.ambient_dim, ambient_dim))
        vectors.extend(s.vectors())
    return Subspace(ambient_dim, vectors)


def intersect(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    if u.is_full() or v.is_zero():
        return v
    if v.is_full() or u.is_zero():
        return u
    # U ∩ V = (U^perp + V^perp)^perp for the standard form, which is nondegenerate over Q
    stacked = annihilator(u).entries + annihilator(v).entries
    return kernel(Mat._wrap(len(stacked), u.ambient_dim, stacked))


def contains(u: Subspace, v: Subspace) -> bool:
    """
    True when v is a subspace of u.
    """
    _check_ambient(u, v)
    if v.dim > u.dim:
        return False
    return all(vec in u for vec in v.vectors())


def complement_basis(u: Subspace) -> Mat:
    """
    Columns extending u's basis to the ambient space: the standard vectors
    at the non-pivot coordinates.
    """
    pivot_set = set(u.pivots)
    free = [j for j in range(u.ambient_dim) if j not in pivot_set]
    return Mat._wrap(
        u.ambient_dim,
        len(free),
        tuple(tuple(_ONE if i == j else _ZERO for j in free) for i in range(u.ambient_dim)),
    )


def projection_onto_complement(u: Subspace) -> Mat:
    """
    The map Q^n -> Q^(n - dim u) with kernel u that is left inverse to complement_basis(u).
    """
    n = u.ambient_dim
    pivot_set = set(u.pivots)
    free = [j for j in range(n) if j not in pivot_set]
    # v = sum_k v[p_k] b_k + remainder, remainder supported on free coordinates
    data = []
    for j in free:
        row = [_ZERO] * n
        row[j] = _ONE
        for p, b in zip(u.pivots, u.vectors()):
            if b[j]:
                row[p] -= b[j]
        data.append(tuple(row))
    return Mat._wrap(len(free), n, tuple(data))
