# -*- coding: utf-8 -*-
"""
Acyclic quivers and their representations

A Quiver holds ordered vertex ids and arrows (id, tail, head).  A
Representation assigns a dimension to each vertex and a matrix to each arrow,
mapping Q^dims[tail] to Q^dims[head].  SubRep holds one Subspace per vertex.

Paths store their arrows right-to-left, the way compositions are written:
the path "ba" (first a, then b) has arrows ("b", "a") and maps by M(b) M(a).
"""

import json
import logging
from typing import IO, Any, Dict, List, Tuple, Union, Iterable, Iterator, Optional, Sequence
from fractions import Fraction

import networkx as nx

from . import errors, exactla
from .exactla import Mat, Subspace

logger = logging.getLogger(__name__)


class Arrow(object):
    __slots__ = ("id", "tail", "head")

    def __init__(self, id: str, tail: str, head: str):
        self.id = id
        self.tail = tail
        self.head = head

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Arrow):
            return NotImplemented
        return (self.id, self.tail, self.head) == (other.id, other.tail, other.head)

    def __hash__(self) -> int:
        return hash((self.id, self.tail, self.head))

    def __repr__(self) -> str:
        return "Arrow({}: {} -> {})".format(self.id, self.tail, self.head)


class Quiver(object):
    """
    vertices:   ordered vertex ids
    arrows:     ordered Arrow list; parallel arrows allowed
    order:      a topological order of the vertices, set by validate_quiver
    """

    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    order: Tuple[str, ...]

    def __init__(self, vertices: Sequence[str], arrows: Iterable[Union[Arrow, Tuple[str, str, str]]]):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise errors.InstanceFormatError("duplicate vertex id in {}".format(list(self.vertices)))
        arrow_list = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(str(a[0]), str(a[1]), str(a[2]))
            arrow_list.append(a)
        self.arrows = tuple(arrow_list)
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise errors.InstanceFormatError("duplicate arrow id in {}".format(ids))
        self._arrow_by_id = {a.id: a for a in self.arrows}
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self.order = validate_quiver(self)

    def arrow(self, arrow_id: str) -> Arrow:
        return self._arrow_by_id[arrow_id]

    def index(self, vertex: str) -> int:
        return self._index[vertex]

    def arrows_into(self, vertex: str) -> List[Arrow]:
        return [a for a in self.arrows if a.head == vertex]

    def arrows_from(self, vertex: str) -> List[Arrow]:
        return [a for a in self.arrows if a.tail == vertex]

    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for a in self.arrows:
            g.add_edge(a.tail, a.head, key=a.id)
        return g

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        return "Quiver({}, {})".format(list(self.vertices), list(self.arrows))


def validate_quiver(q: Quiver) -> Tuple[str, ...]:
    """
    Return a topological order of q's vertices.  Ties are broken by declaration
    order, so the result is deterministic.
    Raises AcyclicityError if q has an oriented cycle (loops included).
    """
    known = set(q.vertices)
    for a in q.arrows:
        if a.tail not in known or a.head not in known:
            raise errors.InstanceFormatError("arrow {} references an unknown vertex".format(a.id))
    g = q.graph()
    if not nx.is_directed_acyclic_graph(g):
        cycle = nx.find_cycle(g)
        raise errors.AcyclicityError("quiver has an oriented cycle through {}".format([e[0] for e in cycle]))
    index = {v: i for i, v in enumerate(q.vertices)}
    return tuple(nx.lexicographical_topological_sort(g, key=lambda v: index[v]))


class Path(object):
    """
    arrows:     arrow ids, right-to-left (the last entry is traversed first)
    source:     start vertex
    target:     end vertex

    An empty arrow list is the trivial path e_source.
    """

    __slots__ = ("arrows", "source", "target")

    def __init__(self, arrows: Sequence[str], source: str, target: str):
        self.arrows = tuple(arrows)
        self.source = source
        self.target = target

    @classmethod
    def trivial(cls, vertex: str) -> "Path":
        return cls((), vertex, vertex)

    def is_trivial(self) -> bool:
        return not self.arrows

    def __len__(self) -> int:
        return len(self.arrows)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Path):
            return NotImplemented
        return (self.arrows, self.source, self.target) == (other.arrows, other.source, other.target)

    def __hash__(self) -> int:
        return hash((self.arrows, self.source, self.target))

    def __repr__(self) -> str:
        if self.is_trivial():
            return "Path(e_{})".format(self.source)
        return "Path({}: {} -> {})".format("".join(self.arrows) if all(len(a) == 1 for a in self.arrows) else ".".join(self.arrows), self.source, self.target)


def enumerate_paths(q: Quiver) -> Tuple[List[Path], int]:
    """
    Return (nontrivial paths, P) where P counts all paths including the
    trivial ones.  Dynamic programming over the topological order: the paths
    ending at v are e_v plus every path ending at tail(a) extended by an arrow
    a into v.
    """
    ending: Dict[str, List[Path]] = {}
    nontrivial: List[Path] = []
    for v in q.order:
        here = [Path.trivial(v)]
        for a in q.arrows_into(v):
            for p in ending[a.tail]:
                here.append(Path((a.id,) + p.arrows, p.source, v))
        ending[v] = here
        nontrivial.extend(here[1:])
    return nontrivial, len(nontrivial) + len(q.vertices)


class Weight(object):
    """
    An integer weight on vertices, extended linearly to dimension vectors.
    Missing vertices weigh zero.
    """

    __slots__ = ("values",)

    def __init__(self, values: Dict[str, int]):
        clean = {}
        for v, x in values.items():
            try:
                ok = not isinstance(x, bool) and int(x) == x
            except (TypeError, ValueError):
                ok = False
            if not ok:
                raise errors.WeightError("weight at {} is not an integer: {!r}".format(v, x))
            clean[str(v)] = int(x)
        self.values = clean

    @classmethod
    def constant(cls, q: Quiver, value: int) -> "Weight":
        return cls({v: value for v in q.vertices})

    def __getitem__(self, vertex: str) -> int:
        return self.values.get(vertex, 0)

    def __call__(self, x: Union["Representation", "SubRep", Dict[str, int]]) -> int:
        return weight_of(self, x)

    def scaled(self, factor: int) -> "Weight":
        return Weight({v: factor * x for v, x in self.values.items()})

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Weight):
            return NotImplemented
        return {k: v for k, v in self.values.items() if v} == {k: v for k, v in other.values.items() if v}

    def __hash__(self) -> int:
        return hash(tuple(sorted((k, v) for k, v in self.values.items() if v)))

    def __repr__(self) -> str:
        return "Weight({})".format(self.values)

    def to_json(self) -> Dict[str, int]:
        return dict(self.values)


class Representation(object):
    """
    quiver:     Quiver
    dims:       vertex id -> dimension
    maps:       arrow id -> Mat with dims[head] rows and dims[tail] columns
    """

    quiver: Quiver
    dims: Dict[str, int]
    maps: Dict[str, Mat]

    def __init__(self, quiver: Quiver, dims: Dict[str, int], maps: Optional[Dict[str, Mat]] = None):
        self.quiver = quiver
        self.dims = {}
        for v in quiver.vertices:
            d = int(dims.get(v, 0))
            if d < 0:
                raise errors.DimensionError("negative dimension {} at vertex {}".format(d, v))
            self.dims[v] = d
        unknown = set(dims) - set(quiver.vertices)
        if unknown:
            raise errors.InstanceFormatError("dimensions given for unknown vertices {}".format(sorted(unknown)))
        maps = maps or {}
        unknown = set(maps) - set(a.id for a in quiver.arrows)
        if unknown:
            raise errors.InstanceFormatError("maps given for unknown arrows {}".format(sorted(unknown)))
        self.maps = {}
        for a in quiver.arrows:
            m = maps.get(a.id)
            if m is None:
                m = Mat(self.dims[a.head], self.dims[a.tail])
            if m.shape != (self.dims[a.head], self.dims[a.tail]):
                raise errors.DimensionError(
                    "map for arrow {} has shape {}, expected {}x{}".format(a.id, m.shape, self.dims[a.head], self.dims[a.tail])
                )
            self.maps[a.id] = m

    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.quiver.vertices)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return self.quiver == other.quiver and self.dims == other.dims and self.maps == other.maps

    def __hash__(self) -> int:
        return hash((self.quiver, self.dim_vector()))

    def __repr__(self) -> str:
        return "Representation(dims={})".format(self.dims)


def path_map(m: Representation, p: Path) -> Mat:
    """
    M(p) = M(a_k) ... M(a_1); the identity for a trivial path.
    """
    if p.is_trivial():
        return Mat.identity(m.dims[p.source])
    result = m.maps[p.arrows[0]]
    for a in p.arrows[1:]:
        result = result @ m.maps[a]
    return result


def path_maps(m: Representation, include_trivial: bool = False) -> Dict[Tuple[str, str], List[Tuple[Path, Mat]]]:
    """
    All path maps grouped by (source, target), computed along the topological
    order so each composition costs one matrix product.
    """
    q = m.quiver
    ending: Dict[str, List[Tuple[Path, Mat]]] = {}
    for v in q.order:
        here = [(Path.trivial(v), Mat.identity(m.dims[v]))]
        for a in q.arrows_into(v):
            ma = m.maps[a.id]
            for p, mp in ending[a.tail]:
                here.append((Path((a.id,) + p.arrows, p.source, v), ma @ mp))
        ending[v] = here
    grouped: Dict[Tuple[str, str], List[Tuple[Path, Mat]]] = {}
    for v in q.order:
        for p, mp in ending[v]:
            if p.is_trivial() and not include_trivial:
                continue
            grouped.setdefault((p.source, p.target), []).append((p, mp))
    return grouped


class SubRep(object):
    """
    parent:     Representation
    spaces:     vertex id -> Subspace of Q^dims[vertex]

    Construction does not check invariance; use is_subrep.
    """

    parent: Representation
    spaces: Dict[str, Subspace]

    def __init__(self, parent: Representation, spaces: Dict[str, Subspace]):
        self.parent = parent
        self.spaces = {}
        for v in parent.quiver.vertices:
            s = spaces.get(v)
            if s is None:
                s = Subspace.zero(parent.dims[v])
            if s.ambient_dim != parent.dims[v]:
                raise errors.DimensionError("space at {} lives in Q^{}, expected Q^{}".format(v, s.ambient_dim, parent.dims[v]))
            self.spaces[v] = s

    @classmethod
    def zero(cls, parent: Representation) -> "SubRep":
        return cls(parent, {})

    @classmethod
    def full(cls, parent: Representation) -> "SubRep":
        return cls(parent, {v: Subspace.full(d) for v, d in parent.dims.items()})

    @property
    def dims(self) -> Dict[str, int]:
        return {v: s.dim for v, s in self.spaces.items()}

    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.spaces[v].dim for v in self.parent.quiver.vertices)

    def total_dim(self) -> int:
        return sum(s.dim for s in self.spaces.values())

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.spaces.values())

    def is_full(self) -> bool:
        return all(s.is_full() for s in self.spaces.values())

    def contains(self, other: "SubRep") -> bool:
        _check_parent(self, other)
        return all(exactla.contains(self.spaces[v], other.spaces[v]) for v in self.spaces)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, SubRep):
            return NotImplemented
        if self.parent is not other.parent and self.parent != other.parent:
            return False
        return self.spaces == other.spaces

    def __hash__(self) -> int:
        return hash(tuple(self.spaces[v] for v in self.parent.quiver.vertices))

    def __repr__(self) -> str:
        return "SubRep(dims={})".format(self.dims)

    def to_json(self) -> Dict[str, List[List[str]]]:
        return {v: s.to_json() for v, s in self.spaces.items()}


def _check_parent(s: SubRep, t: SubRep):
    if s.parent is not t.parent and s.parent != t.parent:
        raise errors.SubrepresentationError("subrepresentations of different representations")


def weight_of(w: Weight, x: Union[Representation, SubRep, Dict[str, int]]) -> int:
    """
    sum_v w(v) dim_v
    """
    if isinstance(x, (Representation, SubRep)):
        dims = x.dims
    else:
        dims = x
    return sum(w[v] * d for v, d in dims.items())


def kappa_check(kappa: Weight, q: Optional[Quiver] = None) -> bool:
    """
    True when kappa(v) >= 1 at every vertex (of q, when given).
    """
    vertices = q.vertices if q is not None else tuple(kappa.values)
    return all(kappa[v] >= 1 for v in vertices)


def slope(theta: Weight, kappa: Weight, r: Union[Representation, SubRep, Dict[str, int]]) -> Fraction:
    """
    mu(r) = Theta(r) / kappa(r), exactly.
    """
    q = r.parent.quiver if isinstance(r, SubRep) else r.quiver if isinstance(r, Representation) else None
    if not kappa_check(kappa, q):
        raise errors.WeightError("kappa must be at least 1 at every vertex: {}".format(kappa))
    k = weight_of(kappa, r)
    if k == 0:
        raise errors.ZeroRepresentationError("slope of the zero representation")
    return Fraction(weight_of(theta, r), k)


def theta_d(theta: Weight, kappa: Weight, d: Dict[str, int]) -> Weight:
    """
    The weight v -> kappa(d) Theta(v) - Theta(d) kappa(v); it vanishes on d.
    """
    if any(kappa[v] < 1 for v in d):
        raise errors.WeightError("kappa must be at least 1 at every vertex: {}".format(kappa))
    kd = weight_of(kappa, d)
    td = weight_of(theta, d)
    vertices = set(theta.values) | set(kappa.values) | set(d)
    return Weight({v: kd * theta[v] - td * kappa[v] for v in sorted(vertices)})


def is_subrep(s: SubRep) -> bool:
    """
    M(a)(S_tail) must lie in S_head for every arrow a.
    """
    m = s.parent
    for a in m.quiver.arrows:
        src = s.spaces[a.tail]
        if src.is_zero():
            continue
        dst = s.spaces[a.head]
        ma = m.maps[a.id]
        for v in src.vectors():
            if ma.apply_vector(v) not in dst:
                return False
    return True


def sum_subreps(s: SubRep, t: SubRep) -> SubRep:
    _check_parent(s, t)
    return SubRep(s.parent, {v: exactla.sum_spaces(s.spaces[v], t.spaces[v]) for v in s.spaces})


def intersect_subreps(s: SubRep, t: SubRep) -> SubRep:
    _check_parent(s, t)
    return SubRep(s.parent, {v: exactla.intersect(s.spaces[v], t.spaces[v]) for v in s.spaces})


def invariant_closure(m: Representation, spaces: Dict[str, Subspace]) -> SubRep:
    """
    The smallest subrepresentation containing the given vertex spaces:
    at each v, the sum of M(p)(spaces[source p]) over all paths p ending at v.
    """
    closed: Dict[str, Subspace] = {}
    for v in m.quiver.order:
        parts = [spaces.get(v, Subspace.zero(m.dims[v]))]
        for a in m.quiver.arrows_into(v):
            parts.append(exactla.apply(m.maps[a.id], closed[a.tail]))
        closed[v] = exactla.sum_all(parts, m.dims[v])
    return SubRep(m, closed)


class Quotient(object):
    """
    rep:            the quotient representation M/S
    projections:    vertex -> Mat, M_v onto (M/S)_v with kernel S_v
    sections:       vertex -> Mat, (M/S)_v into M_v, a right inverse of the projection
    sub:            the SubRep S
    """

    rep: Representation
    projections: Dict[str, Mat]
    sections: Dict[str, Mat]
    sub: SubRep

    def __init__(self, rep: Representation, projections: Dict[str, Mat], sections: Dict[str, Mat], sub: SubRep):
        self.rep = rep
        self.projections = projections
        self.sections = sections
        self.sub = sub

    def __iter__(self) -> Iterator[Any]:
        return iter((self.rep, self.projections, self.sections))

    def pullback(self, t: SubRep) -> SubRep:
        """
        The subrepresentation S + section(T) of the parent, which contains S and maps onto T.
        """
        if t.parent is not self.rep and t.parent != self.rep:
            raise errors.SubrepresentationError("subrepresentation is not of this quotient")
        parent = self.sub.parent
        return SubRep(
            parent,
            {v: exactla.sum_spaces(self.sub.spaces[v], exactla.apply(self.sections[v], t.spaces[v])) for v in parent.quiver.vertices},
        )

    def push(self, t: SubRep) -> SubRep:
        """
        The image of a subrepresentation of the parent in the quotient.
        """
        _check_parent(t, self.sub)
        return SubRep(self.rep, {v: exactla.apply(self.projections[v], t.spaces[v]) for v in self.rep.quiver.vertices})


def quotient_rep(m: Representation, s: SubRep) -> Quotient:
    """
    M/S in the coordinates given by the complement basis of each S_v.
    """
    if s.parent is not m and s.parent != m:
        raise errors.SubrepresentationError("subrepresentation of another representation")
    if not is_subrep(s):
        raise errors.SubrepresentationError("not invariant under the arrow maps: {}".format(s))
    projections = {}
    sections = {}
    dims = {}
    for v in m.quiver.vertices:
        sv = s.spaces[v]
        projections[v] = exactla.projection_onto_complement(sv)
        sections[v] = exactla.complement_basis(sv)
        dims[v] = m.dims[v] - sv.dim
    maps = {}
    for a in m.quiver.arrows:
        maps[a.id] = projections[a.head] @ m.maps[a.id] @ sections[a.tail]
    return Quotient(Representation(m.quiver, dims, maps), projections, sections, s)


class Restriction(object):
    """
    rep:            a subrepresentation S realised as a representation in its own basis
    inclusions:     vertex -> Mat whose columns are the basis of S_v in M_v
    sub:            the SubRep S
    """

    rep: Representation
    inclusions: Dict[str, Mat]
    sub: SubRep

    def __init__(self, rep: Representation, inclusions: Dict[str, Mat], sub: SubRep):
        self.rep = rep
        self.inclusions = inclusions
        self.sub = sub

    def pushforward(self, t: SubRep) -> SubRep:
        """
        A subrepresentation of S, given in S's basis, as a subrepresentation of the parent.
        """
        if t.parent is not self.rep and t.parent != self.rep:
            raise errors.SubrepresentationError("subrepresentation is not of this restriction")
        parent = self.sub.parent
        return SubRep(parent, {v: exactla.apply(self.inclusions[v], t.spaces[v]) for v in parent.quiver.vertices})

    def restrict(self, t: SubRep) -> SubRep:
        """
        A subrepresentation of the parent lying inside S, in S's basis.
        """
        _check_parent(t, self.sub)
        if not self.sub.contains(t):
            raise errors.SubrepresentationError("{} is not contained in {}".format(t, self.sub))
        spaces = {}
        for v in self.rep.quiver.vertices:
            pivots = self.sub.spaces[v].pivots
            spaces[v] = Subspace(len(pivots), [[w[p] for p in pivots] for w in t.spaces[v].vectors()])
        return SubRep(self.rep, spaces)


def pullback(m: Representation, s: SubRep, t: SubRep) -> SubRep:
    """
    The subrepresentation of M lying over a subrepresentation T of M/S.
    T must be given in the coordinates of quotient_rep(m, s).
    """
    return quotient_rep(m, s).pullback(t)


def pushforward(m: Representation, s: SubRep, t: SubRep) -> SubRep:
    """
    A subrepresentation T of S, in the basis of sub_representation(m, s), as one of M.
    """
    return sub_representation(m, s).pushforward(t)


def sub_representation(m: Representation, s: SubRep) -> Restriction:
    if not is_subrep(s):
        raise errors.SubrepresentationError("not invariant under the arrow maps: {}".format(s))
    inclusions = {v: s.spaces[v].basis for v in m.quiver.vertices}
    maps = {}
    for a in m.quiver.arrows:
        src = s.spaces[a.tail]
        dst = s.spaces[a.head]
        # canonical basis: the coordinates of w in dst are its entries at dst's pivots
        data = []
        images = [m.maps[a.id].apply_vector(b) for b in src.vectors()]
        for p in dst.pivots:
            data.append([img[p] for img in images])
        maps[a.id] = Mat(dst.dim, src.dim, data) if data else Mat(dst.dim, src.dim)
    return Restriction(Representation(m.quiver, s.dims, maps), inclusions, s)


#
# JSON instance codec
#

def _dimension(vertex: Any, value: Any) -> int:
    if isinstance(value, bool) or not (isinstance(value, int) or (isinstance(value, float) and value.is_integer())):
        raise errors.InstanceFormatError("dimension at {} is not an integer: {!r}".format(vertex, value))
    return int(value)


def load_instance(doc: Union[Dict[str, Any], str, IO[str]]) -> Tuple[Representation, Weight, Weight]:
    """
    Parse an instance document:

        {"quiver": {"vertices": [...], "arrows": [{"id", "tail", "head"}, ...]},
         "dims": {v: int}, "maps": {arrow: [["p/q", ...], ...]},
         "theta": {v: int}, "kappa": {v: int}}

    kappa defaults to 1 everywhere and theta to 0; missing maps are zero.
    """
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except ValueError as e:
            raise errors.InstanceFormatError("malformed JSON: {}".format(e))
    elif not isinstance(doc, dict):
        try:
            doc = json.load(doc)
        except ValueError as e:
            raise errors.InstanceFormatError("malformed JSON: {}".format(e))
    if not isinstance(doc, dict):
        raise errors.InstanceFormatError("instance must be a JSON object")
    try:
        qdoc = doc["quiver"]
        arrows = [Arrow(str(a["id"]), str(a["tail"]), str(a["head"])) for a in qdoc.get("arrows", [])]
        q = Quiver([str(v) for v in qdoc["vertices"]], arrows)
        dims = {str(v): _dimension(v, d) for v, d in doc.get("dims", {}).items()}
        maps = {}
        for aid, rows in doc.get("maps", {}).items():
            a = q.arrow(str(aid))
            maps[str(aid)] = Mat.from_json(rows, dims.get(a.head, 0), dims.get(a.tail, 0))
        theta = Weight(doc.get("theta", {}))
        kappa = Weight(doc["kappa"]) if "kappa" in doc else Weight.constant(q, 1)
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise errors.InstanceFormatError("malformed instance: {!r}".format(e))
    return Representation(q, dims, maps), theta, kappa


def dump_instance(m: Representation, theta: Weight, kappa: Weight) -> Dict[str, Any]:
    q = m.quiver
    return {
        "quiver": {
            "vertices": list(q.vertices),
            "arrows": [{"id": a.id, "tail": a.tail, "head": a.head} for a in q.arrows],
        },
        "dims": dict(m.dims),
        "maps": {a.id: m.maps[a.id].to_json() for a in q.arrows},
        "theta": {v: theta[v] for v in q.vertices},
        "kappa": {v: kappa[v] for v in q.vertices},
    }
