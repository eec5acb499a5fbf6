"""Heterogeneous information networks for recommendation.

Covers the weighted user-object graph and its rating matrix, the
tripartite preference graph (users, preferences, objects), its extension
with groups, categories and intra-layer links, and meta-path walks such
as ``UOU`` (users who rated the same object) or ``UOKOU`` (users who rated
objects of the same category).

Node ids must be unique across node types.  Preference nodes get ids of
the form ``p[i,j]`` for the object pair ``i < j``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Iterable, Mapping, Optional

import numpy as np

from .errors import (
    DuplicateArc,
    InvalidPattern,
    OutOfScale,
    TypeMismatch,
    UnknownNode,
    UnknownObject,
    UnknownUser,
    ValidationError,
    WrongNodeType,
)
from .ids import id_key, sorted_ids

__all__ = [
    "NodeType",
    "EdgeType",
    "HetEdge",
    "HetGraph",
    "RatingMatrix",
    "PGRecGraph",
    "MetaPathPattern",
    "preference_id",
    "rating_matrix_from_bipartite",
    "build_pgrec",
    "extend_pgrec",
    "match_metapath",
    "recommend_via_metapath",
]


class NodeType(str, Enum):
    USER = "User"
    OBJECT = "Object"
    PREFERENCE = "Preference"
    GROUP = "Group"
    CATEGORY = "Category"

    @property
    def letter(self):
        return _LETTERS[self]


_LETTERS = {
    NodeType.USER: "U",
    NodeType.OBJECT: "O",
    NodeType.PREFERENCE: "P",
    NodeType.GROUP: "G",
    NodeType.CATEGORY: "K",
}
_PATTERN_TYPES = {"U": NodeType.USER, "O": NodeType.OBJECT, "G": NodeType.GROUP, "K": NodeType.CATEGORY}


class EdgeType(str, Enum):
    UO = "UO"
    PO = "PO"
    UP = "UP"
    UG = "UG"
    OK = "OK"
    UU = "UU"
    OO = "OO"

    @property
    def signature(self):
        return _SIGNATURES[self]

    @property
    def weighted(self):
        return self in (EdgeType.UO, EdgeType.PO, EdgeType.UP)


_SIGNATURES = {
    EdgeType.UO: (NodeType.USER, NodeType.OBJECT),
    EdgeType.PO: (NodeType.PREFERENCE, NodeType.OBJECT),
    EdgeType.UP: (NodeType.USER, NodeType.PREFERENCE),
    EdgeType.UG: (NodeType.USER, NodeType.GROUP),
    EdgeType.OK: (NodeType.OBJECT, NodeType.CATEGORY),
    EdgeType.UU: (NodeType.USER, NodeType.USER),
    EdgeType.OO: (NodeType.OBJECT, NodeType.OBJECT),
}


@dataclass(frozen=True)
class HetEdge:
    a: Hashable
    b: Hashable
    edge_type: EdgeType
    weight: Optional[float] = None

    @property
    def key(self):
        return (self.a, self.b, self.edge_type)


def preference_id(i, j) -> str:
    return f"p[{i},{j}]"


class HetGraph:
    """Typed nodes and typed, optionally weighted, undirected edges.

    Endpoints are stored in the order of the edge type's signature
    (``UO`` edges are ``(user, object)``); same-type edges are stored with
    the smaller id first.
    """

    def __init__(self, nodes: Mapping = (), edges: Iterable = ()):
        self._nodes = {}
        self._edges = {}
        self._adj = defaultdict(list)
        for v, t in dict(nodes).items():
            self._add_node(v, t)
        for e in edges:
            if not isinstance(e, HetEdge):
                e = HetEdge(*e)
            self._add_edge(e.a, e.b, e.edge_type, e.weight)

    def _add_node(self, v, t):
        t = NodeType(t)
        have = self._nodes.get(v)
        if have is not None and have is not t:
            raise TypeMismatch(f"node {v!r} already exists as {have.value}, not {t.value}")
        self._nodes[v] = t

    def _add_edge(self, a, b, edge_type, weight=None):
        edge_type = EdgeType(edge_type)
        for v in (a, b):
            if v not in self._nodes:
                raise UnknownNode(v)
        first, second = edge_type.signature
        if (self._nodes[a], self._nodes[b]) != (first, second):
            if (self._nodes[b], self._nodes[a]) == (first, second):
                a, b = b, a
            else:
                raise TypeMismatch(
                    f"edge {edge_type.value} cannot join {self._nodes[a].value} {a!r} and {self._nodes[b].value} {b!r}"
                )
        if first is second:
            if a == b:
                raise ValidationError(f"self-loop on {a!r}")
            if id_key(b) < id_key(a):
                a, b = b, a
        if edge_type.weighted:
            if weight is None:
                raise ValidationError(f"{edge_type.value} edge ({a!r}, {b!r}) needs a weight")
            if edge_type is EdgeType.PO and weight not in (-1, 1):
                raise ValidationError(f"PO weight must be -1 or +1, got {weight!r}")
        elif weight is not None:
            raise ValidationError(f"{edge_type.value} edges are unweighted")
        edge = HetEdge(a, b, edge_type, weight)
        if edge.key in self._edges:
            raise DuplicateArc(a, b)
        self._edges[edge.key] = edge
        self._adj[a].append((b, edge))
        self._adj[b].append((a, edge))

    def _copy_into(self, other):
        other._nodes = dict(self._nodes)
        other._edges = dict(self._edges)
        other._adj = defaultdict(list, {v: list(ns) for v, ns in self._adj.items()})
        return other

    @property
    def nodes(self) -> dict:
        return dict(self._nodes)

    def node_type(self, v) -> NodeType:
        try:
            return self._nodes[v]
        except KeyError:
            raise UnknownNode(v) from None

    def nodes_of_type(self, t) -> list:
        t = NodeType(t)
        return sorted_ids(v for v, tv in self._nodes.items() if tv is t)

    def edges(self, edge_type=None) -> list:
        found = self._edges.values()
        if edge_type is not None:
            edge_type = EdgeType(edge_type)
            found = [e for e in found if e.edge_type is edge_type]
        return sorted(found, key=lambda e: (e.edge_type.value, id_key(e.a), id_key(e.b)))

    def edge(self, a, b, edge_type) -> Optional[HetEdge]:
        edge_type = EdgeType(edge_type)
        return self._edges.get((a, b, edge_type)) or self._edges.get((b, a, edge_type))

    def neighbors(self, v) -> list:
        """``[(other, edge), ...]`` for every edge incident to ``v``."""
        if v not in self._nodes:
            raise UnknownNode(v)
        return list(self._adj.get(v, ()))

    def __contains__(self, v):
        return v in self._nodes

    def __len__(self):
        return len(self._nodes)

    def __repr__(self):
        return f"{type(self).__name__}(nodes={len(self._nodes)}, edges={len(self._edges)})"


@dataclass(frozen=True)
class RatingMatrix:
    """Sparse ``user x object`` ratings on the integer scale ``k_min..k_max``.

    Use ``scale=(0, 1)`` for binary like/dislike data.  ``users`` and
    ``objects`` may list entities without ratings.
    """

    entries: Mapping
    scale: tuple = (1, 5)
    users: frozenset = frozenset()
    objects: frozenset = frozenset()

    def __post_init__(self):
        entries = dict(self.entries)
        k_min, k_max = self.scale
        if not k_min < k_max:
            raise ValidationError(f"scale needs k_min < k_max, got {self.scale}")
        for (u, o), r in entries.items():
            if not k_min <= r <= k_max:
                raise OutOfScale(u, o, r, self.scale)
        users = frozenset(self.users) | {u for u, _ in entries}
        objects = frozenset(self.objects) | {o for _, o in entries}
        clash = users & objects
        if clash:
            raise ValidationError(f"ids used both as user and object: {sorted_ids(clash)}")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "scale", (k_min, k_max))
        object.__setattr__(self, "users", users)
        object.__setattr__(self, "objects", objects)

    @classmethod
    def from_triples(cls, triples: Iterable, scale=(1, 5)):
        entries = {}
        for u, o, r in triples:
            if (u, o) in entries:
                raise ValidationError(f"more than one rating for ({u!r}, {o!r})")
            entries[(u, o)] = r
        return cls(entries, scale)

    def rating(self, user, obj):
        return self.entries.get((user, obj))

    def row(self, user) -> dict:
        return {o: r for (u, o), r in self.entries.items() if u == user}

    def to_dense(self):
        """``(array, users, objects)`` with NaN where no rating exists."""
        users, objects = sorted_ids(self.users), sorted_ids(self.objects)
        ui = {u: i for i, u in enumerate(users)}
        oi = {o: i for i, o in enumerate(objects)}
        out = np.full((len(users), len(objects)), np.nan)
        for (u, o), r in self.entries.items():
            out[ui[u], oi[o]] = r
        return out, users, objects

    def __len__(self):
        return len(self.entries)


class PGRecGraph(HetGraph):
    """Tripartite preference graph over users, preferences and objects."""

    def __init__(self, nodes=(), edges=(), scale=(1, 5)):
        super().__init__(nodes, edges)
        self.scale = tuple(scale)

    def preferences(self) -> list:
        return self.nodes_of_type(NodeType.PREFERENCE)


def rating_matrix_from_bipartite(g: HetGraph, scale=(1, 5)) -> RatingMatrix:
    for v, t in g.nodes.items():
        if t not in (NodeType.USER, NodeType.OBJECT):
            raise WrongNodeType(f"node {v!r} has type {t.value}; only User and Object allowed")
    entries = {}
    for e in g.edges():
        if e.edge_type is not EdgeType.UO:
            raise WrongNodeType(f"edge type {e.edge_type.value} not allowed in a user-object graph")
        entries[(e.a, e.b)] = e.weight
    return RatingMatrix(entries, scale, g.nodes_of_type(NodeType.USER), g.nodes_of_type(NodeType.OBJECT))


def build_pgrec(rm: RatingMatrix) -> PGRecGraph:
    """Tripartite preference graph from a rating matrix.

    Every object pair ``i < j`` that some user rated differently gets one
    preference node ``p`` with edges ``(p, i, +1)`` and ``(p, j, -1)``; each
    such user ``u`` is linked to ``p`` with weight ``r_ui - r_uj``.  Pairs
    rated equally carry no preference and produce no edge.
    """
    g = PGRecGraph(scale=rm.scale)
    for u in sorted_ids(rm.users):
        g._add_node(u, NodeType.USER)
    for o in sorted_ids(rm.objects):
        g._add_node(o, NodeType.OBJECT)
    for (u, o), r in sorted(rm.entries.items(), key=lambda kv: (id_key(kv[0][0]), id_key(kv[0][1]))):
        g._add_edge(u, o, EdgeType.UO, r)

    for u in sorted_ids(rm.users):
        row = rm.row(u)
        rated = sorted_ids(row)
        for x, i in enumerate(rated):
            for j in rated[x + 1 :]:
                diff = row[i] - row[j]
                if diff == 0:
                    continue
                p = preference_id(i, j)
                if p not in g:
                    g._add_node(p, NodeType.PREFERENCE)
                    g._add_edge(p, i, EdgeType.PO, 1)
                    g._add_edge(p, j, EdgeType.PO, -1)
                g._add_edge(u, p, EdgeType.UP, diff)
    return g


def extend_pgrec(
    g: HetGraph,
    groups: Optional[Mapping] = None,
    categories: Optional[Mapping] = None,
    intra_edges: Iterable = (),
) -> HetGraph:
    """Copy of ``g`` with group, category and intra-layer links added.

    ``groups`` maps user -> group ids, ``categories`` maps object ->
    category ids; all added edges are unweighted.  ``intra_edges`` are
    user-user or object-object pairs.
    """
    out = g._copy_into(type(g).__new__(type(g)))
    if isinstance(g, PGRecGraph):
        out.scale = g.scale
    for user, gids in (groups or {}).items():
        if g._nodes.get(user) is not NodeType.USER:
            raise UnknownUser(user)
        for gid in gids:
            out._add_node(gid, NodeType.GROUP)
            out._add_edge(user, gid, EdgeType.UG)
    for obj, kids in (categories or {}).items():
        if g._nodes.get(obj) is not NodeType.OBJECT:
            raise UnknownObject(obj)
        for kid in kids:
            out._add_node(kid, NodeType.CATEGORY)
            out._add_edge(obj, kid, EdgeType.OK)
    for a, b in intra_edges:
        ta, tb = out.node_type(a), out.node_type(b)
        if ta is tb is NodeType.USER:
            out._add_edge(a, b, EdgeType.UU)
        elif ta is tb is NodeType.OBJECT:
            out._add_edge(a, b, EdgeType.OO)
        else:
            raise TypeMismatch(f"intra-layer edge needs two users or two objects, got {ta.value}-{tb.value}")
    return out


@dataclass(frozen=True)
class MetaPathPattern:
    """Node-type sequence over ``U`` (user), ``O`` (object), ``G`` (group), ``K`` (category)."""

    letters: str

    def __post_init__(self):
        letters = str(self.letters).upper()
        if len(letters) < 2:
            raise InvalidPattern(f"meta-path needs at least two letters, got {letters!r}")
        bad = sorted(set(letters) - set(_PATTERN_TYPES))
        if bad:
            raise InvalidPattern(f"unknown meta-path letters {bad} in {letters!r}")
        object.__setattr__(self, "letters", letters)

    @property
    def types(self):
        return tuple(_PATTERN_TYPES[c] for c in self.letters)

    @property
    def symmetric(self):
        return self.letters == self.letters[::-1]

    def __str__(self):
        return self.letters


def _pattern(p) -> MetaPathPattern:
    return p if isinstance(p, MetaPathPattern) else MetaPathPattern(p)


def match_metapath(g: HetGraph, pattern, start) -> dict:
    """Count typed walks following ``pattern`` from ``start``.

    A walk may not step straight back over the edge it just used.  Edge
    direction is ignored.  For palindromic patterns the start node is left
    out of the result.  Returns ``{end_node: count}`` in id order.
    """
    pattern = _pattern(pattern)
    types = pattern.types
    if g.node_type(start) is not types[0]:
        raise TypeMismatch(f"start {start!r} is {g.node_type(start).value}, pattern starts with {pattern.letters[0]}")
    frontier = {(start, None): 1}
    for want in types[1:]:
        nxt = defaultdict(int)
        for (v, via), count in frontier.items():
            for other, edge in g._adj.get(v, ()):
                if edge is via or g._nodes[other] is not want:
                    continue
                nxt[(other, edge)] += count
        frontier = nxt
    ends = defaultdict(int)
    for (v, _), count in frontier.items():
        ends[v] += count
    if pattern.symmetric:
        ends.pop(start, None)
    return {v: ends[v] for v in sorted_ids(ends)}


def recommend_via_metapath(g: HetGraph, user, pattern, top_n: Optional[int] = None) -> list:
    """Rank objects the user has not rated by meta-path neighbour support.

    Each end user ``v`` of the walk contributes its walk count to every
    object ``v`` rated.  Returns ``[(object, score), ...]`` best first,
    ties by object id.
    """
    pattern = _pattern(pattern)
    if pattern.letters[0] != "U" or pattern.letters[-1] != "U":
        raise InvalidPattern(f"recommendation needs a U...U pattern, got {pattern.letters}")

    def rated(v):
        return {o for o, e in g._adj.get(v, ()) if e.edge_type is EdgeType.UO}

    ends = match_metapath(g, pattern, user)
    seen = rated(user)
    scores = defaultdict(int)
    for v, count in ends.items():
        for o in rated(v) - seen:
            scores[o] += count
    ranked = sorted(scores.items(), key=lambda kv: (-kv[1], id_key(kv[0])))
    return ranked[:top_n] if top_n is not None else ranked
