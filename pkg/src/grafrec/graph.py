"""Finite directed graphs in five interchangeable physical layouts.

Every layout holds the same abstract ``(N, E)``: a sorted node tuple and a
set of arcs without parallels or self-loops.  Node ids are non-negative
integers and need not be contiguous; the matrix layouts map ids to row
indices internally.

Each class answers neighbour queries from its own storage, so
:func:`adjacency_query` exercises the layout it is given rather than a
shared cache.  Optional arc weights travel in a side table that is not
counted in :attr:`GraphRepresentation.cells`.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np

from .errors import BadId, DuplicateArc, SelfLoop, UnknownNode

__all__ = [
    "Kind",
    "AsymptoticClass",
    "Adjacency",
    "MemoryProfile",
    "GraphRepresentation",
    "EdgeList",
    "AdjacencyMatrix",
    "IncidenceMatrix",
    "AdjacencyList",
    "IncidenceList",
    "build_from_edges",
    "convert",
    "adjacency_query",
    "memory_profile",
]


class Kind(str, Enum):
    EDGE_LIST = "edge-list"
    ADJACENCY_MATRIX = "adjacency-matrix"
    INCIDENCE_MATRIX = "incidence-matrix"
    ADJACENCY_LIST = "adjacency-list"
    INCIDENCE_LIST = "incidence-list"

    def __str__(self):
        return self.value


class AsymptoticClass(str, Enum):
    N2 = "N^2"
    NE = "N*E"
    N_PLUS_E = "N+E"
    E = "E"

    def __str__(self):
        return self.value


_ASYMPTOTIC = {
    Kind.ADJACENCY_MATRIX: AsymptoticClass.N2,
    Kind.INCIDENCE_MATRIX: AsymptoticClass.NE,
    Kind.ADJACENCY_LIST: AsymptoticClass.N_PLUS_E,
    Kind.INCIDENCE_LIST: AsymptoticClass.N_PLUS_E,
    Kind.EDGE_LIST: AsymptoticClass.E,
}


@dataclass(frozen=True)
class Adjacency:
    in_degree: int
    out_degree: int
    in_neighbors: tuple
    out_neighbors: tuple


@dataclass(frozen=True)
class MemoryProfile:
    kind: Kind
    n: int
    e: int
    cells: int
    asymptotic_class: AsymptoticClass


def _check_id(node):
    if isinstance(node, bool) or not isinstance(node, (int, np.integer)) or node < 0:
        raise BadId(node)
    return int(node)


class GraphRepresentation:
    """Common surface of the five layouts.  Instances are immutable."""

    kind: Kind

    def __init__(self, nodes: Iterable[int], arcs: list, weights: Optional[dict] = None):
        # arcs arrive validated and sorted; subclasses encode them
        self._nodes = tuple(sorted(nodes))
        self._node_set = frozenset(self._nodes)
        self._weights = dict(weights or {})
        self._e = len(arcs)
        self._encode(arcs)

    def _encode(self, arcs):
        raise NotImplementedError

    def arcs(self) -> list:
        """Arcs as ``(src, dst)`` pairs in ascending order."""
        raise NotImplementedError

    def out_neighbors(self, v) -> tuple:
        raise NotImplementedError

    def in_neighbors(self, v) -> tuple:
        raise NotImplementedError

    @property
    def cells(self) -> int:
        raise NotImplementedError

    @property
    def nodes(self) -> tuple:
        return self._nodes

    @property
    def n(self) -> int:
        return len(self._nodes)

    @property
    def e(self) -> int:
        return self._e

    @property
    def weights(self) -> dict:
        return dict(self._weights)

    def weight(self, src, dst):
        return self._weights.get((src, dst))

    def arc_set(self) -> frozenset:
        return frozenset(self.arcs())

    def __contains__(self, v):
        return v in self._node_set

    def _require(self, v):
        if v not in self._node_set:
            raise UnknownNode(v)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, e={self.e})"


class EdgeList(GraphRepresentation):
    kind = Kind.EDGE_LIST

    def _encode(self, arcs):
        self._arcs = tuple(arcs)

    def arcs(self):
        return list(self._arcs)

    def out_neighbors(self, v):
        self._require(v)
        return tuple(d for s, d in self._arcs if s == v)

    def in_neighbors(self, v):
        self._require(v)
        return tuple(sorted(s for s, d in self._arcs if d == v))

    @property
    def cells(self):
        return 2 * len(self._arcs)


class AdjacencyMatrix(GraphRepresentation):
    kind = Kind.ADJACENCY_MATRIX

    def _encode(self, arcs):
        self._index = {v: i for i, v in enumerate(self._nodes)}
        self.matrix = np.zeros((len(self._nodes), len(self._nodes)), dtype=np.int8)
        for s, d in arcs:
            self.matrix[self._index[s], self._index[d]] = 1
        self.matrix.setflags(write=False)

    def arcs(self):
        rows, cols = np.nonzero(self.matrix)
        return [(self._nodes[i], self._nodes[j]) for i, j in zip(rows.tolist(), cols.tolist())]

    def out_neighbors(self, v):
        self._require(v)
        return tuple(self._nodes[j] for j in np.flatnonzero(self.matrix[self._index[v]]).tolist())

    def in_neighbors(self, v):
        self._require(v)
        return tuple(self._nodes[i] for i in np.flatnonzero(self.matrix[:, self._index[v]]).tolist())

    @property
    def cells(self):
        return self.matrix.size


class IncidenceMatrix(GraphRepresentation):
    """Directed incidence: column k holds -1 at the source row, +1 at the destination row."""

    kind = Kind.INCIDENCE_MATRIX

    def _encode(self, arcs):
        self._index = {v: i for i, v in enumerate(self._nodes)}
        self.matrix = np.zeros((len(self._nodes), len(arcs)), dtype=np.int8)
        for k, (s, d) in enumerate(arcs):
            self.matrix[self._index[s], k] = -1
            self.matrix[self._index[d], k] = 1
        self.matrix.setflags(write=False)

    def _column_ends(self, k):
        col = self.matrix[:, k]
        return self._nodes[int(np.flatnonzero(col == -1)[0])], self._nodes[int(np.flatnonzero(col == 1)[0])]

    def arcs(self):
        return sorted(self._column_ends(k) for k in range(self.matrix.shape[1]))

    def out_neighbors(self, v):
        self._require(v)
        cols = np.flatnonzero(self.matrix[self._index[v]] == -1).tolist()
        return tuple(sorted(self._column_ends(k)[1] for k in cols))

    def in_neighbors(self, v):
        self._require(v)
        cols = np.flatnonzero(self.matrix[self._index[v]] == 1).tolist()
        return tuple(sorted(self._column_ends(k)[0] for k in cols))

    @property
    def cells(self):
        return self.matrix.size


class AdjacencyList(GraphRepresentation):
    """Per-node successor and predecessor lists (one header per node)."""

    kind = Kind.ADJACENCY_LIST

    def _encode(self, arcs):
        succ = {v: [] for v in self._nodes}
        pred = {v: [] for v in self._nodes}
        for s, d in arcs:
            succ[s].append(d)
            pred[d].append(s)
        self.succ = {v: tuple(ns) for v, ns in succ.items()}
        self.pred = {v: tuple(sorted(ns)) for v, ns in pred.items()}

    def arcs(self):
        return [(s, d) for s in self._nodes for d in self.succ[s]]

    def out_neighbors(self, v):
        self._require(v)
        return self.succ[v]

    def in_neighbors(self, v):
        self._require(v)
        return self.pred[v]

    @property
    def cells(self):
        return len(self._nodes) + sum(len(x) for x in self.succ.values()) + sum(len(x) for x in self.pred.values())


class IncidenceList(GraphRepresentation):
    """Per-node lists of incident arcs.

    Each entry is ``(arc_id, direction, other_end)`` with direction -1 when
    the node is the arc's source and +1 when it is the destination.
    """

    kind = Kind.INCIDENCE_LIST

    def _encode(self, arcs):
        inc = {v: [] for v in self._nodes}
        for k, (s, d) in enumerate(arcs):
            inc[s].append((k, -1, d))
            inc[d].append((k, 1, s))
        self.incident = {v: tuple(refs) for v, refs in inc.items()}

    def arcs(self):
        found = {}
        for v, refs in self.incident.items():
            for k, direction, other in refs:
                if direction == -1:
                    found[k] = (v, other)
        return sorted(found.values())

    def out_neighbors(self, v):
        self._require(v)
        return tuple(sorted(o for _, direction, o in self.incident[v] if direction == -1))

    def in_neighbors(self, v):
        self._require(v)
        return tuple(sorted(o for _, direction, o in self.incident[v] if direction == 1))

    @property
    def cells(self):
        return len(self._nodes) + sum(len(refs) for refs in self.incident.values())


_CLASSES = {
    cls.kind: cls for cls in (EdgeList, AdjacencyMatrix, IncidenceMatrix, AdjacencyList, IncidenceList)
}


def build_from_edges(edges: Iterable, nodes: Iterable[int] = ()) -> EdgeList:
    """Build an edge-list graph from ``(src, dst)`` or ``(src, dst, weight)`` tuples.

    ``nodes`` may declare isolated vertices; endpoints are added implicitly.
    """
    node_set = {_check_id(v) for v in nodes}
    arcs = set()
    weights = {}
    for edge in edges:
        src, dst = _check_id(edge[0]), _check_id(edge[1])
        if src == dst:
            raise SelfLoop(src)
        if (src, dst) in arcs:
            raise DuplicateArc(src, dst)
        arcs.add((src, dst))
        if len(edge) > 2 and edge[2] is not None:
            weights[(src, dst)] = edge[2]
        node_set.add(src)
        node_set.add(dst)
    return EdgeList(node_set, sorted(arcs), weights)


def convert(g: GraphRepresentation, target) -> GraphRepresentation:
    target = Kind(target)
    if g.kind is target:
        return g
    return _CLASSES[target](g.nodes, g.arcs(), g.weights)


def adjacency_query(g: GraphRepresentation, v) -> Adjacency:
    outs = tuple(sorted(g.out_neighbors(v)))
    ins = tuple(sorted(g.in_neighbors(v)))
    return Adjacency(len(ins), len(outs), ins, outs)


def memory_profile(kind, n: int, e: int) -> MemoryProfile:
    """Exact stored-cell count and asymptotic class for a layout of size ``(n, e)``."""
    kind = Kind(kind)
    if n < 0 or e < 0:
        raise ValueError("n and e must be non-negative")
    if kind is Kind.ADJACENCY_MATRIX:
        cells = n * n
    elif kind is Kind.INCIDENCE_MATRIX:
        cells = n * e
    elif kind is Kind.EDGE_LIST:
        cells = 2 * e
    else:
        cells = n + 2 * e
    return MemoryProfile(kind, n, e, cells, _ASYMPTOTIC[kind])
