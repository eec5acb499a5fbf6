"""Recommendation-session graphs, kernel classes and utility-argmax sets.

A session graph is a bipartite directed unigraph whose arcs run from
*kernels* (orders, wishlists, categories, visits, ...) to *objects*
(recommendable items).  A session is one kernel together with its whole
out-neighbourhood.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Hashable, Mapping, Optional

from .errors import TypeMismatch, UnknownClass, UnknownKernel, UnknownObject, UnknownUser
from .graph import GraphRepresentation, Kind, build_from_edges, convert
from .ids import id_key, sorted_ids

__all__ = [
    "ClassType",
    "KernelClass",
    "KernelClassPartition",
    "SessionGraph",
    "Session",
    "Violation",
    "UtilityDomain",
    "UtilityTable",
    "validate_session_graph",
    "extract_session",
    "recommend_by_utility",
    "recommend_for_object_by_utility",
]


class ClassType(str, Enum):
    """Descriptive label only; no algorithm branches on it."""

    BEHAVIORAL = "behavioral"
    STATIC = "static"
    MIXED = "mixed"


@dataclass(frozen=True)
class KernelClass:
    class_id: Hashable
    kernels: frozenset
    class_type: ClassType = ClassType.BEHAVIORAL

    def __post_init__(self):
        object.__setattr__(self, "kernels", frozenset(self.kernels))
        object.__setattr__(self, "class_type", ClassType(self.class_type))


@dataclass(frozen=True)
class KernelClassPartition:
    classes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)

    def kernels_of(self, class_id) -> frozenset:
        members = [c.kernels for c in self.classes if c.class_id == class_id]
        if not members:
            raise UnknownClass(class_id)
        return frozenset().union(*members)


@dataclass(frozen=True)
class SessionGraph:
    """Kernels ``J``, objects ``O`` and arcs ``E`` (kernel, object).

    Construction does not enforce the model constraints so that broken
    inputs can be inspected; call :func:`validate_session_graph`.
    """

    kernels: frozenset
    objects: frozenset
    arcs: frozenset
    classes: Optional[KernelClassPartition] = None
    _succ: dict = field(init=False, repr=False, compare=False)
    _pred: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kernels", frozenset(self.kernels))
        object.__setattr__(self, "objects", frozenset(self.objects))
        object.__setattr__(self, "arcs", frozenset(tuple(a) for a in self.arcs))
        succ, pred = {}, {}
        for s, d in self.arcs:
            succ.setdefault(s, set()).add(d)
            pred.setdefault(d, set()).add(s)
        object.__setattr__(self, "_succ", {k: frozenset(v) for k, v in succ.items()})
        object.__setattr__(self, "_pred", {k: frozenset(v) for k, v in pred.items()})

    @classmethod
    def from_arcs(cls, arcs, classes=None, kernels=(), objects=()):
        """Infer J and O from arc endpoints, plus any explicitly declared nodes."""
        arcs = [tuple(a) for a in arcs]
        js = set(kernels) | {s for s, _ in arcs}
        os_ = set(objects) | {d for _, d in arcs}
        return cls(js, os_, arcs, classes)

    def objects_of(self, kernel) -> frozenset:
        return self._succ.get(kernel, frozenset())

    def kernels_of(self, obj) -> frozenset:
        return self._pred.get(obj, frozenset())

    def to_representation(self, kind=Kind.EDGE_LIST):
        """Encode as an integer-id digraph.

        Returns ``(graph, ids)`` where ``ids[i]`` is the original id of node
        ``i``.  Ids are assigned in :func:`~grafrec.ids.id_key` order, so
        integer order agrees with id order.
        """
        ids = sorted_ids(self.kernels | self.objects)
        index = {v: i for i, v in enumerate(ids)}
        rep = build_from_edges(((index[s], index[d]) for s, d in self.arcs), nodes=range(len(ids)))
        return convert(rep, kind), ids


@dataclass(frozen=True)
class Session:
    kernel: Hashable
    objects: frozenset
    arcs: frozenset


@dataclass(frozen=True)
class Violation:
    rule: str
    nodes: tuple

    def __str__(self):
        return f"{self.rule}({', '.join(str(n) for n in self.nodes)})"


def validate_session_graph(g: SessionGraph, partition: Optional[KernelClassPartition] = None) -> list:
    """Return every constraint violation in ``g``; an empty list means valid.

    ``partition`` defaults to ``g.classes``.  Rules reported:
    ``KernelObjectCollision``, ``ForeignArc``, ``OrphanKernel``,
    ``OrphanObject``, ``OverlappingClasses``, ``UnknownClassMember`` and
    ``UncoveredKernel``.
    """
    found = []
    for v in sorted_ids(g.kernels & g.objects):
        found.append(Violation("KernelObjectCollision", (v,)))
    for s, d in sorted(g.arcs, key=lambda a: (id_key(a[0]), id_key(a[1]))):
        if s not in g.kernels or d not in g.objects:
            found.append(Violation("ForeignArc", (s, d)))
    legal = {(s, d) for s, d in g.arcs if s in g.kernels and d in g.objects}
    has_out = {s for s, _ in legal}
    has_in = {d for _, d in legal}
    for j in sorted_ids(g.kernels - has_out):
        found.append(Violation("OrphanKernel", (j,)))
    for o in sorted_ids(g.objects - has_in):
        found.append(Violation("OrphanObject", (o,)))

    partition = partition if partition is not None else g.classes
    if partition is not None:
        owners = {}
        for cls in partition:
            for j in cls.kernels:
                owners.setdefault(j, []).append(cls.class_id)
        for j in sorted_ids(owners):
            if len(owners[j]) > 1:
                found.append(Violation("OverlappingClasses", (j, *owners[j])))
        for j in sorted_ids(set(owners) - g.kernels):
            found.append(Violation("UnknownClassMember", (j,)))
        for j in sorted_ids(g.kernels - set(owners)):
            found.append(Violation("UncoveredKernel", (j,)))
    return found


def extract_session(g: SessionGraph, kernel) -> Session:
    if kernel not in g.kernels:
        raise UnknownKernel(kernel)
    objects = g.objects_of(kernel)
    return Session(kernel, objects, frozenset((kernel, o) for o in objects))


class UtilityDomain(str, Enum):
    USER_OBJECT = "user_object"
    OBJECT_OBJECT = "object_object"


@dataclass(frozen=True)
class UtilityTable:
    """Sparse utility values over ``left x right``; absent pairs are unevaluated."""

    domain_kind: UtilityDomain
    entries: Mapping

    def __post_init__(self):
        object.__setattr__(self, "domain_kind", UtilityDomain(self.domain_kind))
        object.__setattr__(self, "entries", dict(self.entries))

    def row(self, left) -> dict:
        return {r: v for (l, r), v in self.entries.items() if l == left}


def _argmax(values: dict) -> frozenset:
    if not values:
        return frozenset()
    best = max(values.values())
    return frozenset(k for k, v in values.items() if v == best)


def recommend_by_utility(u: UtilityTable, user) -> frozenset:
    """Objects of maximal utility for ``user`` (ties kept)."""
    if u.domain_kind is not UtilityDomain.USER_OBJECT:
        raise TypeMismatch("expected a user_object utility table")
    row = u.row(user)
    if not row:
        raise UnknownUser(user)
    return _argmax(row)


def recommend_for_object_by_utility(u: UtilityTable, m) -> frozenset:
    """Objects of maximal utility relative to ``m``, never ``m`` itself."""
    if u.domain_kind is not UtilityDomain.OBJECT_OBJECT:
        raise TypeMismatch("expected an object_object utility table")
    row = u.row(m)
    if not row:
        raise UnknownObject(m)
    row.pop(m, None)
    return _argmax(row)
