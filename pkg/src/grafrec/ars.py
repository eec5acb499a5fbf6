"""Session-based Top-N recommendation (ARS).

For a query object ``m`` the algorithm

1. collects the kernels linking to ``m`` (first subgraph),
2. adds every object those kernels link to (second subgraph),
3. scores each object by its in-degree inside the second subgraph,
4. sorts by score descending and drops ``m``.

Ties are broken by ascending object id.  The session graph is walked
through an integer digraph layout (edge list by default); the result does
not depend on which layout is used.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Optional

from .errors import UnknownClass, UnknownObject
from .graph import Kind
from .ids import id_key
from .session import SessionGraph

__all__ = ["ArsQuery", "ars_subgraphs", "ars_recommend"]


@dataclass(frozen=True)
class ArsQuery:
    m: Hashable
    class_filter: Optional[Hashable] = None
    top_n: Optional[int] = None

    def __post_init__(self):
        if self.top_n is not None and self.top_n < 1:
            raise ValueError("top_n must be a positive integer")


def _participating(g: SessionGraph, class_filter):
    if class_filter is None:
        return None
    if g.classes is None:
        raise UnknownClass(class_filter)
    return g.classes.kernels_of(class_filter)


def ars_subgraphs(g: SessionGraph, m, class_filter=None, kind=Kind.EDGE_LIST):
    """Return the one-hop and two-hop subgraphs around object ``m``.

    Both are :class:`SessionGraph` fragments.  With ``class_filter`` only
    kernels of that class take part.
    """
    if m not in g.objects:
        raise UnknownObject(m)
    allowed = _participating(g, class_filter)
    rep, ids = g.to_representation(kind)
    index = {v: i for i, v in enumerate(ids)}

    kernels = [ids[i] for i in rep.in_neighbors(index[m])]
    if allowed is not None:
        kernels = [j for j in kernels if j in allowed]
    first = SessionGraph(kernels, {m}, {(j, m) for j in kernels})

    arcs = {(j, ids[i]) for j in kernels for i in rep.out_neighbors(index[j])}
    second = SessionGraph(kernels, {m} | {o for _, o in arcs}, arcs)
    return first, second


def ars_recommend(g: SessionGraph, q: ArsQuery, kind=Kind.EDGE_LIST) -> list:
    """Ranked ``[(object, in_degree), ...]`` for the query, best first."""
    _, second = ars_subgraphs(g, q.m, q.class_filter, kind)
    scores = {o: 0 for o in second.objects}
    for _, o in second.arcs:
        scores[o] += 1
    del scores[q.m]
    ranked = sorted(scores.items(), key=lambda item: (-item[1], id_key(item[0])))
    if q.top_n is not None:
        ranked = ranked[: q.top_n]
    return ranked
