"""PageRank: power iteration (basic and damped) and the linear-system form.

The basic update is ``PR'(u) = d * sum(PR(v) / |out(v)| for v in in(u))``;
the damped update adds the teleport term ``(1 - d) / |N|``.  Incoming sums
are accumulated in ascending source order so that results are identical
bit-for-bit across runs and across graph layouts.

Rank values may be :class:`fractions.Fraction` (``init_ranks(g, exact=True)``),
in which case the iteration is carried out in exact rational arithmetic.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .errors import DanglingNode, EmptyGraph, NotStronglyConnected, SingularSystem
from .graph import GraphRepresentation, adjacency_query
from .ids import id_key

__all__ = [
    "Variant",
    "DanglingPolicy",
    "PageRankConfig",
    "RankState",
    "TransitionMatrix",
    "init_ranks",
    "pagerank_step",
    "pagerank_run",
    "transition_matrix",
    "solve_linear",
    "gauss_solve",
    "is_strongly_connected",
    "rank_positions",
]


class Variant(str, Enum):
    BASIC = "basic"
    DAMPED = "damped"


class DanglingPolicy(str, Enum):
    ERROR = "error"
    UNIFORM = "uniform_redistribute"


@dataclass(frozen=True)
class PageRankConfig:
    """Iteration settings.

    ``d`` defaults to 1 for the basic variant and 0.85 for the damped one.
    ``epsilon`` is the per-page stop margin (max-norm of the change between
    consecutive iterates).
    """

    variant: Variant = Variant.DAMPED
    d: Optional[float] = None
    epsilon: float = 0.01
    max_iter: int = 100
    dangling: DanglingPolicy = DanglingPolicy.ERROR

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "dangling", DanglingPolicy(self.dangling))
        if self.d is None:
            object.__setattr__(self, "d", 1.0 if self.variant is Variant.BASIC else 0.85)
        if not 0 <= self.d <= 1:
            raise ValueError(f"damping factor must lie in [0, 1], got {self.d}")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass(frozen=True)
class RankState:
    ranks: dict
    iterations: int = 0
    converged: bool = False


@dataclass(frozen=True)
class TransitionMatrix:
    """Row-stochastic ``a[i, j] = 1/|out(i)|`` for each arc ``i -> j``."""

    nodes: tuple
    matrix: np.ndarray = field(repr=False)


class _Links:
    """In-lists and out-degrees read once from a layout."""

    def __init__(self, g: GraphRepresentation, policy: DanglingPolicy):
        self.nodes = g.nodes
        if not self.nodes:
            raise EmptyGraph("graph has no nodes")
        adj = {v: adjacency_query(g, v) for v in self.nodes}
        dangling = [v for v in self.nodes if adj[v].out_degree == 0]
        if dangling and policy is DanglingPolicy.ERROR:
            raise DanglingNode(dangling[0])
        n = len(self.nodes)
        # (source, divisor) pairs per destination, ascending by source
        self.sources = {}
        for u in self.nodes:
            pairs = {v: adj[v].out_degree for v in adj[u].in_neighbors}
            pairs.update({v: n for v in dangling})
            self.sources[u] = sorted(pairs.items())


def _constant(value, ranks):
    if ranks and isinstance(next(iter(ranks.values())), Fraction):
        return Fraction(repr(value)) if isinstance(value, float) else Fraction(value)
    return value


def _advance(links: _Links, ranks: dict, cfg: PageRankConfig) -> dict:
    d = _constant(cfg.d, ranks)
    n = len(links.nodes)
    base = (1 - d) / n if cfg.variant is Variant.DAMPED else 0
    new = {}
    for u in links.nodes:
        total = 0
        for v, divisor in links.sources[u]:
            total += ranks[v] / divisor
        new[u] = base + d * total
    return new


def init_ranks(g: GraphRepresentation, exact: bool = False) -> RankState:
    """Uniform start ``1/|N|`` on every node."""
    if g.n == 0:
        raise EmptyGraph("graph has no nodes")
    value = Fraction(1, g.n) if exact else 1.0 / g.n
    return RankState({v: value for v in g.nodes}, 0, False)


def pagerank_step(g: GraphRepresentation, state: RankState, cfg: PageRankConfig) -> RankState:
    links = _Links(g, cfg.dangling)
    return RankState(_advance(links, state.ranks, cfg), state.iterations + 1, False)


def _delta(a: dict, b: dict):
    return max(abs(a[v] - b[v]) for v in a)


def pagerank_run(
    g: GraphRepresentation,
    cfg: PageRankConfig,
    steps: Optional[int] = None,
    start: Optional[RankState] = None,
    on_step: Optional[Callable[[RankState], None]] = None,
) -> RankState:
    """Iterate from the uniform start until convergence or ``max_iter``.

    With ``steps`` exactly that many updates are applied and the stop
    margin only decides the reported ``converged`` flag.  ``on_step`` is
    called with every intermediate state.
    """
    links = _Links(g, cfg.dangling)
    state = start if start is not None else init_ranks(g)
    limit = steps if steps is not None else cfg.max_iter
    ranks, done, converged = state.ranks, state.iterations, False
    for _ in range(limit):
        new = _advance(links, ranks, cfg)
        done += 1
        converged = _delta(new, ranks) <= cfg.epsilon
        ranks = new
        if on_step is not None:
            on_step(RankState(ranks, done, converged))
        if converged and steps is None:
            break
    return RankState(ranks, done, converged)


def transition_matrix(g: GraphRepresentation, dangling=DanglingPolicy.ERROR) -> TransitionMatrix:
    dangling = DanglingPolicy(dangling)
    nodes = g.nodes
    index = {v: i for i, v in enumerate(nodes)}
    m = len(nodes)
    a = np.zeros((m, m))
    for v in nodes:
        outs = adjacency_query(g, v).out_neighbors
        if not outs:
            if dangling is DanglingPolicy.ERROR:
                raise DanglingNode(v)
            a[index[v], :] = 1.0 / m
            continue
        for w in outs:
            a[index[v], index[w]] = 1.0 / len(outs)
    return TransitionMatrix(nodes, a)


def is_strongly_connected(support: np.ndarray) -> bool:
    """Strong connectivity of the digraph whose arcs are the nonzeros of ``support``."""
    m = support.shape[0]
    if m == 0:
        return False
    mask = support != 0

    def reach(adj):
        seen = np.zeros(m, dtype=bool)
        seen[0] = True
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for j in np.flatnonzero(adj[i] & ~seen).tolist():
                seen[j] = True
                queue.append(j)
        return seen.all()

    return reach(mask) and reach(mask.T)


def gauss_solve(a: np.ndarray, b: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Solve ``a x = b`` by Gaussian elimination with partial pivoting."""
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    n = a.shape[0]
    scale = max(np.abs(a).max(), 1.0) if a.size else 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[p, k]) <= tol * scale:
            raise SingularSystem(f"pivot {a[p, k]!r} at column {k}")
        if p != k:
            a[[k, p]] = a[[p, k]]
            b[[k, p]] = b[[p, k]]
        factors = a[k + 1 :, k] / a[k, k]
        a[k + 1 :, k:] -= np.outer(factors, a[k, k:])
        b[k + 1 :] -= factors * b[k]
    x = np.zeros(n)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - a[k, k + 1 :] @ x[k + 1 :]) / a[k, k]
    return x


def solve_linear(g: GraphRepresentation, cfg: Optional[PageRankConfig] = None) -> RankState:
    """Stationary vector ``r = r M`` normalised to sum 1.

    ``M`` is the transition matrix for the basic variant (``d`` only scales
    the basic iteration and does not change the eigenvector) and the
    teleporting matrix ``d A + (1 - d)/m`` for the damped one.  One row of
    ``M^T - I`` is replaced by the all-ones normalisation row.
    """
    cfg = cfg or PageRankConfig(variant=Variant.BASIC)
    if g.n == 0:
        raise EmptyGraph("graph has no nodes")
    tm = transition_matrix(g, cfg.dangling)
    m = len(tm.nodes)
    mat = tm.matrix
    if cfg.variant is Variant.DAMPED and cfg.d < 1:
        mat = cfg.d * mat + (1 - cfg.d) / m
    if not is_strongly_connected(mat):
        raise NotStronglyConnected("stationary vector is not unique")
    system = mat.T - np.eye(m)
    system[-1, :] = 1.0
    rhs = np.zeros(m)
    rhs[-1] = 1.0
    r = gauss_solve(system, rhs)
    r[(r < 0) & (r > -1e-12)] = 0.0
    return RankState({v: float(r[i]) for i, v in enumerate(tm.nodes)}, 0, True)


def rank_positions(state: RankState) -> list:
    """``[(position, node, rank), ...]`` by descending rank, ties by node id."""
    order = sorted(state.ranks.items(), key=lambda item: (-item[1], id_key(item[0])))
    return [(pos, node, value) for pos, (node, value) in enumerate(order, start=1)]
