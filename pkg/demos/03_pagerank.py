"""PageRank on a five-page web, iterated exactly and solved directly."""
# %%
from fractions import Fraction

import numpy as np

from grafrec import (
    PageRankConfig,
    Variant,
    build_from_edges,
    init_ranks,
    pagerank_run,
    rank_positions,
    solve_linear,
    transition_matrix,
)

g = build_from_edges([(1, 2), (2, 5), (3, 1), (3, 2), (3, 4), (3, 5), (4, 3), (4, 5), (5, 4)])
basic = PageRankConfig(variant=Variant.BASIC, d=1.0)

# %% [markdown]
# With rational arithmetic the first two steps are exact.

# %%
state = init_ranks(g, exact=True)
for step in range(3):
    print(step, [str(state.ranks[v]) for v in g.nodes])
    state = pagerank_run(g, basic, steps=1, start=state)

# %% [markdown]
# Ranking after two steps.

# %%
two = pagerank_run(g, basic, steps=2)
for pos, node, value in rank_positions(two):
    print(pos, node, round(value, 4))

# %% [markdown]
# The fixed point satisfies r = rA; solving for it directly gives
# (1, 2, 4, 8, 7) / 22.

# %%
r = solve_linear(g)
print({v: Fraction(x).limit_denominator(100) for v, x in r.ranks.items()})
a = transition_matrix(g).matrix
vec = np.array([r.ranks[v] for v in g.nodes])
print("residual", np.abs(vec @ a - vec).max())

# %% [markdown]
# Damping changes the answer only slightly here, and converges fast.

# %%
damped = pagerank_run(g, PageRankConfig(variant=Variant.DAMPED, epsilon=1e-10, max_iter=500))
print(damped.iterations, {v: round(x, 4) for v, x in damped.ranks.items()})
