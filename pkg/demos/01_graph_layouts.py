"""Five ways to store one small digraph, and what each costs."""
# %% [markdown]
# Build a graph from an edge list, then look at it through every layout.

# %%
from grafrec import Kind, adjacency_query, build_from_edges, convert, memory_profile

arcs = [(1, 2), (2, 5), (3, 1), (3, 2), (3, 4), (3, 5), (4, 3), (4, 5), (5, 4)]
g = build_from_edges(arcs)
print(g.n, "nodes,", g.e, "arcs")

# %% [markdown]
# Matrix layouts expose a read-only numpy array.  In the incidence matrix
# each column is one arc: -1 on the tail row, +1 on the head row.

# %%
am = convert(g, Kind.ADJACENCY_MATRIX)
im = convert(g, Kind.INCIDENCE_MATRIX)
print(am.matrix)
print(im.matrix)

# %% [markdown]
# Every layout answers neighbourhood queries the same way.

# %%
for kind in Kind:
    q = adjacency_query(convert(g, kind), 3)
    print(f"{kind.value:17s} out={q.out_neighbors} in={q.in_neighbors}")

# %% [markdown]
# Stored cells grow very differently once the graph gets large and sparse.

# %%
for kind in Kind:
    p = memory_profile(kind, 10_000, 50_000)
    print(f"{kind.value:17s} {p.cells:>12,d}  O({p.asymptotic_class.value})")
