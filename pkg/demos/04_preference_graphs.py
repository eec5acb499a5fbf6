"""From a rating matrix to a preference graph, then walks along meta-paths."""
# %%
from grafrec import RatingMatrix, build_pgrec, extend_pgrec, match_metapath, recommend_via_metapath

rm = RatingMatrix.from_triples(
    [
        ("ann", "film1", 5), ("ann", "film2", 3),
        ("bob", "film1", 2), ("bob", "film2", 4), ("bob", "film3", 5),
        ("cyd", "film2", 3), ("cyd", "film3", 1),
    ],
    scale=(1, 5),
)
print(rm.to_dense())

# %% [markdown]
# Each object pair gets one preference node.  Users link to it with the
# difference of their two ratings; ties add nothing.

# %%
g = build_pgrec(rm)
for p in g.preferences():
    print(p, [(e.a, e.weight) for e in g.edges("UP") if e.b == p or e.a == p])

# %% [markdown]
# Add a group, a category and one friendship link, then count walks of a given type shape.

# %%
plus = extend_pgrec(
    g,
    groups={"ann": ["club"], "cyd": ["club"]},
    categories={"film1": ["drama"], "film3": ["drama"]},
    intra_edges=[("ann", "bob")],
)
print("UOU from ann:", match_metapath(plus, "UOU", "ann"))
print("UOKOU from cyd:", match_metapath(plus, "UOKOU", "cyd"))

# %% [markdown]
# Users reachable along a pattern vote for the objects they rated.

# %%
print(recommend_via_metapath(plus, "cyd", "UGU"))
print(recommend_via_metapath(plus, "ann", "UOU"))
