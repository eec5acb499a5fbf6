"""Session graphs: validating them and asking for related objects."""
# %%
from grafrec import (
    ArsQuery,
    KernelClass,
    KernelClassPartition,
    SessionGraph,
    ars_recommend,
    extract_session,
    validate_session_graph,
)

# %% [markdown]
# Kernels are things like orders or wishlists; each links to the objects
# it contains.  Here two orders are behavioural kernels and one product
# category is a static kernel.

# %%
classes = KernelClassPartition(
    [
        KernelClass("orders", {"order1", "order2"}, "behavioral"),
        KernelClass("catalogue", {"garden"}, "static"),
    ]
)
g = SessionGraph.from_arcs(
    [
        ("order1", "hose"), ("order1", "rake"), ("order1", "gloves"),
        ("order2", "rake"), ("order2", "gloves"),
        ("garden", "gloves"), ("garden", "shears"),
    ],
    classes,
)
print("violations:", validate_session_graph(g))
print(extract_session(g, "order2"))

# %% [markdown]
# Objects seen together with gloves, scored by how many sessions share them.

# %%
for obj, score in ars_recommend(g, ArsQuery("gloves")):
    print(obj, score)

# %% [markdown]
# Restricting to one kernel class narrows the evidence.

# %%
print(ars_recommend(g, ArsQuery("gloves", class_filter="catalogue")))

# %% [markdown]
# A broken graph is reported rule by rule rather than rejected outright.

# %%
broken = SessionGraph(g.kernels | {"empty_cart"}, g.objects | {"ladder"}, g.arcs, classes)
for v in validate_session_graph(broken):
    print(v)
