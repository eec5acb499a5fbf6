import random

import numpy as np
import pytest

from grafrec import (
    EdgeType,
    HetGraph,
    MetaPathPattern,
    NodeType,
    OutOfScale,
    RatingMatrix,
    TypeMismatch,
    UnknownNode,
    UnknownObject,
    UnknownUser,
    ValidationError,
    WrongNodeType,
    build_pgrec,
    extend_pgrec,
    match_metapath,
    rating_matrix_from_bipartite,
    recommend_via_metapath,
)
from grafrec.errors import InvalidPattern
from grafrec.hetnet import preference_id
from generators import random_het, random_rating_matrix
from oracles import brute_differing_coratings, brute_walks


def bipartite(edges):
    nodes = {}
    for u, o, _ in edges:
        nodes[u], nodes[o] = "User", "Object"
    return HetGraph(nodes, [(u, o, "UO", w) for u, o, w in edges])


def test_rating_matrix_from_graph():
    rm = rating_matrix_from_bipartite(bipartite([("u1", "o1", 5), ("u2", "o1", 3)]), (1, 5))
    assert rm.entries == {("u1", "o1"): 5, ("u2", "o1"): 3}
    assert rm.rating("u1", "o1") == 5 and rm.rating("u1", "o2") is None


def test_rating_matrix_empty():
    rm = rating_matrix_from_bipartite(HetGraph(), (1, 5))
    assert len(rm) == 0


def test_rating_matrix_out_of_scale():
    with pytest.raises(OutOfScale):
        rating_matrix_from_bipartite(bipartite([("u1", "o1", 9)]), (1, 5))


def test_rating_matrix_wrong_types():
    g = HetGraph({"u1": "User", "g1": "Group"}, [("u1", "g1", "UG")])
    with pytest.raises(WrongNodeType):
        rating_matrix_from_bipartite(g)


def test_rating_matrix_rules():
    with pytest.raises(ValidationError):
        RatingMatrix({}, (5, 1))
    with pytest.raises(ValidationError):
        RatingMatrix.from_triples([("u1", "o1", 1), ("u1", "o1", 2)])
    with pytest.raises(ValidationError):
        RatingMatrix({("a", "b"): 1, ("b", "c"): 1})
    binary = RatingMatrix({("u1", "o1"): 0, ("u1", "o2"): 1}, (0, 1))
    assert binary.scale == (0, 1)


def test_dense_view():
    rm = RatingMatrix({("u1", "o2"): 4, ("u2", "o1"): 1})
    dense, users, objects = rm.to_dense()
    assert users == ["u1", "u2"] and objects == ["o1", "o2"]
    assert np.isnan(dense[0, 0]) and dense[0, 1] == 4 and dense[1, 0] == 1


def test_pgrec_single_pair():
    g = build_pgrec(RatingMatrix({("u1", "o1"): 5, ("u1", "o2"): 3}))
    p = preference_id("o1", "o2")
    assert g.preferences() == [p]
    assert g.edge("u1", p, "UP").weight == 2
    assert g.edge(p, "o1", "PO").weight == 1
    assert g.edge(p, "o2", "PO").weight == -1
    assert len(g.edges("UO")) == 2


def test_pgrec_equal_ratings_make_no_preference():
    g = build_pgrec(RatingMatrix({("u1", "o1"): 4, ("u1", "o2"): 4}))
    assert g.preferences() == []
    assert g.edges("UP") == [] and g.edges("PO") == []


def test_pgrec_shared_preference_node():
    g = build_pgrec(RatingMatrix({("u1", "o1"): 5, ("u1", "o2"): 3, ("u2", "o1"): 1, ("u2", "o2"): 2}))
    p = preference_id("o1", "o2")
    assert g.preferences() == [p]
    assert g.edge("u1", p, "UP").weight == 2
    assert g.edge("u2", p, "UP").weight == -1


def test_pgrec_weight_range_and_balance():
    rng = random.Random(41)
    for _ in range(30):
        g = build_pgrec(random_rating_matrix(rng))
        assert all(abs(e.weight) <= 4 for e in g.edges("UP"))
        for p in g.preferences():
            po = [e.weight for _, e in g.neighbors(p) if e.edge_type is EdgeType.PO]
            assert sorted(po) == [-1, 1]


def _canonical(g, rename):
    return sorted(
        (rename.get(e.a, e.a), rename.get(e.b, e.b), e.edge_type.value, e.weight) for e in g.edges()
    )


def test_pgrec_label_stable():
    rng = random.Random(42)
    for _ in range(20):
        rm = random_rating_matrix(rng, max_u=6, max_o=6)
        users = sorted(rm.users)
        shuffled = users[:]
        rng.shuffle(shuffled)
        rename = dict(zip(users, shuffled))
        permuted = RatingMatrix({(rename[u], o): r for (u, o), r in rm.entries.items()}, rm.scale, set(shuffled))
        assert _canonical(build_pgrec(rm), rename) == _canonical(build_pgrec(permuted), {})


def test_pgrec_up_counts_match_brute_force():
    rng = random.Random(43)
    for _ in range(20):
        rm = random_rating_matrix(rng)
        g = build_pgrec(rm)
        for p in g.preferences():
            i, j = sorted((o for o, e in g.neighbors(p) if e.edge_type is EdgeType.PO), key=lambda o: int(o[1:]))
            ups = [e for _, e in g.neighbors(p) if e.edge_type is EdgeType.UP]
            assert len(ups) == brute_differing_coratings(rm.entries, i, j)


@pytest.fixture
def small():
    rm = RatingMatrix({("u1", "o1"): 5, ("u2", "o1"): 4, ("u2", "o2"): 2})
    return build_pgrec(rm)


def test_extend_adds_unweighted_membership(small):
    g = extend_pgrec(small, groups={"u1": ["g1"], "u2": ["g1"]})
    assert g.node_type("g1") is NodeType.GROUP
    members = g.edges("UG")
    assert [(e.a, e.b, e.weight) for e in members] == [("u1", "g1", None), ("u2", "g1", None)]


def test_extend_identity(small):
    g = extend_pgrec(small, {}, {})
    assert g.edges() == small.edges() and g.nodes == small.nodes


def test_extend_unknown(small):
    with pytest.raises(UnknownObject):
        extend_pgrec(small, categories={"o9": ["k1"]})
    with pytest.raises(UnknownUser):
        extend_pgrec(small, groups={"o1": ["g1"]})


def test_extend_keeps_weighted_edges_and_source(small):
    before = small.edges()
    g = extend_pgrec(small, {"u1": ["g1"]}, {"o1": ["k1"], "o2": ["k1"]}, [("u1", "u2"), ("o2", "o1")])
    weighted = [e for e in g.edges() if e.weight is not None]
    assert weighted == [e for e in before if e.weight is not None]
    assert small.edges() == before
    assert [(e.a, e.b) for e in g.edges("OO")] == [("o1", "o2")]
    with pytest.raises(TypeMismatch):
        extend_pgrec(small, intra_edges=[("u1", "o1")])


def test_het_graph_checks():
    with pytest.raises(TypeMismatch):
        HetGraph({"u1": "User", "g1": "Group"}, [("u1", "g1", "UO", 3)])
    with pytest.raises(UnknownNode):
        HetGraph({"u1": "User"}, [("u1", "o1", "UO", 3)])
    with pytest.raises(ValidationError):
        HetGraph({"p": "Preference", "o1": "Object"}, [("p", "o1", "PO", 2)])
    with pytest.raises(ValidationError):
        HetGraph({"u1": "User", "g1": "Group"}, [("u1", "g1", "UG", 1)])
    with pytest.raises(ValidationError):
        HetGraph({"u1": "User", "o1": "Object"}, [("u1", "o1", "UO")])
    g = HetGraph({"u1": "User", "o1": "Object"}, [("o1", "u1", "UO", 3)])
    assert g.edges()[0].a == "u1"


def test_pattern_validation():
    assert MetaPathPattern("uoku").letters == "UOKU"
    for bad in ("U", "UPU", "UXU", ""):
        with pytest.raises(InvalidPattern):
            MetaPathPattern(bad)


def test_uou_single_walk():
    g = bipartite([("u1", "o1", 5), ("u2", "o1", 3)])
    assert match_metapath(g, "UOU", "u1") == {"u2": 1}


def test_friends():
    g = HetGraph({"u1": "User", "u2": "User"}, [("u1", "u2", "UU")])
    assert match_metapath(g, "UU", "u1") == {"u2": 1}


def test_no_groups():
    g = bipartite([("u1", "o1", 5)])
    assert match_metapath(g, "UGU", "u1") == {}


def test_start_type_checked():
    g = bipartite([("u1", "o1", 5)])
    with pytest.raises(TypeMismatch):
        match_metapath(g, "OU", "u1")
    with pytest.raises(UnknownNode):
        match_metapath(g, "UOU", "u9")


def test_metapath_matches_enumeration():
    rng = random.Random(44)
    for _ in range(25):
        g = random_het(rng)
        letters = {v: t.letter for v, t in g.nodes.items()}
        pairs = [(e.a, e.b) for e in g.edges()]
        for pattern in ("UU", "UGU", "UOU", "UOKOU", "UOO", "KOU"):
            for start in [v for v, t in letters.items() if t == pattern[0]]:
                assert match_metapath(g, pattern, start) == brute_walks(letters, pairs, pattern, start)


def test_recommend_via_uou():
    g = bipartite([("u1", "o1", 5), ("u2", "o1", 4), ("u2", "o2", 3)])
    assert recommend_via_metapath(g, "u1", "UOU", 10) == [("o2", 1)]


def test_recommend_nothing_co_rated():
    g = bipartite([("u1", "o1", 5), ("u2", "o2", 4)])
    assert recommend_via_metapath(g, "u1", "UOU", 10) == []


def test_recommend_tie_order_and_top():
    g = bipartite([("u1", "o1", 5), ("u2", "o1", 4), ("u2", "o3", 3), ("u2", "o2", 3)])
    assert recommend_via_metapath(g, "u1", "UOU") == [("o2", 1), ("o3", 1)]
    assert recommend_via_metapath(g, "u1", "UOU", 1) == [("o2", 1)]


def test_recommend_needs_user_pattern():
    g = bipartite([("u1", "o1", 5)])
    with pytest.raises(InvalidPattern):
        recommend_via_metapath(g, "u1", "UO")
