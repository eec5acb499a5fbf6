import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grafrec import (
    AsymptoticClass,
    BadId,
    DuplicateArc,
    Kind,
    SelfLoop,
    UnknownNode,
    adjacency_query,
    build_from_edges,
    convert,
    memory_profile,
)
from generators import random_digraph


@st.composite
def digraphs(draw, max_n=12):
    ids = draw(st.lists(st.integers(0, 200), max_size=max_n, unique=True))
    pairs = [(a, b) for a in ids for b in ids if a != b]
    arcs = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_from_edges(arcs, nodes=ids)


def test_empty_graph():
    g = build_from_edges([])
    assert (g.n, g.e) == (0, 0)
    assert g.kind is Kind.EDGE_LIST


def test_two_cycle_counts():
    g = build_from_edges([(1, 2), (2, 1)])
    assert (g.n, g.e) == (2, 2)


def test_duplicate_arc_rejected():
    with pytest.raises(DuplicateArc):
        build_from_edges([(1, 2), (1, 2)])


@pytest.mark.parametrize("edge", [(-1, 2), (1, -3), ("a", 1), (True, 2), (1.5, 2)])
def test_bad_ids(edge):
    with pytest.raises(BadId):
        build_from_edges([edge])


def test_self_loop_rejected():
    with pytest.raises(SelfLoop):
        build_from_edges([(3, 3)])


def test_isolated_nodes_and_weights_kept():
    g = build_from_edges([(1, 2, 0.5)], nodes=[7])
    assert g.nodes == (1, 2, 7)
    assert g.weight(1, 2) == 0.5
    assert g.weight(2, 1) is None
    for kind in Kind:
        assert convert(g, kind).weight(1, 2) == 0.5


def test_adjacency_matrix_definition():
    g = convert(build_from_edges([(1, 2)]), Kind.ADJACENCY_MATRIX)
    assert g.matrix.tolist() == [[0, 1], [0, 0]]


def test_incidence_matrix_signs():
    g = convert(build_from_edges([(1, 2), (1, 3)]), Kind.INCIDENCE_MATRIX)
    assert g.matrix.tolist() == [[-1, -1], [1, 0], [0, 1]]
    assert (g.matrix == -1).sum(axis=0).tolist() == [1, 1]
    assert (g.matrix == 1).sum(axis=0).tolist() == [1, 1]


def test_adjacency_list_to_edges():
    g = convert(build_from_edges([(1, 2), (1, 3)]), Kind.ADJACENCY_LIST)
    assert g.succ == {1: (2, 3), 2: (), 3: ()}
    assert convert(g, Kind.EDGE_LIST).arcs() == [(1, 2), (1, 3)]


def test_sparse_ids_map_to_matrix_rows():
    g = convert(build_from_edges([(100, 5)]), Kind.ADJACENCY_MATRIX)
    assert g.nodes == (5, 100)
    assert g.matrix.tolist() == [[0, 0], [1, 0]]


def test_adjacency_query_example():
    g = build_from_edges([(1, 2), (3, 2)])
    a = adjacency_query(g, 2)
    assert (a.in_degree, a.out_degree) == (2, 0)
    assert a.in_neighbors == (1, 3)
    assert a.out_neighbors == ()


def test_isolated_node_query():
    g = build_from_edges([(1, 2)], nodes=[9])
    for kind in Kind:
        a = adjacency_query(convert(g, kind), 9)
        assert (a.in_degree, a.out_degree, a.in_neighbors, a.out_neighbors) == (0, 0, (), ())


def test_unknown_node_query():
    g = build_from_edges([(1, 2)])
    for kind in Kind:
        with pytest.raises(UnknownNode):
            adjacency_query(convert(g, kind), 3)


def test_handshake_identity_on_random_graphs():
    rng = random.Random(11)
    for _ in range(30):
        g = random_digraph(rng, max_n=30)
        for kind in Kind:
            h = convert(g, kind)
            ins = sum(adjacency_query(h, v).in_degree for v in h.nodes)
            outs = sum(adjacency_query(h, v).out_degree for v in h.nodes)
            assert ins == outs == g.e


@settings(max_examples=60, deadline=None)
@given(digraphs())
def test_conversion_pairs_preserve_arcs(g):
    arcs = g.arc_set()
    for k1, k2 in product(Kind, Kind):
        h = convert(convert(g, k1), k2)
        assert h.kind is k2
        assert h.arc_set() == arcs
        assert h.nodes == g.nodes


@settings(max_examples=40, deadline=None)
@given(digraphs())
def test_queries_are_layout_invariant(g):
    layouts = [convert(g, k) for k in Kind]
    for v in g.nodes:
        answers = {adjacency_query(h, v) for h in layouts}
        assert len(answers) == 1


@settings(max_examples=40, deadline=None)
@given(digraphs())
def test_stored_cells_match_profile(g):
    for kind in Kind:
        assert convert(g, kind).cells == memory_profile(kind, g.n, g.e).cells


@pytest.mark.parametrize(
    "kind, n, e, cells, cls",
    [
        (Kind.ADJACENCY_MATRIX, 5, 7, 25, AsymptoticClass.N2),
        (Kind.EDGE_LIST, 5, 0, 0, AsymptoticClass.E),
        (Kind.INCIDENCE_MATRIX, 4, 3, 12, AsymptoticClass.NE),
        (Kind.ADJACENCY_LIST, 4, 3, 10, AsymptoticClass.N_PLUS_E),
        (Kind.INCIDENCE_LIST, 4, 3, 10, AsymptoticClass.N_PLUS_E),
    ],
)
def test_memory_profile(kind, n, e, cells, cls):
    p = memory_profile(kind, n, e)
    assert (p.cells, p.asymptotic_class) == (cells, cls)


def test_memory_profile_accepts_strings():
    assert memory_profile("edge-list", 3, 4).cells == 8


def test_layouts_are_read_only():
    g = convert(build_from_edges([(1, 2)]), Kind.ADJACENCY_MATRIX)
    with pytest.raises(ValueError):
        g.matrix[0, 0] = 1
    assert isinstance(g.matrix, np.ndarray)
