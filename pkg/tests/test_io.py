import random

import pytest

from grafrec import HetGraph, Kind, PGRecGraph, SessionGraph, build_from_edges, build_pgrec, convert
from grafrec.errors import OutOfScale, ParseError, ValidationError
from grafrec.io import (
    SessionValidationError,
    format_het,
    format_representation,
    format_session,
    parse_classes,
    parse_graph_file,
    parse_het,
    parse_link_graph,
    parse_ratings,
    parse_representation,
    parse_session,
)
from generators import random_digraph, random_session_graph


def test_minimal_session_file(fixtures):
    g = parse_graph_file(fixtures / "minimal_session.tsv", "session")
    assert isinstance(g, SessionGraph)
    assert (g.kernels, g.objects, g.arcs) == ({"j1"}, {"o1"}, {("j1", "o1")})


def test_undeclared_node_reports_line(fixtures):
    with pytest.raises(ParseError) as info:
        parse_graph_file(fixtures / "undeclared.tsv", "session")
    assert info.value.line == 6


def test_orphan_object_file(fixtures):
    with pytest.raises(SessionValidationError) as info:
        parse_graph_file(fixtures / "orphan_object.tsv", "session")
    assert [v.rule for v in info.value.violations] == ["OrphanObject"]


def test_session_classes_from_node_column(fixtures):
    g = parse_graph_file(fixtures / "demo.tsv", "session")
    assert g.classes.kernels_of("K1") == {"j1", "j2"}
    assert [c.class_type.value for c in g.classes] == ["behavioral", "static"]


def test_classes_file(fixtures):
    p = parse_classes((fixtures / "overlapping_classes.tsv").read_text())
    assert [c.class_id for c in p] == ["K1", "K2"]
    with pytest.raises(ParseError):
        parse_classes("K1 behavioral j1\nK1 static j2\n")
    with pytest.raises(ParseError):
        parse_classes("K1 weird j1\n")


@pytest.mark.parametrize(
    "text, line",
    [
        ("j1 kernel\n", 1),
        ("[nodes]\nj1 gadget\n", 2),
        ("[nodes]\nj1 kernel\no1 object\n[edges]\nj1\n", 5),
        ("[nodes]\nj1 kernel\no1 object\n[edges]\nj1 o1\nj1 o1\n", 6),
        ("[nodes]\no1 object K1\n", 2),
    ],
)
def test_session_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_session(text)
    assert info.value.line == line


def test_session_round_trip_is_idempotent():
    rng = random.Random(51)
    for _ in range(10):
        g = random_session_graph(rng)
        text = format_session(g)
        again = parse_session(text)
        assert again == g
        assert format_session(again) == text


def test_link_graph_without_headers(fixtures):
    g = parse_graph_file(fixtures / "dangling.tsv", "link")
    assert g.arcs() == [(0, 1), (1, 2), (2, 0), (2, 3)]


@pytest.mark.parametrize(
    "text, exc",
    [
        ("1 2\n1 2\n", ValidationError),
        ("1 1\n", ValidationError),
        ("a 2\n", ParseError),
        ("-1 2\n", ParseError),
        ("1 2 x\n", ParseError),
        ("[nodes]\n1\n[edges]\n1 2\n", ParseError),
    ],
)
def test_link_graph_errors(text, exc):
    with pytest.raises(exc):
        parse_link_graph(text)


def test_all_layout_texts_round_trip():
    rng = random.Random(52)
    for _ in range(15):
        g = build_from_edges(
            [(s, d, rng.choice([None, 2, 0.5])) for s, d in random_digraph(rng, max_n=10).arcs()]
        )
        canonical = format_representation(g)
        for kind in Kind:
            text = format_representation(convert(g, kind))
            back = parse_representation(text, kind)
            assert back.kind is kind
            assert format_representation(convert(back, Kind.EDGE_LIST)) == canonical


def test_edge_list_text_idempotent():
    text = "# hi\n3 1\n1 2 0.5\n"
    g = parse_link_graph(text)
    once = format_representation(g)
    assert format_representation(parse_link_graph(once)) == once


@pytest.mark.parametrize(
    "kind, body",
    [
        ("adjacency-matrix", "[nodes]\n1\n2\n[adjacency-matrix]\n1: 0 2\n2: 0 0\n"),
        ("adjacency-matrix", "[nodes]\n1\n2\n[adjacency-matrix]\n1: 0 1\n"),
        ("incidence-matrix", "[nodes]\n1\n2\n[incidence-matrix]\n1: 1\n2: 1\n"),
        ("incidence-list", "[nodes]\n1\n2\n[incidence-list]\n1: 0>2\n2:\n"),
        ("adjacency-list", "[nodes]\n1\n2\n[adjacency-list]\n1 2\n2:\n"),
    ],
)
def test_layout_parse_errors(kind, body):
    with pytest.raises(ParseError):
        parse_representation(body, kind)


def test_het_round_trip(fixtures):
    g = parse_graph_file(fixtures / "het.tsv", "het")
    assert isinstance(g, HetGraph) and not isinstance(g, PGRecGraph)
    text = format_het(g)
    assert format_het(parse_het(text)) == text


def test_pgrec_file_keeps_scale(fixtures):
    rm = parse_graph_file(fixtures / "ratings.csv", "ratings", scale=(1, 5))
    g = parse_het(format_het(build_pgrec(rm)))
    assert isinstance(g, PGRecGraph) and g.scale == (1, 5)


@pytest.mark.parametrize(
    "text",
    [
        "[nodes]\nu1 Alien\n",
        "[nodes]\nu1 User\nu1 User\n",
        "[nodes]\nu1 User\n[edges]\nu1 o1 UO 3\n",
        "[nodes]\nu1 User\no1 Object\n[edges]\nu1 o1 XX 3\n",
        "[nodes]\nu1 User\ng1 Group\n[edges]\nu1 g1 UO 3\n",
    ],
)
def test_het_parse_errors(text):
    with pytest.raises(ParseError):
        parse_het(text)


def test_ratings_csv(fixtures):
    rm = parse_graph_file(fixtures / "ratings.csv", "ratings", scale=(1, 5))
    assert len(rm) == 9 and rm.rating("u3", "o4") == 4
    with pytest.raises(OutOfScale):
        parse_ratings("u1,o1,7\n", (1, 5))
    with pytest.raises(ValidationError):
        parse_ratings("u1,o1,3\nu1,o1,4\n")
    with pytest.raises(ParseError):
        parse_ratings("u1,o1\n")
    assert len(parse_ratings("# c\nu1,o1,1\n\n", (0, 1))) == 1
