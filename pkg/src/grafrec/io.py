"""Text file formats.

Graph files are UTF-8, LF-terminated and whitespace separated, with
``#`` comment lines and ``[section]`` headers::

    # session graph
    [nodes]
    j1  kernel  K1:behavioral
    o1  object
    [edges]
    j1  o1

Link graphs (PageRank input) use integer ids and may omit the headers, in
which case every line is an arc ``src dst [weight]``.  Ratings are CSV
``user,object,rating`` with an optional header row.  Each of the five
graph layouts also has a text form so that ``convert`` can show it; see
:func:`format_representation`.
"""
from __future__ import annotations

import csv
import io as _io
import re
from pathlib import Path
from typing import Optional

from .errors import GrafrecError, ParseError, ValidationError
from .graph import GraphRepresentation, Kind, build_from_edges, convert
from .hetnet import EdgeType, HetGraph, NodeType, PGRecGraph, RatingMatrix
from .ids import id_key, sorted_ids
from .session import ClassType, KernelClass, KernelClassPartition, SessionGraph, validate_session_graph

__all__ = [
    "SessionValidationError",
    "read_text",
    "parse_sections",
    "parse_session",
    "parse_classes",
    "parse_link_graph",
    "parse_het",
    "parse_ratings",
    "parse_representation",
    "parse_graph_file",
    "format_session",
    "format_representation",
    "format_het",
    "format_number",
]

_SECTION = re.compile(r"^\[([A-Za-z-]+)\]$")


class SessionValidationError(ValidationError):
    def __init__(self, violations):
        super().__init__("; ".join(str(v) for v in violations))
        self.violations = list(violations)


def read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8: {exc}", path=str(path)) from None


def parse_sections(text: str, default: Optional[str] = None, path=None) -> dict:
    """Split ``text`` into ``{section: [(line_no, fields), ...]}``.

    Lines before the first header go to ``default``; with no default they
    are an error.
    """
    sections = {}
    current = default
    for number, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r").strip()
        if not line or line.startswith("#"):
            continue
        m = _SECTION.match(line)
        if m:
            current = m.group(1).lower()
            if current in sections:
                raise ParseError(f"section [{current}] repeated", number, path)
            sections[current] = []
            continue
        if current is None:
            raise ParseError("content before the first [section] header", number, path)
        sections.setdefault(current, []).append((number, line.split()))
    return sections


def _number(token, line, path):
    try:
        return int(token)
    except ValueError:
        pass
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"not a number: {token!r}", line, path) from None


def _node_id(token, line, path):
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"node id must be a non-negative integer, got {token!r}", line, path) from None
    if value < 0:
        raise ParseError(f"node id must be a non-negative integer, got {token!r}", line, path)
    return value


def format_number(x) -> str:
    if isinstance(x, float) and x.is_integer():
        return str(int(x))
    return str(x)


# -- session graphs -----------------------------------------------------------


def parse_session(text: str, path=None, validate: bool = True) -> SessionGraph:
    sections = parse_sections(text, path=path)
    kernels, objects = set(), set()
    members, types = {}, {}
    for line, fields in sections.get("nodes", []):
        if len(fields) not in (2, 3):
            raise ParseError("node line needs: id kernel|object [class[:type]]", line, path)
        node, role = fields[0], fields[1].lower()
        if role == "kernel":
            kernels.add(node)
        elif role == "object":
            objects.add(node)
        else:
            raise ParseError(f"unknown node role {fields[1]!r}", line, path)
        if len(fields) == 3:
            if role != "kernel":
                raise ParseError("only kernels carry a class", line, path)
            cid, _, ctype = fields[2].partition(":")
            try:
                ctype = ClassType(ctype.lower()) if ctype else None
            except ValueError:
                raise ParseError(f"unknown class type {ctype!r}", line, path) from None
            if ctype is not None:
                if types.get(cid, ctype) is not ctype:
                    raise ParseError(f"class {cid} declared with two types", line, path)
                types[cid] = ctype
            members.setdefault(cid, set()).add(node)
    declared = kernels | objects
    arcs = set()
    for line, fields in sections.get("edges", []):
        if len(fields) != 2:
            raise ParseError("edge line needs: kernel object", line, path)
        for v in fields:
            if v not in declared:
                raise ParseError(f"edge references undeclared node {v!r}", line, path)
        arc = (fields[0], fields[1])
        if arc in arcs:
            raise ParseError(f"duplicate edge {arc[0]} {arc[1]}", line, path)
        arcs.add(arc)
    unknown = set(sections) - {"nodes", "edges"}
    if unknown:
        raise ParseError(f"unexpected sections {sorted(unknown)}", 0, path)
    classes = None
    if members:
        classes = KernelClassPartition(
            KernelClass(cid, members[cid], types.get(cid, ClassType.BEHAVIORAL)) for cid in sorted_ids(members)
        )
    g = SessionGraph(kernels, objects, arcs, classes)
    if validate:
        violations = validate_session_graph(g)
        if violations:
            raise SessionValidationError(violations)
    return g


def parse_classes(text: str, path=None) -> KernelClassPartition:
    """One class per line: ``class_id type kernel [kernel ...]``."""
    sections = parse_sections(text, default="classes", path=path)
    seen = set()
    classes = []
    for line, fields in sections.get("classes", []):
        if len(fields) < 3:
            raise ParseError("class line needs: class_id type kernel [kernel ...]", line, path)
        cid = fields[0]
        if cid in seen:
            raise ParseError(f"class {cid} repeated", line, path)
        seen.add(cid)
        try:
            ctype = ClassType(fields[1].lower())
        except ValueError:
            raise ParseError(f"unknown class type {fields[1]!r}", line, path) from None
        classes.append(KernelClass(cid, fields[2:], ctype))
    return KernelClassPartition(classes)


def format_session(g: SessionGraph) -> str:
    owner = {}
    if g.classes is not None:
        for cls in g.classes:
            for j in cls.kernels:
                owner[j] = f"{cls.class_id}:{cls.class_type.value}"
    lines = ["[nodes]"]
    for j in sorted_ids(g.kernels):
        lines.append(f"{j}\tkernel\t{owner[j]}" if j in owner else f"{j}\tkernel")
    for o in sorted_ids(g.objects):
        lines.append(f"{o}\tobject")
    lines.append("[edges]")
    for s, d in sorted(g.arcs, key=lambda a: (id_key(a[0]), id_key(a[1]))):
        lines.append(f"{s}\t{d}")
    return "\n".join(lines) + "\n"


# -- link graphs and the five layouts ----------------------------------------


def _parse_weights(sections, path):
    weights = {}
    for line, fields in sections.get("weights", []):
        if len(fields) != 3:
            raise ParseError("weight line needs: src dst weight", line, path)
        key = (_node_id(fields[0], line, path), _node_id(fields[1], line, path))
        weights[key] = _number(fields[2], line, path)
    return weights


def _parse_nodes(sections, path):
    nodes = []
    for line, fields in sections.get("nodes", []):
        if len(fields) != 1:
            raise ParseError("node line needs exactly one id", line, path)
        nodes.append(_node_id(fields[0], line, path))
    return nodes


def _build(nodes, edges, path):
    """``edges`` holds ``(line, src, dst, weight)``; errors keep their line number."""
    seen = set()
    node_set = set(nodes)
    for line, s, d, _ in edges:
        if s == d:
            raise ValidationError(f"{path or '<input>'}:{line}: self-loop on node {s}")
        if (s, d) in seen:
            raise ValidationError(f"{path or '<input>'}:{line}: duplicate arc {s} -> {d}")
        seen.add((s, d))
        if nodes and (s not in node_set or d not in node_set):
            raise ParseError(f"arc {s} -> {d} references an undeclared node", line, path)
    return build_from_edges([(s, d, w) for _, s, d, w in edges], nodes)


def parse_link_graph(text: str, path=None) -> GraphRepresentation:
    sections = parse_sections(text, default="edges", path=path)
    nodes = _parse_nodes(sections, path)
    edges = []
    for line, fields in sections.get("edges", []):
        if len(fields) not in (2, 3):
            raise ParseError("edge line needs: src dst [weight]", line, path)
        w = _number(fields[2], line, path) if len(fields) == 3 else None
        edges.append((line, _node_id(fields[0], line, path), _node_id(fields[1], line, path), w))
    return _build(nodes, edges, path)


def _row_label(fields, line, path):
    if not fields or not fields[0].endswith(":"):
        raise ParseError("row must start with 'id:'", line, path)
    return _node_id(fields[0][:-1], line, path), fields[1:]


def parse_representation(text: str, kind, path=None) -> GraphRepresentation:
    """Read a graph written by :func:`format_representation` for ``kind``."""
    kind = Kind(kind)
    if kind is Kind.EDGE_LIST:
        return parse_link_graph(text, path)
    sections = parse_sections(text, path=path)
    nodes = _parse_nodes(sections, path)
    weights = _parse_weights(sections, path)
    body = sections.get(kind.value, [])
    pairs = []
    rows = {}
    for line, fields in body:
        v, rest = _row_label(fields, line, path)
        if v in rows:
            raise ParseError(f"row for node {v} repeated", line, path)
        rows[v] = (line, rest)
    if set(rows) != set(nodes):
        raise ParseError(f"[{kind.value}] rows must cover exactly the declared nodes", 0, path)

    if kind is Kind.ADJACENCY_MATRIX:
        for v in nodes:
            line, cells = rows[v]
            if len(cells) != len(nodes) or any(c not in ("0", "1") for c in cells):
                raise ParseError(f"adjacency row needs {len(nodes)} entries of 0/1", line, path)
            pairs += [(line, v, w) for w, c in zip(nodes, cells) if c == "1"]
    elif kind is Kind.INCIDENCE_MATRIX:
        width = {len(rows[v][1]) for v in nodes}
        if len(width) > 1:
            raise ParseError("incidence rows differ in length", 0, path)
        ncols = width.pop() if width else 0
        for k in range(ncols):
            col = [(v, rows[v][1][k]) for v in nodes]
            srcs = [v for v, c in col if c == "-1"]
            dsts = [v for v, c in col if c == "1"]
            if len(srcs) != 1 or len(dsts) != 1 or any(c not in ("-1", "0", "1") for _, c in col):
                raise ParseError(f"incidence column {k} needs one -1 and one 1", 0, path)
            pairs.append((rows[srcs[0]][0], srcs[0], dsts[0]))
    elif kind is Kind.ADJACENCY_LIST:
        for v in nodes:
            line, succ = rows[v]
            pairs += [(line, v, _node_id(w, line, path)) for w in succ]
    else:
        outs, ins = {}, {}
        for v in nodes:
            line, refs = rows[v]
            for ref in refs:
                m = re.fullmatch(r"(\d+)([<>])(\d+)", ref)
                if not m:
                    raise ParseError(f"bad incidence reference {ref!r}", line, path)
                k, other = int(m.group(1)), int(m.group(3))
                target = outs if m.group(2) == ">" else ins
                if k in target:
                    raise ParseError(f"arc {k} referenced twice", line, path)
                target[k] = (line, v, other)
        for k in sorted(outs):
            line, s, d = outs[k]
            if k not in ins or ins[k][1:] != (d, s):
                raise ParseError(f"arc {k} lacks a matching incoming reference", line, path)
            pairs.append((line, s, d))
        if set(ins) - set(outs):
            raise ParseError("incoming reference without outgoing one", 0, path)
    extra = set(sections) - {"nodes", "weights", kind.value}
    if extra:
        raise ParseError(f"unexpected sections {sorted(extra)}", 0, path)
    g = _build(nodes, [(line, s, d, weights.get((s, d))) for line, s, d in pairs], path)
    stray = set(weights) - g.arc_set()
    if stray:
        raise ParseError(f"weights given for missing arcs {sorted(stray)}", 0, path)
    return convert(g, kind)


def format_representation(g: GraphRepresentation) -> str:
    """Canonical text for ``g`` in its own layout; nodes and arcs sorted."""
    lines = [f"# grafrec {g.kind.value}", "[nodes]"]
    lines += [str(v) for v in g.nodes]
    weighted = [(s, d, g.weight(s, d)) for s, d in g.arcs() if g.weight(s, d) is not None]
    if g.kind is Kind.EDGE_LIST:
        lines.append("[edges]")
        for s, d in g.arcs():
            w = g.weight(s, d)
            lines.append(f"{s}\t{d}" if w is None else f"{s}\t{d}\t{format_number(w)}")
        return "\n".join(lines) + "\n"
    lines.append(f"[{g.kind.value}]")
    if g.kind in (Kind.ADJACENCY_MATRIX, Kind.INCIDENCE_MATRIX):
        for v, row in zip(g.nodes, g.matrix.tolist()):
            lines.append(" ".join([f"{v}:"] + [str(c) for c in row]))
    elif g.kind is Kind.ADJACENCY_LIST:
        for v in g.nodes:
            lines.append(" ".join([f"{v}:"] + [str(w) for w in g.succ[v]]))
    else:
        for v in g.nodes:
            refs = [f"{k}{'>' if direction < 0 else '<'}{o}" for k, direction, o in g.incident[v]]
            lines.append(" ".join([f"{v}:"] + refs))
    if weighted:
        lines.append("[weights]")
        lines += [f"{s}\t{d}\t{format_number(w)}" for s, d, w in weighted]
    return "\n".join(lines) + "\n"


# -- heterogeneous graphs and ratings ----------------------------------------


def parse_het(text: str, path=None) -> HetGraph:
    sections = parse_sections(text, path=path)
    nodes = {}
    for line, fields in sections.get("nodes", []):
        if len(fields) != 2:
            raise ParseError("node line needs: id type", line, path)
        try:
            t = NodeType(fields[1].capitalize())
        except ValueError:
            raise ParseError(f"unknown node type {fields[1]!r}", line, path) from None
        if fields[0] in nodes:
            raise ParseError(f"node {fields[0]!r} declared twice", line, path)
        nodes[fields[0]] = t
    scale = None
    for line, fields in sections.get("meta", []):
        if len(fields) == 3 and fields[0] == "scale":
            scale = (_number(fields[1], line, path), _number(fields[2], line, path))
        else:
            raise ParseError("meta line must be: scale MIN MAX", line, path)
    g = PGRecGraph(nodes, scale=scale) if scale else HetGraph(nodes)
    for line, fields in sections.get("edges", []):
        if len(fields) not in (3, 4):
            raise ParseError("edge line needs: a b type [weight]", line, path)
        for v in fields[:2]:
            if v not in nodes:
                raise ParseError(f"edge references undeclared node {v!r}", line, path)
        try:
            etype = EdgeType(fields[2].upper())
        except ValueError:
            raise ParseError(f"unknown edge type {fields[2]!r}", line, path) from None
        w = _number(fields[3], line, path) if len(fields) == 4 else None
        try:
            g._add_edge(fields[0], fields[1], etype, w)
        except GrafrecError as exc:
            raise ParseError(str(exc), line, path) from None
    extra = set(sections) - {"nodes", "edges", "meta"}
    if extra:
        raise ParseError(f"unexpected sections {sorted(extra)}", 0, path)
    return g


def format_het(g: HetGraph) -> str:
    lines = ["# grafrec het"]
    if isinstance(g, PGRecGraph):
        lines += ["[meta]", f"scale\t{format_number(g.scale[0])}\t{format_number(g.scale[1])}"]
    lines.append("[nodes]")
    order = list(NodeType)
    for v, t in sorted(g.nodes.items(), key=lambda kv: (order.index(kv[1]), id_key(kv[0]))):
        lines.append(f"{v}\t{t.value}")
    lines.append("[edges]")
    for e in g.edges():
        tail = "" if e.weight is None else f"\t{format_number(e.weight)}"
        lines.append(f"{e.a}\t{e.b}\t{e.edge_type.value}{tail}")
    return "\n".join(lines) + "\n"


def parse_ratings(text: str, scale=(1, 5), path=None) -> RatingMatrix:
    rows = csv.reader(_io.StringIO(text))
    triples = []
    seen = set()
    for number, row in enumerate(rows, start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        if len(row) != 3:
            raise ParseError("rating row needs: user,object,rating", number, path)
        user, obj, value = (c.strip() for c in row)
        if not triples and not seen and (user, obj, value.lower()) == ("user", "object", "rating"):
            continue
        if (user, obj) in seen:
            raise ValidationError(f"{path or '<input>'}:{number}: more than one rating for ({user}, {obj})")
        seen.add((user, obj))
        triples.append((user, obj, _number(value, number, path)))
    return RatingMatrix.from_triples(triples, scale)


def parse_graph_file(path, expected: str, **options):
    """Load ``path`` as ``session``, ``link``, ``het`` or ``ratings``.

    ``options`` are forwarded (``validate`` for sessions, ``scale`` for
    ratings).  Raises :class:`OSError`, :class:`ParseError` or
    :class:`ValidationError`.
    """
    text = read_text(path)
    if expected == "session":
        return parse_session(text, str(path), **options)
    if expected == "link":
        return parse_link_graph(text, str(path))
    if expected == "het":
        return parse_het(text, str(path))
    if expected == "ratings":
        return parse_ratings(text, path=str(path), **options)
    raise ValueError(f"unknown file kind {expected!r}")
