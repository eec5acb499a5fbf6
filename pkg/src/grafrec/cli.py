"""Command line entry point: ``grafrec <command> ...``.

Exit status is 0 on success, 1 when the input violates a model constraint
and 2 for usage or file-format errors.  Reports go to stdout and are
byte-identical for identical inputs; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import contextlib
import sys
from pathlib import Path

from .ars import ArsQuery, ars_recommend
from .errors import (
    GrafrecError,
    InvalidPattern,
    ParseError,
    SingularSystem,
    TypeMismatch,
    UnknownNode,
    ValidationError,
)
from .graph import Kind, convert, memory_profile
from .hetnet import build_pgrec, match_metapath, recommend_via_metapath
from .io import (
    format_het,
    format_representation,
    parse_classes,
    parse_graph_file,
    parse_representation,
    read_text,
)
from .pagerank import DanglingPolicy, PageRankConfig, Variant, pagerank_run, rank_positions, solve_linear
from .session import validate_session_graph

SCORE_DIGITS = 10


class UsageError(GrafrecError):
    pass


def _scale(text):
    lo, sep, hi = text.partition(":")
    try:
        if not sep:
            raise ValueError
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"scale must look like MIN:MAX, got {text!r}") from None


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _cmd_validate(args, out):
    g = parse_graph_file(args.graph, "session", validate=False)
    partition = parse_classes(read_text(args.classes), args.classes) if args.classes else None
    violations = validate_session_graph(g, partition)
    for v in violations:
        out.write(f"{v}\n")
    if violations:
        return 1
    out.write(f"valid kernels={len(g.kernels)} objects={len(g.objects)} arcs={len(g.arcs)}\n")
    return 0


def _cmd_ars(args, out):
    g = parse_graph_file(args.graph, "session")
    ranked = ars_recommend(g, ArsQuery(args.object, args.class_id, args.top))
    for pos, (obj, score) in enumerate(ranked, start=1):
        out.write(f"{pos} {obj} {score}\n")
    return 0


def _fmt(x):
    return f"{x:g}" if isinstance(x, float) else str(x)


def _cmd_pagerank(args, out):
    g = parse_graph_file(args.edges, "link")
    policy = DanglingPolicy.UNIFORM if args.dangling == "uniform" else DanglingPolicy.ERROR
    cfg = PageRankConfig(
        variant=Variant(args.variant), d=args.d, epsilon=args.epsilon, max_iter=args.max_iter, dangling=policy
    )
    if args.method == "linear":
        if args.steps is not None:
            raise UsageError("--steps only applies to --method iterative")
        state = solve_linear(g, cfg)
    else:
        state = pagerank_run(g, cfg, steps=args.steps)
    out.write(
        f"# variant={cfg.variant.value} d={_fmt(cfg.d)} epsilon={_fmt(cfg.epsilon)} "
        f"method={args.method} dangling={args.dangling} iterations={state.iterations} "
        f"converged={str(state.converged).lower()}\n"
    )
    for pos, node, value in rank_positions(state):
        out.write(f"{pos} {node} {float(value):.{SCORE_DIGITS}f}\n")
    return 0


def _cmd_pgrec(args, out):
    rm = parse_graph_file(args.ratings, "ratings", scale=args.scale)
    g = build_pgrec(rm)
    Path(args.out).write_text(format_het(g), encoding="utf-8", newline="\n")
    counts = {t: len(g.edges(t)) for t in ("UO", "PO", "UP")}
    out.write(
        f"users={len(rm.users)} objects={len(rm.objects)} preferences={len(g.preferences())} "
        f"edges_uo={counts['UO']} edges_po={counts['PO']} edges_up={counts['UP']}\n"
    )
    return 0


def _cmd_metapath(args, out):
    g = parse_graph_file(args.graph, "het")
    if args.top is not None and not args.recommend:
        raise UsageError("--top requires --recommend")
    try:
        if args.recommend:
            ranked = recommend_via_metapath(g, args.start, args.pattern, args.top)
        else:
            ends = match_metapath(g, args.pattern, args.start)
    except TypeMismatch as exc:
        raise UsageError(str(exc)) from None
    if args.recommend:
        for pos, (obj, score) in enumerate(ranked, start=1):
            out.write(f"{pos} {obj} {score}\n")
    else:
        for node, count in ends.items():
            out.write(f"{node} {count}\n")
    return 0


def _cmd_convert(args, out):
    g = parse_representation(read_text(args.infile), args.source, str(args.infile))
    text = format_representation(convert(g, args.target))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        out.write(text)
    return 0


def _cmd_profile(args, out):
    if args.n < 0 or args.e < 0:
        raise UsageError("--n and --e must be non-negative")
    p = memory_profile(args.kind, args.n, args.e)
    out.write(f"kind={p.kind.value} n={p.n} e={p.e} cells={p.cells} class={p.asymptotic_class.value}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grafrec", description="Graph-based recommendation tools.")
    sub = parser.add_subparsers(dest="command", required=True)
    kinds = [k.value for k in Kind]

    p = sub.add_parser("validate", help="check session-graph constraints")
    p.add_argument("--graph", required=True)
    p.add_argument("--classes")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("ars", help="session-based Top-N recommendations for an object")
    p.add_argument("--graph", required=True)
    p.add_argument("--object", required=True)
    p.add_argument("--class", dest="class_id")
    p.add_argument("--top", type=_positive)
    p.set_defaults(func=_cmd_ars)

    p = sub.add_parser("pagerank", help="rank the nodes of a link graph")
    p.add_argument("--edges", required=True)
    p.add_argument("--variant", choices=[v.value for v in Variant], required=True)
    p.add_argument("--d", type=float)
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--max-iter", type=_positive, default=100)
    p.add_argument("--steps", type=_positive)
    p.add_argument("--method", choices=["iterative", "linear"], default="iterative")
    p.add_argument("--dangling", choices=["error", "uniform"], default="error")
    p.set_defaults(func=_cmd_pagerank)

    p = sub.add_parser("pgrec", help="preference-graph tools")
    pg = p.add_subparsers(dest="action", required=True)
    b = pg.add_parser("build", help="build a preference graph from ratings")
    b.add_argument("--ratings", required=True)
    b.add_argument("--scale", type=_scale, required=True)
    b.add_argument("--out", required=True)
    b.set_defaults(func=_cmd_pgrec)

    p = sub.add_parser("metapath", help="meta-path walk counts and recommendations")
    p.add_argument("--graph", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--start", required=True)
    p.add_argument("--recommend", action="store_true")
    p.add_argument("--top", type=_positive)
    p.set_defaults(func=_cmd_metapath)

    p = sub.add_parser("convert", help="rewrite a graph in another layout")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--from", dest="source", choices=kinds, required=True)
    p.add_argument("--to", dest="target", choices=kinds, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("profile", help="memory profile of a layout")
    p.add_argument("--kind", choices=kinds, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.set_defaults(func=_cmd_profile)
    return parser


def run_cli(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except OSError as exc:
        err.write(f"grafrec: error: {exc}\n")
        return 2
    except (InvalidPattern, UsageError, ParseError, UnknownNode) as exc:
        err.write(f"grafrec: error: {exc}\n")
        return 2
    except (ValidationError, SingularSystem) as exc:
        err.write(f"grafrec: invalid input: {exc}\n")
        return 1
    except ValueError as exc:
        err.write(f"grafrec: error: {exc}\n")
        return 2


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
