"""Command-line interface.

Exit codes: 0 true/equivalent/pass, 1 false/distinct/fail, 2 unknown or
inconclusive, 64 usage error, 65 bad input data.  Output is plain key: value
text and move-script lines, byte-stable for fixed inputs, flags and seeds.
"""

from __future__ import annotations

import argparse
import sys

from .canonical import SizeCapError, canonical_certificate
from .counterexample import (
    ExampleParams,
    LadderHypothesisError,
    example_graph,
    replay_deformation,
    verify_slide_ladder,
)
from .explore import (
    Budget,
    adjacency_dot,
    decide_equivalence,
    dump_visited,
    explore_class,
)
from .graphs import (
    GraphError,
    dot_export,
    parse_graph,
    serialize_graph,
)
from .moves import (
    ExpansionBounds,
    IllegalMoveError,
    ScriptError,
    analyze,
    apply_move,
    enumerate_collapses,
    enumerate_slides,
    format_move,
    format_script,
    parse_script,
    reduce_graph,
)
from .random_graphs import GenerationError, RandomGraphSpec, random_graph

EX_TRUE = 0
EX_FALSE = 1
EX_UNKNOWN = 2
EX_USAGE = 64
EX_DATA = 65


class _UsageError(Exception):
    pass


class _DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); remap to 64
        raise _UsageError(message)


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _load_graph(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise _DataError(f"cannot read {path}: {exc}") from exc
    return parse_graph(text)


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise _DataError(f"cannot write {path}: {exc}") from exc


def _add_budget_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--depth", type=int, default=4, help="search depth bound")
    sub.add_argument("--max-nodes", type=int, default=100_000)
    sub.add_argument("--max-index", type=int, default=1_000_000,
                     help="drop generated graphs with a larger absolute index")
    sub.add_argument("--max-n", type=int, default=6,
                     help="largest expansion factor enumerated")
    sub.add_argument("--max-subset", type=int, default=3,
                     help="largest moved-end subset enumerated")


def _budget(args) -> Budget:
    return Budget(
        max_depth=args.depth,
        max_nodes=args.max_nodes,
        max_abs_index=args.max_index,
        expansion=ExpansionBounds(max_n=args.max_n, max_subset_size=args.max_subset),
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="gbsdeform",
                     description="Rewriting and search on edge-indexed graphs")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("check", help="structural predicates for one graph")
    sub.add_argument("graph")

    sub = subs.add_parser("moves", help="list legal collapses and slides")
    sub.add_argument("graph")

    sub = subs.add_parser("apply", help="run a move script against a graph")
    sub.add_argument("graph")
    sub.add_argument("--script", required=True, help="move script file")
    sub.add_argument("--emit-dot", help="write the result as DOT")

    sub = subs.add_parser("canon", help="print the canonical certificate")
    sub.add_argument("graph")

    sub = subs.add_parser("equiv", help="decide equivalence under a move class")
    sub.add_argument("graph")
    sub.add_argument("other")
    sub.add_argument("--moves", choices=("slide", "deform"), default="deform")
    _add_budget_flags(sub)
    sub.add_argument("--script", help="write the connecting path here")

    sub = subs.add_parser("explore", help="enumerate a move class around a graph")
    sub.add_argument("graph")
    sub.add_argument("--moves", choices=("slide", "deform"), default="slide")
    _add_budget_flags(sub)
    sub.add_argument("--dump-visited", help="write one line per member here")
    sub.add_argument("--emit-dot", help="write the class adjacency as DOT")

    sub = subs.add_parser("reduce", help="collapse until reduced")
    sub.add_argument("graph")
    sub.add_argument("--script", help="write the collapse script here")
    sub.add_argument("--emit-dot", help="write the result as DOT")

    sub = subs.add_parser("random", help="generate a seeded random graph")
    sub.add_argument("--vertices", type=int, required=True)
    sub.add_argument("--edges", type=int, required=True)
    sub.add_argument("--min-index", type=int, default=2)
    sub.add_argument("--max-index", type=int, default=9)
    sub.add_argument("--require", choices=("none", "reduced", "strongly_slide_free"),
                     default="none")
    sub.add_argument("--seed", type=int, default=0)

    sub = subs.add_parser("paper-example",
                          help="build the X/Y family, replay the deformation, "
                               "certify the slide ladder")
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--r", type=int, required=True)
    sub.add_argument("--s", type=int, required=True)
    sub.add_argument("--ladder-depth", type=int, default=6)
    sub.add_argument("--emit-x", help="write X in .gbs form here")
    sub.add_argument("--emit-y", help="write Y in .gbs form here")
    return parser


def _cmd_check(args) -> int:
    g = _load_graph(args.graph)
    report = analyze(g)
    print(f"reduced: {_bool(report.reduced)}")
    print(f"minimal: {_bool(report.minimal)}")
    print(f"strongly_slide_free: {_bool(report.strongly_slide_free)}")
    print(f"unfolded_sufficient: {_bool(report.unfolded_sufficient)}")
    print(f"geometry: {report.geometry}")
    print(f"jsj: {report.jsj}")
    if report.jsj_reason:
        print(f"jsj_reason: {report.jsj_reason}")
    return {"QUALIFIED": EX_TRUE, "NOT_QUALIFIED": EX_FALSE, "UNKNOWN": EX_UNKNOWN}[report.jsj]


def _cmd_moves(args) -> int:
    g = _load_graph(args.graph)
    collapses = enumerate_collapses(g)
    slides = enumerate_slides(g)
    print(f"collapses: {len(collapses)}")
    for move in collapses:
        print(format_move(move))
    print(f"slides: {len(slides)}")
    for move in slides:
        print(format_move(move))
    return EX_TRUE


def _cmd_apply(args) -> int:
    g = _load_graph(args.graph)
    try:
        with open(args.script, "r", encoding="utf-8") as handle:
            moves = parse_script(handle.read())
    except OSError as exc:
        raise _DataError(f"cannot read {args.script}: {exc}") from exc
    for move in moves:
        g = apply_move(g, move)
    sys.stdout.write(serialize_graph(g))
    if args.emit_dot:
        _write(args.emit_dot, dot_export(g))
    return EX_TRUE


def _cmd_canon(args) -> int:
    g = _load_graph(args.graph)
    print(canonical_certificate(g).hex())
    return EX_TRUE


def _cmd_equiv(args) -> int:
    g1 = _load_graph(args.graph)
    g2 = _load_graph(args.other)
    verdict = decide_equivalence(g1, g2, args.moves, _budget(args))
    print(f"verdict: {verdict.kind}")
    if verdict.reason:
        print(f"reason: {verdict.reason}")
    if verdict.path is not None:
        print(f"path_length: {len(verdict.path)}")
        for move in verdict.path:
            print(format_move(move))
        if args.script:
            _write(args.script, format_script(verdict.path))
    return verdict.exit_code


def _cmd_explore(args) -> int:
    g = _load_graph(args.graph)
    report = explore_class(g, args.moves, _budget(args))
    print(f"members: {len(report.members)}")
    print(f"closed: {_bool(report.closed)}")
    print(f"hit_index_cap: {_bool(report.hit_index_cap)}")
    print(f"hit_node_cap: {_bool(report.hit_node_cap)}")
    if args.dump_visited:
        _write(args.dump_visited, dump_visited(report))
    if args.emit_dot:
        _write(args.emit_dot, adjacency_dot(report))
    return EX_TRUE if report.closed else EX_UNKNOWN


def _cmd_reduce(args) -> int:
    g = _load_graph(args.graph)
    reduced, script = reduce_graph(g)
    sys.stdout.write(serialize_graph(reduced))
    if args.script:
        _write(args.script, format_script(script))
    if args.emit_dot:
        _write(args.emit_dot, dot_export(reduced))
    return EX_TRUE


def _cmd_random(args) -> int:
    spec = RandomGraphSpec(
        num_vertices=args.vertices,
        num_edges=args.edges,
        index_range=(args.min_index, args.max_index),
        require=args.require,
    )
    g = random_graph(spec, args.seed)
    sys.stdout.write(serialize_graph(g))
    return EX_TRUE


def _cmd_paper_example(args) -> int:
    p = ExampleParams(m=args.m, n=args.n, r=args.r, s=args.s)
    report = replay_deformation(p)
    print(f"moves: {len(report.moves)}")
    for move in report.moves:
        print(format_move(move))
    for i, indices in enumerate(report.index_tuples):
        print(f"indices {i}: " + " ".join(str(x) for x in indices))
    print(f"endpoint_matches: {_bool(report.endpoint_matches)}")
    ok = report.endpoint_matches
    if args.emit_x:
        _write(args.emit_x, serialize_graph(example_graph("X", p)))
    if args.emit_y:
        _write(args.emit_y, serialize_graph(example_graph("Y", p)))
    try:
        ladder = verify_slide_ladder(p, args.ladder_depth)
    except LadderHypothesisError as exc:
        print(f"ladder: skipped ({exc})")
    else:
        print(f"ladder_depth: {ladder.depth}")
        for k, level in enumerate(ladder.levels):
            print(f"level {k}: index {level.index} neighbors {level.move_count}")
        print(f"shape_ok: {_bool(ladder.shape_ok)}")
        print(f"y_absent: {_bool(ladder.y_absent)}")
        ok = ok and ladder.ok
    return EX_TRUE if ok else EX_FALSE


_COMMANDS = {
    "check": _cmd_check,
    "moves": _cmd_moves,
    "apply": _cmd_apply,
    "canon": _cmd_canon,
    "equiv": _cmd_equiv,
    "explore": _cmd_explore,
    "reduce": _cmd_reduce,
    "random": _cmd_random,
    "paper-example": _cmd_paper_example,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_USAGE
    try:
        return _COMMANDS[args.command](args)
    except _DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATA
    except (GraphError, IllegalMoveError, ScriptError, SizeCapError,
            GenerationError, LadderHypothesisError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATA


if __name__ == "__main__":
    sys.exit(main())
