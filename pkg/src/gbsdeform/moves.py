"""Moves on edge-indexed graphs: collapse, expansion and slide.

A collapse removes a non-loop edge whose index at the absorbed end is +1 or
-1; the surviving vertex picks up the absorbed vertex's other ends with
indices scaled by the survivor-side index.  An expansion is the reverse.  A
slide carries an edge-end across an adjacent carrier edge when the carrier's
near index divides the moving index.  All three preserve the first Betti
number, connectivity and nonzero indices.

Also here: the legality predicates derived from these moves (reduced,
minimal, strongly slide-free, the sufficient unfoldedness test, point/line
geometry) and the one-move-per-line script format.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .graphs import Edge, EdgeIndexedGraph, End

__all__ = [
    "IllegalMoveError",
    "ScriptError",
    "Collapse",
    "Expansion",
    "Slide",
    "Move",
    "ExpansionBounds",
    "PredicateReport",
    "apply_move",
    "invert_move",
    "enumerate_collapses",
    "enumerate_slides",
    "enumerate_expansions",
    "analyze",
    "reduce_graph",
    "format_move",
    "parse_move",
    "format_script",
    "parse_script",
    "fresh_vertex_id",
    "fresh_edge_id",
]


class IllegalMoveError(ValueError):
    """A move precondition failed; the message names the offending ids."""


class ScriptError(ValueError):
    """A move script line did not parse."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Collapse:
    edge: str
    survivor: str


@dataclass(frozen=True)
class Expansion:
    vertex: str
    n: int
    moved_ends: tuple[End, ...]
    new_vertex: str
    new_edge: str

    def __post_init__(self) -> None:
        ends = tuple(sorted(set(End(*e) for e in self.moved_ends)))
        object.__setattr__(self, "moved_ends", ends)


@dataclass(frozen=True)
class Slide:
    moving_end: End
    along: End


Move = Collapse | Expansion | Slide


@dataclass(frozen=True)
class ExpansionBounds:
    """Enumeration bounds: factors 2..max_n, moved subsets up to the size cap."""

    max_n: int = 6
    max_subset_size: int = 3


def divides(d: int, x: int) -> bool:
    return x % d == 0


def fresh_vertex_id(g: EdgeIndexedGraph, base: str = "w") -> str:
    if base not in g.vertices:
        return base
    k = 2
    while f"{base}{k}" in g.vertices:
        k += 1
    return f"{base}{k}"


def fresh_edge_id(g: EdgeIndexedGraph, base: str = "x") -> str:
    used = {e.eid for e in g.edges}
    if base not in used:
        return base
    k = 2
    while f"{base}{k}" in used:
        k += 1
    return f"{base}{k}"


def _require_end(g: EdgeIndexedGraph, end: End) -> End:
    end = End(*end)
    if end.side not in (0, 1):
        raise IllegalMoveError(f"end {end.edge}:{end.side} has a bad side")
    if not any(e.eid == end.edge for e in g.edges):
        raise IllegalMoveError(f"no edge {end.edge!r} in graph")
    return end


def apply_move(g: EdgeIndexedGraph, m: Move) -> EdgeIndexedGraph:
    """Apply one move, checking every precondition; returns a new graph."""
    if isinstance(m, Collapse):
        return _apply_collapse(g, m)
    if isinstance(m, Expansion):
        return _apply_expansion(g, m)
    if isinstance(m, Slide):
        return _apply_slide(g, m)
    raise IllegalMoveError(f"unknown move {m!r}")


def _apply_collapse(g: EdgeIndexedGraph, m: Collapse) -> EdgeIndexedGraph:
    try:
        e = g.edge(m.edge)
    except ValueError:
        raise IllegalMoveError(f"no edge {m.edge!r} in graph") from None
    if e.is_loop:
        raise IllegalMoveError(f"cannot collapse loop {m.edge!r}")
    if m.survivor == e.v0:
        dead, n_surv, eps = e.v1, e.i0, e.i1
    elif m.survivor == e.v1:
        dead, n_surv, eps = e.v0, e.i1, e.i0
    else:
        raise IllegalMoveError(
            f"survivor {m.survivor!r} is not an endpoint of edge {m.edge!r}")
    if abs(eps) != 1:
        raise IllegalMoveError(
            f"edge {m.edge!r} has index {eps} at {dead!r}; collapse needs +1 or -1")
    new_edges = []
    for f in g.edges:
        if f.eid == e.eid:
            continue
        v0, i0 = (m.survivor, n_surv * f.i0 * eps) if f.v0 == dead else (f.v0, f.i0)
        v1, i1 = (m.survivor, n_surv * f.i1 * eps) if f.v1 == dead else (f.v1, f.i1)
        new_edges.append(Edge(f.eid, v0, v1, i0, i1))
    vertices = tuple(v for v in g.vertices if v != dead)
    return EdgeIndexedGraph(vertices, tuple(new_edges))


def _apply_expansion(g: EdgeIndexedGraph, m: Expansion) -> EdgeIndexedGraph:
    if m.n == 0:
        raise IllegalMoveError("expansion factor must be nonzero")
    if not g.has_vertex(m.vertex):
        raise IllegalMoveError(f"no vertex {m.vertex!r} in graph")
    if g.has_vertex(m.new_vertex):
        raise IllegalMoveError(f"new vertex id {m.new_vertex!r} already in use")
    if any(e.eid == m.new_edge for e in g.edges):
        raise IllegalMoveError(f"new edge id {m.new_edge!r} already in use")
    moved = set()
    for end in m.moved_ends:
        end = _require_end(g, end)
        if g.end_vertex(end) != m.vertex:
            raise IllegalMoveError(
                f"end {end} is at {g.end_vertex(end)!r}, not at {m.vertex!r}")
        idx = g.end_index(end)
        if not divides(m.n, idx):
            raise IllegalMoveError(
                f"index {idx} at end {end} is not divisible by {m.n}")
        moved.add(end)
    new_edges = []
    for f in g.edges:
        v0, i0, v1, i1 = f.v0, f.i0, f.v1, f.i1
        if End(f.eid, 0) in moved:
            v0, i0 = m.new_vertex, i0 // m.n
        if End(f.eid, 1) in moved:
            v1, i1 = m.new_vertex, i1 // m.n
        new_edges.append(Edge(f.eid, v0, v1, i0, i1))
    new_edges.append(Edge(m.new_edge, m.vertex, m.new_vertex, m.n, 1))
    return EdgeIndexedGraph(g.vertices + (m.new_vertex,), tuple(new_edges))


def _apply_slide(g: EdgeIndexedGraph, m: Slide) -> EdgeIndexedGraph:
    moving = _require_end(g, m.moving_end)
    along = _require_end(g, m.along)
    if moving.edge == along.edge:
        raise IllegalMoveError(
            f"cannot slide edge {moving.edge!r} along itself")
    v = g.end_vertex(moving)
    if g.end_vertex(along) != v:
        raise IllegalMoveError(
            f"ends {moving} (at {v!r}) and {along} (at {g.end_vertex(along)!r}) "
            "do not share a vertex")
    i_m = g.end_index(moving)
    i_a = g.end_index(along)
    if not divides(i_a, i_m):
        raise IllegalMoveError(
            f"carrier index {i_a} does not divide moving index {i_m}")
    ratio = i_m // i_a
    far = End(along.edge, 1 - along.side)
    far_vertex = g.end_vertex(far)
    new_index = ratio * g.end_index(far)
    f = g.edge(moving.edge)
    if moving.side == 0:
        new_f = Edge(f.eid, far_vertex, f.v1, new_index, f.i1)
    else:
        new_f = Edge(f.eid, f.v0, far_vertex, f.i0, new_index)
    edges = tuple(new_f if e.eid == f.eid else e for e in g.edges)
    return EdgeIndexedGraph(g.vertices, edges)


def invert_move(g: EdgeIndexedGraph, m: Move) -> Move:
    """The move undoing m, expressed on apply_move(g, m).

    Collapse and expansion swap; a slide reverses across the same carrier.
    Replaying the pair returns a graph equivalent to g (equal whenever the
    collapsed end's index was +1; a -1 differs by an edge sign flip).
    """
    apply_move(g, m)  # legality check; errors propagate
    if isinstance(m, Collapse):
        e = g.edge(m.edge)
        if m.survivor == e.v0:
            dead, n_surv, eps = e.v1, e.i0, e.i1
        else:
            dead, n_surv, eps = e.v0, e.i1, e.i0
        moved = tuple(end for end in g.ends_at(dead) if end.edge != m.edge)
        return Expansion(vertex=m.survivor, n=n_surv * eps, moved_ends=moved,
                         new_vertex=dead, new_edge=m.edge)
    if isinstance(m, Expansion):
        return Collapse(edge=m.new_edge, survivor=m.vertex)
    return Slide(moving_end=End(*m.moving_end),
                 along=End(m.along.edge, 1 - m.along.side))


def enumerate_collapses(g: EdgeIndexedGraph) -> list[Collapse]:
    """All legal collapses, sorted by edge then survivor."""
    out = []
    for e in g.edges:
        if e.is_loop:
            continue
        if abs(e.i0) == 1:
            out.append(Collapse(edge=e.eid, survivor=e.v1))
        if abs(e.i1) == 1:
            out.append(Collapse(edge=e.eid, survivor=e.v0))
    out.sort(key=lambda c: (c.edge, c.survivor))
    return out


def enumerate_slides(g: EdgeIndexedGraph) -> list[Slide]:
    """All legal slides: ordered pairs of distinct-edge ends at one vertex
    with the carrier index dividing the moving index."""
    out = []
    for v in g.vertices:
        ends = g.ends_at(v)
        for moving in ends:
            i_m = g.end_index(moving)
            for along in ends:
                if along.edge == moving.edge:
                    continue
                if divides(g.end_index(along), i_m):
                    out.append(Slide(moving_end=moving, along=along))
    out.sort(key=lambda s: (s.moving_end, s.along))
    return out


def enumerate_expansions(g: EdgeIndexedGraph, bounds: ExpansionBounds) -> list[Expansion]:
    """All expansions with factor 2..max_n dividing a nonempty end subset.

    Factors are divisors of the subset gcd; negative factors and empty
    subsets are deliberately excluded (sign flips and collapsible appendages
    add nothing but fanout).  Fresh ids are derived deterministically from
    the graph.
    """
    new_v = fresh_vertex_id(g)
    new_e = fresh_edge_id(g)
    out = []
    for v in g.vertices:
        ends = g.ends_at(v)
        for size in range(1, min(len(ends), bounds.max_subset_size) + 1):
            for combo in combinations(ends, size):
                d = 0
                for end in combo:
                    d = gcd(d, abs(g.end_index(end)))
                for n in range(2, bounds.max_n + 1):
                    if d % n == 0:
                        out.append(Expansion(vertex=v, n=n, moved_ends=combo,
                                             new_vertex=new_v, new_edge=new_e))
    return out


@dataclass(frozen=True)
class PredicateReport:
    """Structural verdicts for one graph.

    ``jsj`` is QUALIFIED exactly when the graph is reduced, passes the
    sufficient unfoldedness test (every index has absolute value at least 2)
    and is neither a point nor a line.  When the graph is reduced and general
    but some index is a unit, the sufficient test is inconclusive and the
    verdict is UNKNOWN rather than a guess.
    """

    reduced: bool
    minimal: bool
    strongly_slide_free: bool
    unfolded_sufficient: bool
    geometry: str
    jsj: str
    jsj_reason: str | None = None


def _geometry(g: EdgeIndexedGraph) -> str:
    if len(g.vertices) == 1 and not g.edges:
        return "point"
    if len(g.edges) == 1:
        e = g.edges[0]
        if e.is_loop and abs(e.i0) == 1 and abs(e.i1) == 1:
            return "line"
        if not e.is_loop and abs(e.i0) == 2 and abs(e.i1) == 2:
            return "line"
    return "general"


def analyze(g: EdgeIndexedGraph) -> PredicateReport:
    reduced = not enumerate_collapses(g)
    minimal = all(
        abs(g.end_index(g.ends_at(v)[0])) >= 2
        for v in g.vertices if g.degree(v) == 1)
    ssf = minimal
    if ssf:
        for v in g.vertices:
            idx = [g.end_index(end) for end in g.ends_at(v)]
            for i, a in enumerate(idx):
                for j, b in enumerate(idx):
                    if i != j and divides(b, a):
                        ssf = False
    unfolded = all(abs(g.end_index(end)) >= 2 for end in g.ends())
    geometry = _geometry(g)
    if not reduced:
        jsj, reason = "NOT_QUALIFIED", "not reduced"
    elif geometry != "general":
        jsj, reason = "NOT_QUALIFIED", f"graph is a {geometry}"
    elif unfolded:
        jsj, reason = "QUALIFIED", None
    else:
        jsj, reason = "UNKNOWN", "unfoldedness test inconclusive"
    return PredicateReport(
        reduced=reduced,
        minimal=minimal,
        strongly_slide_free=ssf,
        unfolded_sufficient=unfolded,
        geometry=geometry,
        jsj=jsj,
        jsj_reason=reason,
    )


def reduce_graph(g: EdgeIndexedGraph) -> tuple[EdgeIndexedGraph, tuple[Collapse, ...]]:
    """Greedily collapse (first legal move each round) until reduced."""
    script: list[Collapse] = []
    while True:
        cols = enumerate_collapses(g)
        if not cols:
            return g, tuple(script)
        g = apply_move(g, cols[0])
        script.append(cols[0])


_END_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*):([01])\Z")


def _parse_end(tok: str, lineno: int | None) -> End:
    match = _END_RE.match(tok)
    if not match:
        raise ScriptError(f"bad end reference {tok!r} (want edge:side)", lineno)
    return End(match.group(1), int(match.group(2)))


def format_move(m: Move) -> str:
    if isinstance(m, Collapse):
        return f"collapse {m.edge} into {m.survivor}"
    if isinstance(m, Slide):
        return f"slide {m.moving_end} along {m.along}"
    if isinstance(m, Expansion):
        ends = "".join(f" {end}" for end in m.moved_ends)
        return f"expand {m.vertex} {m.n}{ends} as {m.new_vertex} {m.new_edge}"
    raise ValueError(f"unknown move {m!r}")


def parse_move(line: str, lineno: int | None = None) -> Move:
    fields = line.split()
    if not fields:
        raise ScriptError("empty move", lineno)
    kind = fields[0]
    if kind == "collapse":
        if len(fields) != 4 or fields[2] != "into":
            raise ScriptError("want: collapse EDGE into VERTEX", lineno)
        return Collapse(edge=fields[1], survivor=fields[3])
    if kind == "slide":
        if len(fields) != 4 or fields[2] != "along":
            raise ScriptError("want: slide EDGE:SIDE along EDGE:SIDE", lineno)
        return Slide(moving_end=_parse_end(fields[1], lineno),
                     along=_parse_end(fields[3], lineno))
    if kind == "expand":
        if len(fields) < 6 or fields[-3] != "as":
            raise ScriptError(
                "want: expand VERTEX N [EDGE:SIDE ...] as NEWVERTEX NEWEDGE", lineno)
        try:
            n = int(fields[2])
        except ValueError:
            raise ScriptError(f"bad integer {fields[2]!r}", lineno) from None
        moved = tuple(_parse_end(tok, lineno) for tok in fields[3:-3])
        return Expansion(vertex=fields[1], n=n, moved_ends=moved,
                         new_vertex=fields[-2], new_edge=fields[-1])
    raise ScriptError(f"unknown move kind {kind!r}", lineno)


def format_script(moves) -> str:
    return "".join(format_move(m) + "\n" for m in moves)


def parse_script(text: str) -> tuple[Move, ...]:
    moves = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            moves.append(parse_move(line, lineno))
    return tuple(moves)
