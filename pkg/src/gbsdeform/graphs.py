"""Edge-indexed graphs: connected multigraphs with a nonzero integer at each
edge-end.

These are the quotient objects of generalized Baumslag-Solitar trees: every
vertex and edge carries an infinite cyclic group, and the index at an edge-end
records the inclusion map (multiplication by that integer).  Indices are
arbitrary-precision; slide orbits grow geometrically and overflow fixed-width
integers quickly.

Graphs are immutable values.  Every operation returns a new graph, so values
can be shared freely across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

__all__ = [
    "GraphError",
    "InvalidGraphError",
    "ParseError",
    "Edge",
    "End",
    "SignFlip",
    "EdgeIndexedGraph",
    "graph_from_parts",
    "parse_graph",
    "serialize_graph",
    "dot_export",
    "betti_number",
    "apply_sign_flips",
]

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_INT_RE = re.compile(r"-?[1-9][0-9]*\Z")


class GraphError(ValueError):
    """Base class for graph construction and parsing errors."""


class InvalidGraphError(GraphError):
    """A structural invariant was violated (zero index, disconnected, ...)."""


class ParseError(GraphError):
    """Text did not conform to the .gbs grammar.

    Carries 1-based line and column numbers when they apply.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"line {line}, column {column}: {message}"
        elif line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Edge:
    """One geometric edge: an unordered pair of ends with indices.

    Side 0 refers to (v0, i0), side 1 to (v1, i1).
    """

    eid: str
    v0: str
    v1: str
    i0: int
    i1: int

    def endpoint(self, side: int) -> str:
        return self.v0 if side == 0 else self.v1

    def index(self, side: int) -> int:
        return self.i0 if side == 0 else self.i1

    @property
    def is_loop(self) -> bool:
        return self.v0 == self.v1


class End(NamedTuple):
    """A reference to one end of a geometric edge (side 0 or 1)."""

    edge: str
    side: int

    def __str__(self) -> str:
        return f"{self.edge}:{self.side}"


@dataclass(frozen=True)
class SignFlip:
    """A change of generators: negate the index at an end once per membership
    of its vertex in ``vertex_flips`` and once per membership of its edge in
    ``edge_flips``.  The action is an involution componentwise.
    """

    vertex_flips: frozenset[str] = frozenset()
    edge_flips: frozenset[str] = frozenset()


@dataclass(frozen=True)
class EdgeIndexedGraph:
    """A connected multigraph with nonzero integer indices at all edge-ends.

    Vertices and edges are stored sorted by identifier, so two graphs built
    from the same id-keyed content compare equal regardless of declaration
    order.  Loops and parallel edges are permitted.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.eid)))
        self._validate()

    def _validate(self) -> None:
        if not self.vertices:
            raise InvalidGraphError("a graph needs at least one vertex")
        seen_v: set[str] = set()
        for v in self.vertices:
            if not _IDENT_RE.match(v):
                raise InvalidGraphError(f"bad vertex identifier {v!r}")
            if v in seen_v:
                raise InvalidGraphError(f"duplicate vertex id {v!r}")
            seen_v.add(v)
        seen_e: set[str] = set()
        for e in self.edges:
            if not _IDENT_RE.match(e.eid):
                raise InvalidGraphError(f"bad edge identifier {e.eid!r}")
            if e.eid in seen_e:
                raise InvalidGraphError(f"duplicate edge id {e.eid!r}")
            seen_e.add(e.eid)
            for v in (e.v0, e.v1):
                if v not in seen_v:
                    raise InvalidGraphError(f"edge {e.eid!r} uses undeclared vertex {v!r}")
            if e.i0 == 0 or e.i1 == 0:
                raise InvalidGraphError(f"edge {e.eid!r} has a zero index")
            if not isinstance(e.i0, int) or not isinstance(e.i1, int):
                raise InvalidGraphError(f"edge {e.eid!r} has non-integer indices")
        if not self._is_connected():
            raise InvalidGraphError("graph is not connected")

    def _is_connected(self) -> bool:
        if len(self.vertices) == 1:
            return True
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e in self.edges:
            adj[e.v0].add(e.v1)
            adj[e.v1].add(e.v0)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    @cached_property
    def _edges_by_id(self) -> dict[str, Edge]:
        return {e.eid: e for e in self.edges}

    @cached_property
    def _ends_by_vertex(self) -> dict[str, tuple[End, ...]]:
        ends: dict[str, list[End]] = {v: [] for v in self.vertices}
        for e in self.edges:
            ends[e.v0].append(End(e.eid, 0))
            ends[e.v1].append(End(e.eid, 1))
        return {v: tuple(sorted(es)) for v, es in ends.items()}

    def edge(self, eid: str) -> Edge:
        try:
            return self._edges_by_id[eid]
        except KeyError:
            raise InvalidGraphError(f"no edge {eid!r} in graph") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._ends_by_vertex

    def ends(self) -> Iterator[End]:
        for e in self.edges:
            yield End(e.eid, 0)
            yield End(e.eid, 1)

    def ends_at(self, v: str) -> tuple[End, ...]:
        try:
            return self._ends_by_vertex[v]
        except KeyError:
            raise InvalidGraphError(f"no vertex {v!r} in graph") from None

    def end_vertex(self, end: End) -> str:
        return self.edge(end.edge).endpoint(end.side)

    def end_index(self, end: End) -> int:
        return self.edge(end.edge).index(end.side)

    def degree(self, v: str) -> int:
        return len(self.ends_at(v))

    def max_abs_index(self) -> int:
        return max((max(abs(e.i0), abs(e.i1)) for e in self.edges), default=0)


def graph_from_parts(vertices, edges) -> EdgeIndexedGraph:
    """Build a graph from vertex ids and (eid, v0, v1, i0, i1) tuples."""
    return EdgeIndexedGraph(tuple(vertices), tuple(Edge(*e) for e in edges))


def betti_number(g: EdgeIndexedGraph) -> int:
    """First Betti number: edges - vertices + 1.

    Invariant under collapse, expansion and slide moves, which makes it a
    cheap refuter for equivalence questions.
    """
    return len(g.edges) - len(g.vertices) + 1


def apply_sign_flips(g: EdgeIndexedGraph, s: SignFlip) -> EdgeIndexedGraph:
    """Negate indices per the sign-flip action; the structure is unchanged."""
    for v in s.vertex_flips:
        if not g.has_vertex(v):
            raise InvalidGraphError(f"sign flip names unknown vertex {v!r}")
    for eid in s.edge_flips:
        g.edge(eid)
    new_edges = []
    for e in g.edges:
        sign0 = -1 if (e.v0 in s.vertex_flips) != (e.eid in s.edge_flips) else 1
        sign1 = -1 if (e.v1 in s.vertex_flips) != (e.eid in s.edge_flips) else 1
        new_edges.append(Edge(e.eid, e.v0, e.v1, sign0 * e.i0, sign1 * e.i1))
    return EdgeIndexedGraph(g.vertices, tuple(new_edges))


def parse_graph(text: str) -> EdgeIndexedGraph:
    """Parse the .gbs text format.

    Grammar, per line: blank, comment ('#' to end of line), ``vertex IDENT``,
    or ``edge IDENT IDENT IDENT INT INT`` (edge id, endpoint0, endpoint1,
    index0, index1).  Integers are nonzero decimals without leading zeros.
    Errors carry the offending line number.
    """
    vertices: list[str] = []
    edges: list[Edge] = []
    seen_v: set[str] = set()
    seen_e: set[str] = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        def col(token: str) -> int:
            found = raw.find(token)
            return found + 1 if found >= 0 else 1

        fields = line.split()
        if fields[0] == "vertex":
            if len(fields) != 2:
                raise ParseError("vertex declaration needs exactly one identifier", lineno)
            name = fields[1]
            if not _IDENT_RE.match(name):
                raise ParseError(f"bad identifier {name!r}", lineno, col(name))
            if name in seen_v:
                raise ParseError(f"duplicate vertex id {name!r}", lineno, col(name))
            seen_v.add(name)
            vertices.append(name)
        elif fields[0] == "edge":
            if len(fields) != 6:
                raise ParseError("edge declaration needs id, two endpoints and two indices", lineno)
            eid, v0, v1 = fields[1:4]
            for name in (eid, v0, v1):
                if not _IDENT_RE.match(name):
                    raise ParseError(f"bad identifier {name!r}", lineno, col(name))
            if eid in seen_e:
                raise ParseError(f"duplicate edge id {eid!r}", lineno, col(eid))
            for v in (v0, v1):
                if v not in seen_v:
                    raise ParseError(f"undeclared vertex {v!r}", lineno, col(v))
            indices = []
            for tok in fields[4:6]:
                if tok == "0" or tok == "-0":
                    raise ParseError(f"zero index on edge {eid!r}", lineno, col(tok))
                if not _INT_RE.match(tok):
                    raise ParseError(f"bad integer {tok!r}", lineno, col(tok))
                indices.append(int(tok))
            seen_e.add(eid)
            edges.append(Edge(eid, v0, v1, indices[0], indices[1]))
        else:
            raise ParseError(f"unknown declaration {fields[0]!r}", lineno, col(fields[0]))
    try:
        return EdgeIndexedGraph(tuple(vertices), tuple(edges))
    except InvalidGraphError as exc:
        raise ParseError(str(exc)) from exc


def serialize_graph(g: EdgeIndexedGraph) -> str:
    """Emit .gbs text; round-trips with parse_graph up to declaration order."""
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e.eid} {e.v0} {e.v1} {e.i0} {e.i1}" for e in g.edges]
    return "\n".join(lines) + "\n"


def dot_export(g: EdgeIndexedGraph, name: str = "G") -> str:
    """Graphviz export: one node per vertex, edges labeled "index0|index1"."""
    lines = [f"graph {name} {{"]
    lines += [f'  "{v}";' for v in g.vertices]
    lines += [f'  "{e.v0}" -- "{e.v1}" [label="{e.i0}|{e.i1}"];' for e in g.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
