"""The two-vertex family showing deformation equivalence is coarser than
slide equivalence.

For nonzero integers m, n, r, s:

  X = vertices {A, B}, loop at A with indices (m*n*r, r), edge A-B with
      indices (r*m^2 at A, s at B);
  Y = the mirror image with m and n, r and s exchanged: loop at B with
      (m*n*s, s), edge B-A with (s*n^2 at B, r at A).

X and Y are joined by a four-move deformation (expand, slide, slide,
collapse), replayed and checked here.  When neither of m, n divides the
other, the slide class of X is a ray X_0, X_1, ... whose free-edge index at
level k is r*m^(k+2)*n^k, and Y appears nowhere on it; ``verify_slide_ladder``
certifies that shape level by level up to a chosen depth.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .canonical import canonical_certificate, is_isomorphic
from .graphs import EdgeIndexedGraph, End, graph_from_parts
from .moves import (
    Collapse,
    Expansion,
    Move,
    Slide,
    apply_move,
    divides,
    enumerate_slides,
)

__all__ = [
    "ExampleParams",
    "LadderHypothesisError",
    "example_graph",
    "free_edge_index",
    "deformation_moves",
    "DeformationReport",
    "replay_deformation",
    "LadderLevel",
    "LadderCertificate",
    "verify_slide_ladder",
    "index_tuple",
]


class LadderHypothesisError(ValueError):
    """The ladder certificate needs m and n to not divide each other."""


@dataclass(frozen=True)
class ExampleParams:
    m: int
    n: int
    r: int
    s: int

    def __post_init__(self) -> None:
        for name in ("m", "n", "r", "s"):
            if getattr(self, name) == 0:
                raise ValueError(f"parameter {name} must be nonzero")

    @property
    def m_n_incomparable(self) -> bool:
        """Neither of m, n divides the other; gates the ladder claims."""
        return not divides(self.m, self.n) and not divides(self.n, self.m)

    @property
    def r_s_nontrivial(self) -> bool:
        """|r|, |s| >= 2; gates the qualification claims for X and Y."""
        return abs(self.r) >= 2 and abs(self.s) >= 2


def free_edge_index(p: ExampleParams, k: int) -> int:
    """Index of the non-loop edge at the loop vertex on ladder level k."""
    return p.r * p.m ** (k + 2) * p.n ** k


def example_graph(which: str, p: ExampleParams, k: int = 0) -> EdgeIndexedGraph:
    """Construct X, Y or the ladder level Xk (X0 equals X)."""
    if which == "X":
        which, k = "Xk", 0
    if which == "Xk":
        return graph_from_parts(
            ("A", "B"),
            (("l", "A", "A", p.m * p.n * p.r, p.r),
             ("t", "A", "B", free_edge_index(p, k), p.s)))
    if which == "Y":
        return graph_from_parts(
            ("A", "B"),
            (("l", "B", "B", p.m * p.n * p.s, p.s),
             ("t", "B", "A", p.s * p.n * p.n, p.r)))
    raise ValueError(f"unknown example graph {which!r}")


def deformation_moves(p: ExampleParams) -> tuple[Move, ...]:
    """The four-move deformation from X to Y.

    Expand at A by r*m, carrying the loop's big end and the free edge's end
    to a new vertex C; slide the new edge's end around what is left of the
    loop; slide it again across the free edge; collapse it into B.
    """
    return (
        Expansion(vertex="A", n=p.r * p.m,
                  moved_ends=(End("l", 0), End("t", 0)),
                  new_vertex="C", new_edge="u"),
        Slide(moving_end=End("u", 0), along=End("l", 1)),
        Slide(moving_end=End("u", 0), along=End("t", 0)),
        Collapse(edge="u", survivor="B"),
    )


@dataclass
class DeformationReport:
    params: ExampleParams
    moves: tuple[Move, ...]
    graphs: tuple[EdgeIndexedGraph, ...]
    index_tuples: tuple[tuple[int, ...], ...]
    endpoint_matches: bool


def replay_deformation(p: ExampleParams) -> DeformationReport:
    """Apply the four moves from X and check the endpoint against Y.

    An illegal step signals a fault in the move engine, not bad input; the
    moves are legal for every choice of nonzero parameters.
    """
    g = example_graph("X", p)
    graphs = [g]
    moves = deformation_moves(p)
    for move in moves:
        g = apply_move(g, move)
        graphs.append(g)
    target = example_graph("Y", p)
    return DeformationReport(
        params=p,
        moves=moves,
        graphs=tuple(graphs),
        index_tuples=tuple(index_tuple(h) for h in graphs),
        endpoint_matches=is_isomorphic(graphs[-1], target),
    )


def index_tuple(g: EdgeIndexedGraph) -> tuple[int, ...]:
    """Read a graph's indices in a breadth-first order, for reports.

    Vertices are ranked breadth-first from the smallest identifier; edges are
    listed by (rank pair, index pair, id) with each pair read from the
    lower-ranked endpoint, loops in declaration side order.
    """
    rank: dict[str, int] = {}
    queue = deque([g.vertices[0]])
    rank[g.vertices[0]] = 0
    while queue:
        v = queue.popleft()
        for end in g.ends_at(v):
            e = g.edge(end.edge)
            w = e.endpoint(1 - end.side)
            if w not in rank:
                rank[w] = len(rank)
                queue.append(w)
    keyed = []
    for e in g.edges:
        r0, r1 = rank[e.v0], rank[e.v1]
        if r1 < r0:
            pair = (e.i1, e.i0)
            ranks = (r1, r0)
        else:
            pair = (e.i0, e.i1)
            ranks = (r0, r1)
        keyed.append((ranks, pair, e.eid))
    keyed.sort()
    return tuple(x for (_, pair, _) in keyed for x in pair)


@dataclass(frozen=True)
class LadderLevel:
    index: int
    move_count: int
    neighbor_certs: tuple[bytes, ...]


@dataclass
class LadderCertificate:
    """Machine-checked: to the given depth, the slide class of X is the path
    X_0 - X_1 - ... with the predicted indices, and Y is on no level.

    This certifies that no slide path of length at most the depth joins X
    and Y; the unbounded statement needs the induction, not a computation.
    """

    params: ExampleParams
    depth: int
    levels: tuple[LadderLevel, ...]
    shape_ok: bool
    y_absent: bool

    @property
    def ok(self) -> bool:
        return self.shape_ok and self.y_absent


def verify_slide_ladder(p: ExampleParams, depth: int) -> LadderCertificate:
    """Check the ladder shape for levels 0..depth.

    Level k must admit exactly one slide (k = 0) or exactly two, and the
    slide results must be canon-equal to levels k-1 and k+1 built from the
    index formula.
    """
    if not p.m_n_incomparable:
        raise LadderHypothesisError(
            f"need m and n to not divide each other, got m={p.m}, n={p.n}")
    ladder = [example_graph("Xk", p, k) for k in range(depth + 2)]
    certs = [canonical_certificate(g) for g in ladder]
    y_cert = canonical_certificate(example_graph("Y", p))
    levels = []
    shape_ok = True
    for k in range(depth + 1):
        g = ladder[k]
        slides = enumerate_slides(g)
        found = sorted(canonical_certificate(apply_move(g, mv)) for mv in slides)
        expected = sorted({certs[1]} if k == 0 else {certs[k - 1], certs[k + 1]})
        want_count = 1 if k == 0 else 2
        if found != expected or len(slides) != want_count:
            shape_ok = False
        levels.append(LadderLevel(
            index=free_edge_index(p, k),
            move_count=len(slides),
            neighbor_certs=tuple(found),
        ))
    y_absent = all(certs[k] != y_cert for k in range(depth + 1))
    return LadderCertificate(
        params=p,
        depth=depth,
        levels=tuple(levels),
        shape_ok=shape_ok,
        y_absent=y_absent,
    )
