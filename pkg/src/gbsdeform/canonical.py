"""Canonical certificates for edge-indexed graphs.

Two graphs are equivalent when some relabeling composed with some sign flip
turns one into the other.  The certificate is the lexicographically minimal
encoding over all vertex bijections onto {0..n-1} and all sign flips, where
the encoding lists geometric edges as tuples

    (min endpoint rank, max endpoint rank, index at min-rank end, index at
     max-rank end)

sorted lexicographically; the two index entries of a loop are ordered by
(absolute value, sign).  Equal certificates hold exactly on equivalence
classes, so certificates double as deduplication keys for move searches.

The search is a branch and bound over rank assignments.  Sign freedom
factors exactly: flipping an edge negates both of its entries, so each edge
tuple is minimized over the pair sign independently, and only the vertex
signs (one per rank, the first fixed to +1) couple the edges.  Partial
assignments are compared block by block against the best complete encoding;
a block collects the tuples whose min rank is a fixed value, and within a
block the already-determined tuples form a prefix, which makes the pruning
sound.  ``brute_force_isomorphic`` is the independent oracle the search is
validated against.
"""

from __future__ import annotations

from bisect import insort
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

from .graphs import EdgeIndexedGraph, End

__all__ = [
    "SizeCapError",
    "DEFAULT_SIZE_CAP",
    "ORACLE_SIZE_CAP",
    "CanonicalForm",
    "Isomorphism",
    "canonical_form",
    "canonical_certificate",
    "is_isomorphic",
    "brute_force_isomorphic",
    "graph_isomorphism",
]

DEFAULT_SIZE_CAP = 12
ORACLE_SIZE_CAP = 6

_PRUNE, _UNDECIDED, _LESS = 0, 1, 2


class SizeCapError(ValueError):
    """The graph exceeds the configured vertex cap for canonicalization."""


def _sgn(x: int) -> int:
    return 1 if x > 0 else -1


def _abs_sign_key(x: int) -> tuple[int, int]:
    return (abs(x), 0 if x < 0 else 1)


def _loop_slot(a: int, b: int) -> tuple[tuple[int, int], int, int]:
    """Canonical (pair, first side, sign) for a loop with raw indices (a, b).

    Minimizes over the free pair sign; within a pair the entries are ordered
    by (absolute value, sign).  ``first side`` records which physical side
    supplies the first entry, for isomorphism extraction.
    """
    best = None
    for s in (1, -1):
        va, vb = s * a, s * b
        if _abs_sign_key(va) <= _abs_sign_key(vb):
            cand = ((va, vb), 0, s)
        else:
            cand = ((vb, va), 1, s)
        if best is None or cand[0] < best[0]:
            best = cand
    return best


@dataclass(eq=False)
class CanonicalForm:
    """Certificate plus the assignment that realizes it."""

    cert: bytes
    order: tuple[str, ...]              # rank -> vertex
    rank: dict[str, int]                # vertex -> rank
    alpha: tuple[int, ...]              # rank -> vertex sign
    tuples: tuple[tuple[int, int, int, int], ...]   # sorted encoding
    edge_slots: dict[str, tuple[tuple[int, int, int, int], int]]  # eid -> (tuple, first side)


@dataclass(eq=False)
class Isomorphism:
    """An equivalence witness g1 -> g2: vertex, edge and end correspondences."""

    vertex_map: dict[str, str]
    edge_map: dict[str, str]
    end_map: dict[End, End]

    def map_vertex(self, v: str) -> str:
        return self.vertex_map[v]

    def map_end(self, end: End) -> End:
        return self.end_map[end]


def _search_min_encoding(g: EdgeIndexedGraph):
    """Return (flat encoding, rank order, alpha) minimizing the edge listing."""
    verts = g.vertices
    n = len(verts)
    loops: dict[str, list[tuple[int, int]]] = {v: [] for v in verts}
    adj: dict[str, list[tuple[str, int, int]]] = {v: [] for v in verts}
    for e in g.edges:
        if e.is_loop:
            loops[e.v0].append(_loop_slot(e.i0, e.i1)[0])
        else:
            adj[e.v0].append((e.v1, e.i1, e.i0))
            adj[e.v1].append((e.v0, e.i0, e.i1))
    for v in verts:
        loops[v].sort()
    big = g.max_abs_index()

    rank: dict[str, int] = {}
    order: list[str] = []
    alpha: list[int] = []
    blocks: list[list[tuple[int, int, int, int]]] = []
    sizes: list[int] = []
    best: dict = {"flat": None, "order": None, "alpha": None}

    def new_tuples(v: str, t: int, k: int):
        """Tuples determined by assigning rank k, sign t to vertex v."""
        mine = [(k, k, p, q) for (p, q) in loops[v]]
        elsewhere = []
        unranked = 0
        for (w, xw, yv) in adj[v]:
            a = rank.get(w)
            if a is None:
                unranked += 1
            else:
                elsewhere.append((a, k, -abs(xw), -yv * _sgn(xw) * alpha[a] * t))
        return mine, elsewhere, unranked

    def compare_partial(k: int) -> int:
        """Compare the determined staircase against the best encoding."""
        flat_best = best["flat"]
        p = 0
        for a in range(k + 1):
            block = blocks[a]
            have = len(block)
            for i in range(sizes[a]):
                if i < have:
                    tv, bv = block[i], flat_best[p]
                    if tv < bv:
                        return _LESS
                    if tv > bv:
                        return _PRUNE
                else:
                    # Remaining tuples in this block have max rank > k.
                    lb = (a, k + 1, -big, -big)
                    return _PRUNE if lb > flat_best[p] else _UNDECIDED
                p += 1
        return _UNDECIDED

    def dfs(k: int) -> None:
        if k == n:
            flat = [t for block in blocks for t in block]
            if best["flat"] is None or flat < best["flat"]:
                best["flat"] = flat
                best["order"] = tuple(order)
                best["alpha"] = tuple(alpha)
            return
        # Minimal orderings keep every rank prefix connected, so only
        # neighbors of ranked vertices need be tried beyond rank 0.
        if k == 0:
            cands = list(verts)
        else:
            cands = sorted({w for v in order for (w, _, _) in adj[v] if w not in rank})
        signs = (1,) if k == 0 else (1, -1)
        moves = []
        for v in cands:
            for t in signs:
                mine, elsewhere, unranked = new_tuples(v, t, k)
                preview = sorted(mine + elsewhere)
                moves.append((preview, v, t, mine, elsewhere, unranked))
        moves.sort(key=lambda m: (m[0], m[1], -m[2]))
        for preview, v, t, mine, elsewhere, unranked in moves:
            rank[v] = k
            order.append(v)
            alpha.append(t)
            blocks.append(sorted(mine))
            sizes.append(len(mine) + unranked)
            for tup in elsewhere:
                insort(blocks[tup[0]], tup)
            if best["flat"] is None or compare_partial(k) != _PRUNE:
                dfs(k + 1)
            for tup in elsewhere:
                blocks[tup[0]].remove(tup)
            blocks.pop()
            sizes.pop()
            alpha.pop()
            order.pop()
            del rank[v]

    dfs(0)
    return best["flat"], best["order"], best["alpha"]


def _encode(n: int, flat) -> bytes:
    body = ";".join(f"{a},{b},{x},{y}" for (a, b, x, y) in flat)
    return f"v{n}:{body}".encode("ascii")


@lru_cache(maxsize=1 << 16)
def _canonical_form_cached(g: EdgeIndexedGraph, size_cap: int) -> CanonicalForm:
    if len(g.vertices) > size_cap:
        raise SizeCapError(
            f"graph has {len(g.vertices)} vertices, cap is {size_cap}")
    flat, order, alpha = _search_min_encoding(g)
    rank = {v: i for i, v in enumerate(order)}
    slots: dict[str, tuple[tuple[int, int, int, int], int]] = {}
    for e in g.edges:
        if e.is_loop:
            a = rank[e.v0]
            pair, first, _ = _loop_slot(e.i0, e.i1)
            slots[e.eid] = ((a, a, pair[0], pair[1]), first)
        else:
            r0, r1 = rank[e.v0], rank[e.v1]
            if r0 < r1:
                a, b, x, y, first = r0, r1, e.i0, e.i1, 0
            else:
                a, b, x, y, first = r1, r0, e.i1, e.i0, 1
            tup = (a, b, -abs(x), -y * _sgn(x) * alpha[a] * alpha[b])
            slots[e.eid] = (tup, first)
    assert sorted(t for t, _ in slots.values()) == flat
    return CanonicalForm(
        cert=_encode(len(g.vertices), flat),
        order=tuple(order),
        rank=rank,
        alpha=tuple(alpha),
        tuples=tuple(flat),
        edge_slots=slots,
    )


def canonical_form(g: EdgeIndexedGraph, size_cap: int = DEFAULT_SIZE_CAP) -> CanonicalForm:
    return _canonical_form_cached(g, size_cap)


def canonical_certificate(g: EdgeIndexedGraph, size_cap: int = DEFAULT_SIZE_CAP) -> bytes:
    """Certificate bytes; equal exactly on relabel-and-sign-flip classes."""
    return canonical_form(g, size_cap).cert


def is_isomorphic(g1: EdgeIndexedGraph, g2: EdgeIndexedGraph,
                  size_cap: int = DEFAULT_SIZE_CAP) -> bool:
    """Equivalence up to relabeling and sign flips, via certificates."""
    if len(g1.vertices) > size_cap or len(g2.vertices) > size_cap:
        raise SizeCapError(f"vertex cap {size_cap} exceeded")
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return False
    if _abs_index_profile(g1) != _abs_index_profile(g2):
        return False
    return canonical_certificate(g1, size_cap) == canonical_certificate(g2, size_cap)


def _abs_index_profile(g: EdgeIndexedGraph):
    return sorted((abs(e.i0), abs(e.i1)) if abs(e.i0) <= abs(e.i1)
                  else (abs(e.i1), abs(e.i0)) for e in g.edges)


def graph_isomorphism(g1: EdgeIndexedGraph, g2: EdgeIndexedGraph,
                      size_cap: int = DEFAULT_SIZE_CAP) -> Isomorphism | None:
    """An explicit equivalence witness, or None when the graphs differ.

    Edges sharing a canonical tuple are interchangeable, so they are paired
    in identifier order; any such pairing differs from any other by an
    automorphism composed with sign flips.
    """
    f1 = canonical_form(g1, size_cap)
    f2 = canonical_form(g2, size_cap)
    if f1.cert != f2.cert:
        return None
    vertex_map = {v: f2.order[f1.rank[v]] for v in g1.vertices}
    groups1: dict[tuple, list[str]] = {}
    groups2: dict[tuple, list[str]] = {}
    for eid, (tup, _) in f1.edge_slots.items():
        groups1.setdefault(tup, []).append(eid)
    for eid, (tup, _) in f2.edge_slots.items():
        groups2.setdefault(tup, []).append(eid)
    edge_map: dict[str, str] = {}
    end_map: dict[End, End] = {}
    for tup, eids1 in groups1.items():
        eids2 = groups2[tup]
        for e1, e2 in zip(sorted(eids1), sorted(eids2)):
            edge_map[e1] = e2
            first1 = f1.edge_slots[e1][1]
            first2 = f2.edge_slots[e2][1]
            end_map[End(e1, first1)] = End(e2, first2)
            end_map[End(e1, 1 - first1)] = End(e2, 1 - first2)
    return Isomorphism(vertex_map, edge_map, end_map)


def brute_force_isomorphic(g1: EdgeIndexedGraph, g2: EdgeIndexedGraph) -> bool:
    """Exhaustive equivalence test; the oracle for the canonical search.

    Tries every vertex bijection composed with every vertex sign assignment.
    Edge flips negate both entries of a single edge and touch nothing else,
    so they are absorbed by comparing each edge descriptor up to pair sign.
    """
    if len(g1.vertices) > ORACLE_SIZE_CAP or len(g2.vertices) > ORACLE_SIZE_CAP:
        raise SizeCapError(f"oracle vertex cap {ORACLE_SIZE_CAP} exceeded")
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return False

    def descriptor(v0, v1, i0, i1):
        d = sorted(((v0, i0), (v1, i1)))
        dneg = sorted(((v0, -i0), (v1, -i1)))
        return tuple(min(d, dneg))

    target = Counter(descriptor(e.v0, e.v1, e.i0, e.i1) for e in g2.edges)
    verts1 = g1.vertices
    for perm in permutations(g2.vertices):
        phi = dict(zip(verts1, perm))
        for signs in product((1, -1), repeat=len(verts1)):
            alpha = dict(zip(verts1, signs))
            got = Counter(
                descriptor(phi[e.v0], phi[e.v1], alpha[e.v0] * e.i0, alpha[e.v1] * e.i1)
                for e in g1.edges)
            if got == target:
                return True
    return False
