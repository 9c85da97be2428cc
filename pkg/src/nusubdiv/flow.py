"""Routes of augmented mixed graphs and their signed characteristic vectors.

A flow assigns one number to every edge of a graph, in the order of
``g.edges``.  Positive values travel tail -> head.  Unit flows have netflow
+1 at the source, -1 at the sink and 0 elsewhere.  Forward edges carry
nonnegative flow, backward edges nonpositive, bidirectional edges anything.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import B, F, MixedGraph
from .path import IndexedPath


class CycleError(ValueError):
    """The graph has a directed cycle, so its unit flows are unbounded."""


class DegenerateGraphError(ValueError):
    pass


@dataclass(frozen=True)
class Route:
    """Simple source-to-sink path: visited vertices, edge positions in the
    graph's edge list, and the sign of each traversal."""

    vertices: tuple
    edge_ids: tuple
    signs: tuple
    labels: tuple = (None, None)

    @property
    def source_label(self):
        return self.labels[0]

    @property
    def sink_label(self):
        return self.labels[1]

    def to_json(self, g: MixedGraph) -> dict:
        return {"route": [g.name(v) if g.is_terminal(v) else v for v in self.vertices], "signs": list(self.signs)}


def _moves(g: MixedGraph) -> dict:
    out = {v: [] for v in g.vertices}
    for idx, e in enumerate(g.edges):
        for u, v, sign in e.traversals():
            out[u].append((v, idx, sign))
    for v in out:
        out[v].sort()
    return out


def enumerate_routes(g: MixedGraph) -> list:
    """All simple s -> t paths that respect edge orientations, in
    lexicographic order of their vertex sequences."""
    if not g.augmented:
        raise ValueError("route enumeration needs an augmented graph")
    moves = _moves(g)
    for v in g.inner_vertices:
        if not moves[v]:
            raise DegenerateGraphError(f"inner vertex {v} has no way to continue")
    routes = []
    path, ids, signs = [g.source], [], []
    seen = {g.source}

    def dfs(u):
        if u == g.sink:
            labels = (g.edges[ids[0]].label, g.edges[ids[-1]].label)
            routes.append(Route(tuple(path), tuple(ids), tuple(signs), labels))
            return
        for v, idx, sign in moves[u]:
            if v in seen:
                continue
            seen.add(v)
            path.append(v)
            ids.append(idx)
            signs.append(sign)
            dfs(v)
            seen.discard(v)
            path.pop()
            ids.pop()
            signs.pop()

    dfs(g.source)
    return routes


def signed_vector(r: Route, g: MixedGraph) -> tuple:
    x = [0] * len(g.edges)
    for idx, sign in zip(r.edge_ids, r.signs):
        x[idx] = sign
    return tuple(x)


def check_flow(v: Sequence, g: MixedGraph) -> bool:
    """True iff ``v`` is a unit flow on ``g`` satisfying the sign constraints."""
    if len(v) != len(g.edges):
        raise ValueError(f"flow has {len(v)} entries but the graph has {len(g.edges)} edges")
    net = {u: 0 for u in g.vertices}
    for x, e in zip(v, g.edges):
        if e.orientation is F and x < 0:
            return False
        if e.orientation is B and x > 0:
            return False
        net[e.tail] += x
        net[e.head] -= x
    for u, val in net.items():
        want = 1 if u == g.source else -1 if u == g.sink else 0
        if val != want:
            return False
    return True


def has_cycle(g: MixedGraph) -> bool:
    """Search for a simple directed cycle using every edge at most once.

    A bidirectional edge may be traversed in either direction, but going
    back and forth over the same edge does not count as a cycle.
    """
    moves = _moves(g)

    def dfs(start, u, on_path, used):
        for v, idx, _ in moves[u]:
            if idx in used:
                continue
            if v == start:
                return True
            if v in on_path or v < start:
                continue
            on_path.add(v)
            used.add(idx)
            if dfs(start, v, on_path, used):
                return True
            on_path.discard(v)
            used.discard(idx)
        return False

    return any(dfs(v, v, {v}, set()) for v in sorted(g.vertices))


def polytope_vertices(g: MixedGraph) -> list:
    """Signed vectors of all routes, which are the vertices of the flow
    polytope of an acyclic graph."""
    if has_cycle(g):
        raise CycleError("graph has a directed cycle; the unit flows do not form a polytope")
    out = []
    seen = set()
    for r in enumerate_routes(g):
        x = signed_vector(r, g)
        if x in seen:
            raise AssertionError(f"two routes share the signed vector {x}")
        seen.add(x)
        out.append(x)
    return out


def route_arc(r: Route) -> tuple:
    """``(i, j)`` read off the labels E_i and N_j of the source and sink edges."""
    src, snk = r.labels
    if not src or not snk or src[0] != "E" or snk[0] != "N":
        raise ValueError(f"route {r.vertices} has unlabeled source or sink edge")
    return (int(src[1:]), int(snk[1:]))


def route_to_product_vertex(r: Route, p: IndexedPath) -> tuple:
    """The vertex (e_i, e_j) of the product of simplices, as two 0/1 tuples
    indexed by I and J in increasing order."""
    i, j = route_arc(r)
    ei = tuple(1 if k == i else 0 for k in p.I)
    ej = tuple(1 if k == j else 0 for k in p.J)
    if 1 not in ei or 1 not in ej:
        raise ValueError(f"arc {(i, j)} is not in I x J")
    return ei, ej


def convex_combination(vectors: Sequence[Sequence], weights: Sequence) -> tuple:
    total = sum(weights)
    return tuple(
        sum(Fraction(w) * x[k] for w, x in zip(weights, vectors)) / total for k in range(len(vectors[0]))
    )

