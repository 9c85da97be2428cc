"""Mixed-orientation graphs built from an indexed path.

Inner vertices are the integers 1..n of the canonical indexing.  Augmented
graphs add a source ``s = 0`` and a sink ``t = n + 1``; they are rendered as
"s" and "t" in every external format.

Edges are stored with ``tail < head`` for the graphs built here.  The
orientation says which way flow may travel: ``FORWARD`` tail -> head,
``BACKWARD`` head -> tail, ``BIDIRECTIONAL`` either way.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Optional

from . import dot
from .path import E, N, IndexedPath


class Orientation(Enum):
    FORWARD = "F"
    BACKWARD = "B"
    BIDIRECTIONAL = "Bi"


F = Orientation.FORWARD
B = Orientation.BACKWARD
BI = Orientation.BIDIRECTIONAL


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    orientation: Orientation = F
    label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "orientation", Orientation(self.orientation))

    def __lt__(self, other):
        return self._key() < other._key()

    def _key(self):
        return (self.tail, self.head, self.orientation.value, self.label or "")

    def shape(self):
        """The edge without its label, used for edge-set comparisons."""
        return (self.tail, self.head, self.orientation)

    def generator(self) -> tuple:
        """Subdivision-algebra generator ``(i, j)`` for x_ij."""
        if self.orientation is F:
            return (self.tail, self.head)
        if self.orientation is B:
            return (self.head, self.tail)
        raise ValueError(f"bidirectional edge {self} has no generator")

    def traversals(self):
        """Allowed ``(from, to, sign)`` moves; sign is +1 along tail -> head."""
        if self.orientation in (F, BI):
            yield (self.tail, self.head, 1)
        if self.orientation in (B, BI):
            yield (self.head, self.tail, -1)


@dataclass(frozen=True)
class MixedGraph:
    vertices: tuple
    edges: tuple
    source: Optional[int] = None
    sink: Optional[int] = None

    def __post_init__(self):
        vs = set(self.vertices)
        for e in self.edges:
            if e.tail not in vs or e.head not in vs:
                raise ValueError(f"edge {e} uses a vertex outside the graph")
            if e.tail == e.head:
                raise ValueError(f"loop {e}")
            if self.is_terminal(e.tail) or self.is_terminal(e.head):
                if e.orientation is not F:
                    raise ValueError("source and sink edges must be forward")

    @property
    def augmented(self) -> bool:
        return self.source is not None and self.sink is not None

    def is_terminal(self, v) -> bool:
        return v == self.source or v == self.sink

    @property
    def inner_vertices(self) -> tuple:
        return tuple(v for v in self.vertices if not self.is_terminal(v))

    @property
    def inner_edges(self) -> tuple:
        return tuple(e for e in self.edges if not (self.is_terminal(e.tail) or self.is_terminal(e.head)))

    def edge_shapes(self) -> list:
        return sorted((e.tail, e.head, e.orientation.value) for e in self.edges)

    def inner_edge_set(self) -> frozenset:
        return frozenset(e.shape() for e in self.inner_edges)

    def is_simple(self) -> bool:
        pairs = [frozenset((e.tail, e.head)) for e in self.edges]
        return len(pairs) == len(set(pairs))

    def name(self, v) -> str:
        if v == self.source:
            return "s"
        if v == self.sink:
            return "t"
        return str(v)

    def to_json(self) -> dict:
        return {
            "vertices": [self.name(v) if self.is_terminal(v) else v for v in self.vertices],
            "edges": [
                {
                    "tail": self.name(e.tail) if self.is_terminal(e.tail) else e.tail,
                    "head": self.name(e.head) if self.is_terminal(e.head) else e.head,
                    "dir": e.orientation.value,
                    "label": e.label,
                }
                for e in self.edges
            ],
            "ids": {"s": self.source, "t": self.sink},
        }

    @classmethod
    def from_json(cls, data) -> "MixedGraph":
        if isinstance(data, str):
            data = json.loads(data)
        ids = data.get("ids") or {}
        s_id, t_id = ids.get("s"), ids.get("t")
        inner = [v for v in data["vertices"] if v not in ("s", "t")]
        if "s" in data["vertices"] and s_id is None:
            s_id = 0
        if "t" in data["vertices"] and t_id is None:
            t_id = max(inner, default=0) + 1
        lookup = {"s": s_id, "t": t_id}

        def vid(v):
            return lookup[v] if v in ("s", "t") else int(v)

        vertices = tuple(vid(v) for v in data["vertices"])
        edges = tuple(
            Edge(vid(d["tail"]), vid(d["head"]), Orientation(d["dir"]), d.get("label"))
            for d in data["edges"]
        )
        return cls(vertices, edges, s_id, t_id)

    def to_dot(self, name: str = "G") -> str:
        dirs = {F: "forward", B: "back", BI: "both"}
        edges = []
        for e in self.edges:
            attrs = {"dir": dirs[e.orientation]}
            if e.label:
                attrs["label"] = e.label
            if self.is_terminal(e.tail) or self.is_terminal(e.head):
                attrs["style"] = "dashed"
            edges.append((self.name(e.tail), self.name(e.head), attrs))
        return dot.render_digraph(name, [self.name(v) for v in self.vertices], edges)


def _valleys_between(p: IndexedPath, start: int, stop: int):
    """Indices k of valleys E_k N_k lying inside letter positions start..stop."""
    letters = p.letters
    for t in range(start, stop):
        (s1, k1), (s2, _) = letters[t], letters[t + 1]
        if s1 == E and s2 == N:
            yield k1


def nu_graph(p: IndexedPath) -> MixedGraph:
    edges = []
    for ps, (si, i) in enumerate(p.letters):
        if si != E:
            continue
        for pt in range(ps + 1, len(p.letters)):
            sj, j = p.letters[pt]
            if sj != N or j == i:
                continue
            if all(k in (i, j) for k in _valleys_between(p, ps, pt)):
                edges.append(Edge(i, j, F))
    g = MixedGraph(tuple(range(1, p.n + 1)), tuple(sorted(edges)))
    assert g.is_simple()
    return g


def bidirectional_nu_graph(p: IndexedPath) -> MixedGraph:
    V = set(p.V)
    g = nu_graph(p)
    edges = [replace(e, orientation=BI) if e.tail in V and e.head in V else e for e in g.edges]
    return replace(g, edges=tuple(edges))


def bidirectional_path(p: IndexedPath) -> list:
    """Vertex-pair edges (v_k, v_{k+1}) of the bidirectional path, k = 1..w-1."""
    return [(p.V[k], p.V[k + 1]) for k in range(p.w - 1)]


def cycle_edges(p: IndexedPath) -> list:
    """Edges e_1..e_w of the cycle graph on the valleys.

    ``e_k = (v_k, v_{k+1}, +)`` for k < w and ``e_w = (v_1, v_w, -)``, which
    carries flow from v_w back to v_1.  A single valley has no cycle edges.
    """
    V = p.V
    if len(V) < 2:
        return []
    out = [Edge(V[k], V[k + 1], F) for k in range(len(V) - 1)]
    out.append(Edge(V[0], V[-1], B))
    return out


def cell_graph(p: IndexedPath, i: int) -> MixedGraph:
    """The graph G(nu, i): the bidirectional path replaced by the cycle
    graph without its i-th edge."""
    if not 1 <= i <= p.w:
        raise ValueError(f"cell index must lie in 1..{p.w}, got {i}")
    gb = bidirectional_nu_graph(p)
    kept = [e for e in gb.edges if e.orientation is not BI]
    cyc = [e for k, e in enumerate(cycle_edges(p), start=1) if k != i]
    return replace(gb, edges=tuple(sorted(kept + cyc)))


def intersect_cell_graphs(p: IndexedPath, S: Iterable[int]) -> MixedGraph:
    S = sorted(set(S))
    if not S:
        raise ValueError("S must be nonempty")
    graphs = [cell_graph(p, i) for i in S]
    common = set.intersection(*(set(g.edges) for g in graphs))
    return replace(graphs[0], edges=tuple(sorted(common)))


def _source_sink_edges(p: IndexedPath):
    s, t = 0, p.n + 1
    src = [Edge(s, i, F, f"{E}{i}") for i in p.I]
    snk = [Edge(j, t, F, f"{N}{j}") for j in p.J]
    return src, snk


def partial_augment(g: MixedGraph, p: IndexedPath) -> MixedGraph:
    """Add s, t, source edges (s, i) for i in I and sink edges (j, t) for j in J."""
    src, snk = _source_sink_edges(p)
    s, t = 0, p.n + 1
    return MixedGraph((s,) + tuple(g.vertices) + (t,), tuple(src) + tuple(g.edges) + tuple(snk), s, t)


def full_augment(g: MixedGraph) -> MixedGraph:
    inner = tuple(g.vertices)
    s, t = 0, max(inner) + 1
    src = [Edge(s, i, F) for i in inner]
    snk = [Edge(i, t, F) for i in inner]
    return MixedGraph((s,) + inner + (t,), tuple(src) + tuple(g.edges) + tuple(snk), s, t)


def _flow_ends(e: Edge) -> list:
    return [(u, v) for u, v, _ in e.traversals()]


def _is_idle(g: MixedGraph, e: Edge) -> bool:
    if e.orientation is BI:
        return False
    ((u, v),) = _flow_ends(e)
    leaving = sum(1 for f in g.edges for a, _ in _flow_ends(f) if a == u)
    entering = sum(1 for f in g.edges for _, b in _flow_ends(f) if b == v)
    return leaving == 1 or entering == 1


def contract_idle_edges(g: MixedGraph, bidirectional: bool = True) -> MixedGraph:
    """Contract inner edges that are idle (and, by default, bidirectional
    inner edges) until none remain.

    An edge is idle if it is the only edge leaving its flow tail or the only
    edge entering its flow head.  Only edges between inner vertices are
    contracted; the merged vertex keeps the smaller label.
    """
    while True:
        target = None
        for e in g.inner_edges:
            if (bidirectional and e.orientation is BI) or _is_idle(g, e):
                target = e
                break
        if target is None:
            return g
        keep, drop = min(target.tail, target.head), max(target.tail, target.head)
        edges = []
        removed = False
        for e in g.edges:
            if e == target and not removed:
                removed = True
                continue
            tail = keep if e.tail == drop else e.tail
            head = keep if e.head == drop else e.head
            edges.append(replace(e, tail=tail, head=head))
        vertices = tuple(v for v in g.vertices if v != drop)
        g = MixedGraph(vertices, tuple(edges), g.source, g.sink)


def reflect_backward_edge(g: MixedGraph, e: Edge) -> MixedGraph:
    """Turn the backward edge ``e`` into a forward edge pointing the way its
    flow travels; on the flow side this negates one coordinate."""
    if e.orientation is not B:
        raise ValueError(f"{e} is not a backward edge")
    if e not in g.edges:
        raise ValueError(f"{e} is not an edge of the graph")
    edges = list(g.edges)
    edges[edges.index(e)] = Edge(e.head, e.tail, F, e.label)
    return replace(g, edges=tuple(edges))


def reflect_backward_edges(g: MixedGraph) -> MixedGraph:
    for e in [e for e in g.edges if e.orientation is B]:
        g = reflect_backward_edge(g, e)
    return g


def relabel(g: MixedGraph, mapping: dict) -> MixedGraph:
    def m(v):
        return v if g.is_terminal(v) else mapping[v]

    vertices = tuple(sorted(m(v) for v in g.inner_vertices))
    if g.augmented:
        vertices = (g.source,) + vertices + (g.sink,)
    def lab(label):
        if label is None:
            return None
        return label[0] + str(mapping[int(label[1:])])

    edges = tuple(
        sorted(replace(e, tail=m(e.tail), head=m(e.head), label=lab(e.label)) for e in g.edges)
    )
    return MixedGraph(vertices, edges, g.source, g.sink)
