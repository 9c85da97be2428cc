"""From P_nu to certified triangulations of the product of two simplices.

Points of the product Delta_I x Delta_J are pairs of probability vectors
indexed by I and J.  The vertex ``(i, j)`` is (e_i, e_j); a generator x_ij
of a reduced monomial names that vertex, and the cone points are (e_k, e_k)
for the valleys k.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

import numpy as np

from . import _exact, dot
from .algebra import BetaPoly, Monomial, RhoLen, monomial_of_graph, reduce_to_normal_form
from .flow import enumerate_routes, route_arc
from .graph import BI, bidirectional_nu_graph, cell_graph, intersect_cell_graphs, partial_augment
from .path import IndexedPath, canonical_index, cyclic_shift, nu_catalan, strip


class DegenerateSimplexError(ValueError):
    pass


class NotReducedError(ValueError):
    pass


class TriangulationFormatError(ValueError):
    def __init__(self, field_name: str, reason: str):
        super().__init__(f"{field_name}: {reason}")
        self.field = field_name
        self.reason = reason

    def to_json(self) -> dict:
        return {"error": "invalid triangulation", "field": self.field, "reason": self.reason}


def nonempty_subsets(w: int):
    for r in range(1, w + 1):
        yield from itertools.combinations(range(1, w + 1), r)


def build_p_nu(p: IndexedPath) -> BetaPoly:
    """Sum over nonempty S of beta^(|S|-1) times the monomial of the
    intersection of the cell graphs indexed by S."""
    terms = {}
    for S in nonempty_subsets(p.w):
        m = monomial_of_graph(intersect_cell_graphs(p, S))
        key = (m, len(S) - 1)
        terms[key] = terms.get(key, 0) + 1
    return BetaPoly(terms)


# --- the simplex-subdivision ---------------------------------------------


@dataclass
class SimplexSubdivision:
    """Vertex sets, as arcs (i, j), of every face indexed by a nonempty S."""

    p: IndexedPath
    faces: dict = field(default_factory=dict)

    @property
    def cells(self) -> dict:
        return {S[0]: arcs for S, arcs in self.faces.items() if len(S) == 1}

    def dual_is_simplex(self) -> bool:
        return all(len(arcs) > 0 for arcs in self.faces.values())


def face_arcs(p: IndexedPath, S) -> frozenset:
    g = partial_augment(intersect_cell_graphs(p, S), p)
    return frozenset(route_arc(r) for r in enumerate_routes(g))


def simplex_subdivision(p: IndexedPath) -> SimplexSubdivision:
    return SimplexSubdivision(p, {S: face_arcs(p, S) for S in nonempty_subsets(p.w)})


def _bidirectional_coordinates(g, p: IndexedPath) -> dict:
    """k -> position in g.edges of the bidirectional edge (v_k, v_{k+1})."""
    pos = {}
    for idx, e in enumerate(g.edges):
        if e.orientation is BI:
            k = p.V.index(e.tail) + 1
            if p.V[k] != e.head:
                raise AssertionError(f"bidirectional edge {e} skips a valley")
            pos[k] = idx
    return pos


def _in_cell(signs_on_path: dict, i: int, w: int) -> bool:
    backward = any(s < 0 for s in signs_on_path.values())
    if i == w:
        return not backward
    x = signs_on_path.get(i, 0)
    return x != 1 and (not backward or x == -1)


def signed_routes(p: IndexedPath):
    """Routes of the partially augmented bidirectional graph with the sign
    each one puts on the bidirectional edges e_1..e_{w-1}."""
    g = partial_augment(bidirectional_nu_graph(p), p)
    coord = _bidirectional_coordinates(g, p)
    out = []
    for r in enumerate_routes(g):
        used = dict(zip(r.edge_ids, r.signs))
        out.append((r, {k: used.get(idx, 0) for k, idx in coord.items()}))
    return out


def cells_from_signs(p: IndexedPath) -> dict:
    """Cell vertex sets read off the bidirectional graph directly.

    For i < w the edge e_i may only be used backward, and a route using any
    backward step must use e_i backward; cell w keeps the forward-only
    routes.
    """
    routes = signed_routes(p)
    return {
        i: frozenset(route_arc(r) for r, sg in routes if _in_cell(sg, i, p.w)) for i in range(1, p.w + 1)
    }


def separation_violations(p: IndexedPath) -> list:
    """Check that each pair of cells lies on opposite sides of its
    separating functional.

    For i, j < w the functional is x_{e_i} - x_{e_j}, nonpositive on cell i;
    for the pair (w, j) it is x_{e_j}, nonnegative on cell w.
    """
    routes = signed_routes(p)
    w = p.w
    bad = []
    for i, j in itertools.permutations(range(1, w + 1), 2):
        if i == w:
            f = lambda sg: -sg[j]  # noqa: E731
        elif j == w:
            continue
        else:
            f = lambda sg: sg[i] - sg[j]  # noqa: E731
        for r, sg in routes:
            val = f(sg)
            if _in_cell(sg, i, w) and val > 0:
                bad.append({"cells": [i, j], "route": route_arc(r), "value": val, "side": i})
            if _in_cell(sg, j, w) and val < 0:
                bad.append({"cells": [i, j], "route": route_arc(r), "value": val, "side": j})
    return bad


# --- simplices and triangulations ----------------------------------------


@dataclass(frozen=True)
class Simplex:
    vertices: tuple
    mono: Monomial
    beta: int = 0

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


def _chart(p: IndexedPath, v) -> list:
    """Lattice chart of the product: drop the last coordinate of each factor."""
    i, j = v
    return [1 if i == k else 0 for k in p.I[:-1]] + [1 if j == k else 0 for k in p.J[:-1]]


def simplex_of(m: Monomial, beta: int, p: IndexedPath) -> Simplex:
    I, J = set(p.I), set(p.J)
    for i, j in m.gens:
        if i not in I or j not in J:
            raise ValueError(f"generator x_{i}{j} is not a vertex (e_i, e_j) of the product")
    cone = tuple((k, k) for k in p.V)
    return Simplex(tuple(sorted(set(m.gens) | set(cone))), m, beta)


@dataclass
class Triangulation:
    p: IndexedPath
    facets: list
    faces: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def cone_points(self) -> tuple:
        return tuple((k, k) for k in self.p.V)

    def dual_edges(self) -> list:
        return dual_graph(self)

    def to_json(self) -> dict:
        return {
            "path": self.p.word,
            "facets": [{"mono": [list(g) for g in f.mono.gens], "vertices": [list(v) for v in f.vertices]} for f in self.facets],
            "cone_points": [list(c) for c in self.cone_points],
            "dual_edges": [list(e) for e in self.dual_edges()],
            "faces": [{"mono": [list(g) for g in f.mono.gens], "beta": f.beta} for f in self.faces],
            **({"meta": self.meta} if self.meta else {}),
        }

    @classmethod
    def from_json(cls, data) -> "Triangulation":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise TriangulationFormatError("document", f"not JSON ({exc.msg})") from None
        if not isinstance(data, dict):
            raise TriangulationFormatError("document", "expected a JSON object")
        for key in ("path", "facets", "cone_points"):
            if key not in data:
                raise TriangulationFormatError(key, "missing")
        try:
            p = canonical_index(data["path"])
        except (ValueError, TypeError) as exc:
            raise TriangulationFormatError("path", str(exc)) from None
        expected_cone = [[k, k] for k in p.V]
        if data["cone_points"] != expected_cone:
            raise TriangulationFormatError("cone_points", f"expected {expected_cone}")
        facets = []
        for n, f in enumerate(data["facets"]):
            where = f"facets[{n}]"
            try:
                m = Monomial(tuple(tuple(g) for g in f["mono"]))
                s = simplex_of(m, 0, p)
            except (KeyError, TypeError, ValueError) as exc:
                raise TriangulationFormatError(where, str(exc)) from None
            if "vertices" in f and sorted(tuple(v) for v in f["vertices"]) != list(s.vertices):
                raise TriangulationFormatError(where, "vertices disagree with the monomial and cone points")
            if len(s.vertices) != p.a + p.b + 1:
                raise TriangulationFormatError(where, f"has {len(s.vertices)} vertices, expected {p.a + p.b + 1}")
            facets.append(s)
        faces = []
        for n, f in enumerate(data.get("faces", [])):
            try:
                faces.append(simplex_of(Monomial(tuple(tuple(g) for g in f["mono"])), int(f["beta"]), p))
            except (KeyError, TypeError, ValueError) as exc:
                raise TriangulationFormatError(f"faces[{n}]", str(exc)) from None
        t = cls(p, facets, faces, data.get("meta", {}))
        if "dual_edges" in data and [list(e) for e in t.dual_edges()] != data["dual_edges"]:
            raise TriangulationFormatError("dual_edges", "do not match the facets")
        return t

    def to_dot(self, name: str = "dual") -> str:
        nodes = [f"F{k}" for k in range(len(self.facets))]
        attrs = {f"F{k}": {"label": str(f.mono)} for k, f in enumerate(self.facets)}
        edges = [(f"F{a}", f"F{b}", {}) for a, b in self.dual_edges()]
        return dot.render_digraph(name, nodes, edges, attrs, directed=False)


def triangulation_from_reduced(r: BetaPoly, p: IndexedPath, meta: Optional[dict] = None) -> Triangulation:
    """Top-degree terms become facets, the remaining terms inner faces."""
    if not r.is_reduced():
        raise NotReducedError("polynomial still has reducible pairs")
    d = r.max_degree()
    facets, faces = [], []
    for (m, e), c in r.items():
        if c != 1:
            raise ValueError(f"coefficient {c} on {m}; expected 1")
        s = simplex_of(m, e, p)
        (facets if m.degree == d and e == 0 else faces).append(s)
    return Triangulation(p, facets, faces, meta or {})


def dual_graph(t: Triangulation) -> list:
    """Pairs of facet positions whose monomials differ in a single generator."""
    gens = [set(f.mono.gens) for f in t.facets]
    out = []
    for a, b in itertools.combinations(range(len(gens)), 2):
        if len(gens[a]) == len(gens[b]) and len(gens[a] - gens[b]) == 1:
            out.append((a, b))
    return out


def reduce_p_nu(p: IndexedPath, order=None, simple: bool = True, max_steps: int = 100_000):
    order = order or RhoLen()
    P = build_p_nu(p)
    if simple:
        P = P.at_beta_zero()
    return reduce_to_normal_form(P, order, p.n, simple=simple, max_steps=max_steps)


def triangulate(p: IndexedPath, order=None, simple: bool = True) -> Triangulation:
    order = order or RhoLen()
    red = reduce_p_nu(p, order, simple)
    return triangulation_from_reduced(red.poly, p, order.describe())


# --- certification -------------------------------------------------------


def verify_unimodular(s: Simplex, p: IndexedPath) -> bool:
    """Exact determinant test in the lattice chart of the product."""
    if len(s.vertices) != p.a + p.b + 1:
        raise DegenerateSimplexError(f"{len(s.vertices)} vertices; a full simplex has {p.a + p.b + 1}")
    if len(set(s.vertices)) != len(s.vertices):
        raise DegenerateSimplexError("repeated vertex")
    pts = [_chart(p, v) for v in s.vertices]
    base = pts[0]
    rows = [[x - y for x, y in zip(q, base)] for q in pts[1:]]
    det = _exact.bareiss_det(rows)
    if det == 0:
        raise DegenerateSimplexError(f"vertices {s.vertices} are affinely dependent")
    return abs(det) == 1


def face_is_independent(s: Simplex, p: IndexedPath) -> bool:
    pts = [_chart(p, v) for v in s.vertices]
    rows = [[x - y for x, y in zip(q, pts[0])] for q in pts[1:]]
    return _exact.rank(rows) == len(rows) if rows else True


def _nodes(p: IndexedPath) -> list:
    return [("E", i) for i in p.I] + [("N", j) for j in p.J]


def peeling_order(s: Simplex, p: IndexedPath) -> list:
    """Leaf-elimination schedule for the transportation system of a facet.

    The vertices (i, j) of a full unimodular simplex form a spanning tree of
    the bipartite graph on I and J.  Each step ``(vertex_pos, leaf, other)``
    fixes one barycentric coordinate from the residual mass at a leaf.
    """
    nodes = _nodes(p)
    idx = {v: k for k, v in enumerate(nodes)}
    edges = [(idx[("E", i)], idx[("N", j)]) for i, j in s.vertices]
    if len(edges) != len(nodes) - 1:
        raise DegenerateSimplexError("vertex count does not match a spanning tree")
    incident = {k: set() for k in range(len(nodes))}
    for e, (u, v) in enumerate(edges):
        incident[u].add(e)
        incident[v].add(e)
    order = []
    alive = set(range(len(edges)))
    while alive:
        leaf = next((u for u in sorted(incident) if len(incident[u]) == 1), None)
        if leaf is None:
            raise DegenerateSimplexError(f"vertices {s.vertices} contain a cycle")
        (e,) = incident[leaf]
        u, v = edges[e]
        other = v if u == leaf else u
        order.append((e, leaf, other))
        incident[u].discard(e)
        incident[v].discard(e)
        alive.discard(e)
    return order


def _peel(order, n_vertices: int, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    R = np.concatenate([X, Y], axis=1).astype(np.int64)
    lam = np.zeros((R.shape[0], n_vertices), dtype=np.int64)
    for e, leaf, other in order:
        lam[:, e] = R[:, leaf]
        R[:, other] -= R[:, leaf]
        R[:, leaf] = 0
    return lam


def barycentric_by_peeling(s: Simplex, p: IndexedPath, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Integer barycentric coordinates (scaled by each probe's denominator)
    of the probes ``(X/D, Y/D)`` with respect to ``s``, one row per probe."""
    return _peel(peeling_order(s, p), len(s.vertices), X, Y)


def incidence_matrix(s: Simplex, p: IndexedPath) -> np.ndarray:
    """Rows are the coordinates e_i (i in I) then e_j (j in J); column k is
    the vertex s.vertices[k]."""
    return np.array(
        [[1 if (kind == "E" and v[0] == k) or (kind == "N" and v[1] == k) else 0 for v in s.vertices] for kind, k in _nodes(p)],
        dtype=np.int64,
    )


def barycentric_by_elimination(s: Simplex, p: IndexedPath, x, y) -> Optional[list]:
    """Barycentric coordinates from a rational Gaussian solve."""
    return _exact.solve(incidence_matrix(s, p).tolist(), list(x) + list(y))


def probe_points(p: IndexedPath, trials: int, seed: int, max_weight: int = 4):
    """Rational probes: random integer weights on the vertices (e_i, e_j),
    returned as integer marginals X, Y and their common sum D per probe.

    The first probe is the barycenter of the whole product.
    """
    rng = np.random.default_rng(seed)
    na, nb = len(p.I), len(p.J)
    W = rng.integers(0, max_weight + 1, size=(trials, na, nb))
    W[0] = 1
    empty = W.sum(axis=(1, 2)) == 0
    W[empty, 0, 0] = 1
    X = W.sum(axis=2)
    Y = W.sum(axis=1)
    D = W.sum(axis=(1, 2))
    return X, Y, D


@dataclass
class CoverReport:
    trials: int
    facets: int
    uncovered: list = field(default_factory=list)
    overlapping: list = field(default_factory=list)
    mismatches: list = field(default_factory=list)
    own_barycenters_ok: bool = True

    @property
    def ok(self) -> bool:
        return not (self.uncovered or self.overlapping or self.mismatches) and self.own_barycenters_ok

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "facets": self.facets,
            "uncovered": self.uncovered,
            "overlapping": self.overlapping,
            "mismatches": self.mismatches,
            "own_barycenters_ok": self.own_barycenters_ok,
            "ok": self.ok,
        }


def _facet_barycenter(s: Simplex, p: IndexedPath):
    X = np.array([[sum(1 for v in s.vertices if v[0] == i) for i in p.I]])
    Y = np.array([[sum(1 for v in s.vertices if v[1] == j) for j in p.J]])
    return X, Y


def verify_cover(t: Triangulation, trials: int = 1000, seed: int = 0, cross_check: int = 1) -> CoverReport:
    """Probe the product with exact rational points.

    Every probe must lie in at least one facet and in the interior of at
    most one.  Peeled coordinates are substituted back into the linear
    system for every probe, and the first ``cross_check`` probes are also
    re-solved by Gaussian elimination over Q.  Each facet's own barycenter
    must be interior to that facet only.
    """
    p = t.p
    X, Y, D = probe_points(p, trials, seed)
    target = np.concatenate([X, Y], axis=1)
    contain = np.zeros(trials, dtype=np.int64)
    interior = np.zeros(trials, dtype=np.int64)
    rep = CoverReport(trials, len(t.facets))
    orders = [peeling_order(f, p) for f in t.facets]
    for f, order in zip(t.facets, orders):
        lam = _peel(order, len(f.vertices), X, Y)
        contain += np.all(lam >= 0, axis=1)
        interior += np.all(lam > 0, axis=1)
        bad_rows = np.nonzero(np.any(lam @ incidence_matrix(f, p).T != target, axis=1))[0]
        for k in bad_rows:
            rep.mismatches.append({"facet": str(f.mono), "probe": int(k), "check": "substitution"})
        for k in range(min(cross_check, trials)):
            x = [Fraction(int(v), int(D[k])) for v in X[k]]
            y = [Fraction(int(v), int(D[k])) for v in Y[k]]
            if barycentric_by_elimination(f, p, x, y) != [Fraction(int(v), int(D[k])) for v in lam[k]]:
                rep.mismatches.append({"facet": str(f.mono), "probe": k, "check": "elimination"})
    for k in np.nonzero(contain == 0)[0]:
        rep.uncovered.append(_probe_json(X, Y, D, k))
    for k in np.nonzero(interior > 1)[0]:
        rep.overlapping.append(_probe_json(X, Y, D, k))
    bary = [_facet_barycenter(f, p) for f in t.facets]
    BX = np.concatenate([b[0] for b in bary]) if bary else np.zeros((0, len(p.I)), dtype=np.int64)
    BY = np.concatenate([b[1] for b in bary]) if bary else np.zeros((0, len(p.J)), dtype=np.int64)
    inside = np.stack([np.all(_peel(o, len(f.vertices), BX, BY) > 0, axis=1) for f, o in zip(t.facets, orders)], axis=1) if bary else None
    if bary and not np.array_equal(inside, np.eye(len(t.facets), dtype=bool)):
        rep.own_barycenters_ok = False
    return rep


def _probe_json(X, Y, D, k) -> dict:
    return {"probe": int(k), "x": [int(v) for v in X[k]], "y": [int(v) for v in Y[k]], "denominator": int(D[k])}


@dataclass
class CellVolumeReport:
    counts: list
    expected: list
    total: int
    binomial: int

    @property
    def ok(self) -> bool:
        return self.counts == self.expected and self.total == self.binomial

    def to_json(self) -> dict:
        return {"counts": self.counts, "expected": self.expected, "total": self.total, "binomial": self.binomial, "ok": self.ok}


def verify_cell_volumes(p: IndexedPath, order=None) -> CellVolumeReport:
    """Triangulate each cell on its own and compare its facet count with the
    path count of the matching cyclic shift."""
    order = order or RhoLen()
    counts, expected = [], []
    for i in range(1, p.w + 1):
        m = monomial_of_graph(cell_graph(p, i))
        red = reduce_to_normal_form(BetaPoly.from_monomial(m), order, p.n, simple=True)
        counts.append(len(red.poly.top_degree_terms()))
        expected.append(nu_catalan(strip(cyclic_shift(p, i))))
    return CellVolumeReport(counts, expected, sum(counts), comb(p.a + p.b, p.a))


def check_faces(t: Triangulation) -> list:
    """Problems with the inner faces: wrong vertex count, dependence, a
    codimension that disagrees with the beta exponent, or not lying in a facet."""
    p = t.p
    problems = []
    full = p.a + p.b + 1
    facet_sets = [set(f.vertices) for f in t.facets]
    for s in t.faces:
        if len(s.vertices) != s.mono.degree + p.w:
            problems.append((str(s.mono), "vertex count"))
        if not face_is_independent(s, p):
            problems.append((str(s.mono), "affinely dependent"))
        if full - len(s.vertices) != s.beta:
            problems.append((str(s.mono), "codimension differs from beta exponent"))
        if not any(set(s.vertices) <= fs for fs in facet_sets):
            problems.append((str(s.mono), "not contained in a facet"))
    return problems
