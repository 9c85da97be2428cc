"""Per-path verification bundle shared by the CLI and the sweep script."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from . import tamari
from .algebra import BetaPoly, RhoLen, SeededRandom, monomial_of_graph, reduce_to_normal_form
from .flow import check_flow, enumerate_routes, route_arc, signed_vector
from .graph import bidirectional_nu_graph, nu_graph, partial_augment
from .path import IndexedPath, index_path, paths_up_to, strip
from .triangulate import (
    DegenerateSimplexError,
    Triangulation,
    build_p_nu,
    cells_from_signs,
    check_faces,
    dual_graph,
    separation_violations,
    simplex_subdivision,
    triangulate,
    verify_cell_volumes,
    verify_cover,
    verify_unimodular,
)


@dataclass
class Check:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class Report:
    path: str
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name, passed, **detail):
        self.checks.append(Check(name, bool(passed), detail))

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {"path": self.path, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}

    def to_text(self) -> str:
        lines = [f"path {self.path}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{'ok' if c.ok else 'FAIL'}] {c.name}" + ("" if c.ok else f" {c.detail}"))
        return "\n".join(lines) + "\n"


def check_triangulation(rep: Report, t: Triangulation, label: str, trials: int, seed: int):
    p = t.p
    rep.add(f"{label}: facet count", len(t.facets) == comb(p.a + p.b, p.a), facets=len(t.facets), expected=comb(p.a + p.b, p.a))
    try:
        uni = [verify_unimodular(f, p) for f in t.facets]
        rep.add(f"{label}: unimodular facets", all(uni), failing=[str(f.mono) for f, u in zip(t.facets, uni) if not u])
    except DegenerateSimplexError as exc:
        rep.add(f"{label}: unimodular facets", False, error=str(exc))
        return
    cov = verify_cover(t, trials, seed)
    rep.add(
        f"{label}: cover and disjoint interiors",
        cov.ok,
        uncovered=len(cov.uncovered),
        overlapping=len(cov.overlapping),
        mismatches=len(cov.mismatches),
        trials=trials,
    )


def route_checks(rep: Report, p: IndexedPath):
    g = partial_augment(bidirectional_nu_graph(p), p)
    routes = enumerate_routes(g)
    arcs_ = [route_arc(r) for r in routes]
    expected = {(i, j) for i in p.I for j in p.J}
    rep.add("routes: one per vertex of the product", len(routes) == len(expected) and set(arcs_) == expected, routes=len(routes))
    rep.add("routes: unit flows", all(check_flow(signed_vector(r, g), g) for r in routes))


def subdivision_checks(rep: Report, p: IndexedPath):
    sd = simplex_subdivision(p)
    by_sign = cells_from_signs(p)
    rep.add("cells: graph routes match sign filter", sd.cells == by_sign)
    mismatched = [list(S) for S, arcs in sd.faces.items() if frozenset.intersection(*(by_sign[i] for i in S)) != arcs]
    rep.add("cells: intersections match graph intersections", not mismatched, faces=mismatched)
    rep.add("cells: dual complex is a simplex", sd.dual_is_simplex())
    sep = separation_violations(p)
    rep.add("cells: separating functionals", not sep, violations=sep[:5])
    vol = verify_cell_volumes(p)
    rep.add("cells: volumes are path counts of the cyclic shifts", vol.ok, counts=vol.counts, expected=vol.expected)


def tamari_checks(rep: Report, p: IndexedPath, t: Triangulation):
    trees = tamari.enumerate_cyclic_ij_trees(p)
    image = {tamari.monomial_to_tree(f.mono, p) for f in t.facets}
    rep.add("tamari: facets are the cyclic (I,J)-trees", image == set(trees), trees=len(trees), facets=len(t.facets))
    covers = tamari.increasing_flip_covers(trees)
    hasse = {frozenset(c) for c in covers}
    dual = {frozenset((tamari.monomial_to_tree(t.facets[a].mono, p), tamari.monomial_to_tree(t.facets[b].mono, p))) for a, b in dual_graph(t)}
    rep.add("tamari: dual graph is the flip Hasse diagram", hasse == dual, hasse_edges=len(hasse), dual_edges=len(dual))


def degree_profile_checks(rep: Report, p: IndexedPath, seeds):
    m = monomial_of_graph(nu_graph(p))
    start = BetaPoly.from_monomial(m)
    profiles = {"rho-len": reduce_to_normal_form(start, RhoLen(), p.n).poly.degree_profile()}
    for s in seeds:
        profiles[f"random-{s}"] = reduce_to_normal_form(start, SeededRandom(s), p.n).poly.degree_profile()
    distinct = {tuple(sorted(v.items())) for v in profiles.values()}
    rep.add("algebra: degree profile independent of order", len(distinct) == 1, orders=len(profiles))


def verify_path(p: IndexedPath, trials: int = 1000, seed: int = 0, random_orders: int = 5, exhaustive: bool = True) -> Report:
    rep = Report(strip(p).steps)
    P = build_p_nu(p)
    rep.add("P_nu: one term per nonempty valley subset", len(P) == 2**p.w - 1, terms=len(P))
    route_checks(rep, p)
    subdivision_checks(rep, p)
    t = triangulate(p)
    check_triangulation(rep, t, "rho-len", trials, seed)
    for s in range(random_orders):
        check_triangulation(rep, triangulate(p, SeededRandom(seed * 1000 + s)), f"random-{seed * 1000 + s}", min(trials, 200), seed)
    full = triangulate(p, simple=False)
    rep.add("faces: graded inner faces", not check_faces(full), problems=check_faces(full)[:5])
    if exhaustive:
        tamari_checks(rep, p, t)
        degree_profile_checks(rep, p, [seed * 1000 + s for s in range(10)])
    return rep


def verify_triangulation_file(t: Triangulation, trials: int, seed: int) -> Report:
    rep = Report(strip(t.p).steps)
    check_triangulation(rep, t, "supplied", trials, seed)
    return rep


def all_checks_for_sizes(max_size: int, **kw):
    for nu in paths_up_to(max_size):
        yield nu, verify_path(index_path(nu), **kw)

