"""``nu-subdiv``: command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 size guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import checks, tamari
from .algebra import BetaPoly, make_order, monomial_of_graph, reduce_to_normal_form
from .flow import enumerate_routes
from .graph import bidirectional_nu_graph, cell_graph, contract_idle_edges, intersect_cell_graphs, nu_graph, partial_augment
from .path import LatticePath, index_path, nu_catalan, parse_path, paths_up_to, strip
from .triangulate import Triangulation, TriangulationFormatError, build_p_nu, triangulation_from_reduced

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
CONSTRUCT_LIMIT = 12
EXHAUSTIVE_LIMIT = 8


class UsageError(Exception):
    pass


class GuardError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    path: str = ""
    order: str = "rho-len"
    length_variant: str = "span"
    seed: Optional[int] = None
    beta: str = "full"
    format: str = "json"
    out: Optional[str] = None
    trials: int = 1000
    force: bool = False
    kind: str = "nu"
    cell: Optional[int] = None
    cells: Optional[str] = None
    target: str = "p-nu"
    increasing: bool = False
    triangulation: Optional[str] = None
    max_size: int = 6
    random_orders: int = 5
    workers: int = 1

    @classmethod
    def from_args(cls, ns) -> "RunConfig":
        known = {k: v for k, v in vars(ns).items() if k in cls.__dataclass_fields__}
        return cls(**known)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _lattice(cfg: RunConfig) -> LatticePath:
    try:
        return parse_path(cfg.path)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _guard(nu: LatticePath, limit: int, cfg: RunConfig):
    if len(nu) > limit and not cfg.force:
        raise GuardError(f"a+b = {len(nu)} exceeds the limit {limit}; pass --force to override")


def _indexed(cfg: RunConfig, limit: int = CONSTRUCT_LIMIT):
    nu = _lattice(cfg)
    _guard(nu, limit, cfg)
    return index_path(nu)


def _order(cfg: RunConfig):
    if cfg.order == "random" and cfg.seed is None:
        raise UsageError("--order random needs --seed")
    return make_order(cfg.order, cfg.seed, cfg.length_variant)


def _only(cfg: RunConfig, *formats):
    if cfg.format not in formats:
        raise UsageError(f"{cfg.command} supports --format {', '.join(formats)}")


def cmd_index(cfg: RunConfig) -> tuple:
    p = _indexed(cfg)
    _only(cfg, "json", "text")
    if cfg.format == "text":
        peaks = " ".join(f"N{j}E{i}" for j, i in p.cyclic_peaks)
        text = (
            f"closed path: {p}\n"
            f"I = {list(p.I)}\nJ = {list(p.J)}\nV = {list(p.V)}\n"
            f"n = {p.n}, w = {p.w}\ncyclic peaks: {peaks}\n"
        )
        return EXIT_OK, text
    data = p.to_json()
    data.update({"word": p.word, "indexed": str(p), "n": p.n, "w": p.w, "cyclic_peaks": [list(c) for c in p.cyclic_peaks]})
    return EXIT_OK, _dump(data)


def _graph(cfg: RunConfig, p):
    if cfg.kind == "nu":
        g = nu_graph(p)
    elif cfg.kind == "bidirectional":
        g = bidirectional_nu_graph(p)
    elif cfg.kind == "cell":
        if cfg.cells:
            try:
                S = [int(x) for x in cfg.cells.split(",")]
            except ValueError:
                raise UsageError(f"--cells expects a comma separated list, got {cfg.cells!r}") from None
        else:
            S = [cfg.cell if cfg.cell is not None else p.w]
        try:
            g = intersect_cell_graphs(p, S) if len(S) > 1 else cell_graph(p, S[0])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        raise UsageError(f"unknown graph kind {cfg.kind!r}")
    return g


def cmd_graph(cfg: RunConfig) -> tuple:
    p = _indexed(cfg)
    g = partial_augment(_graph(cfg, p), p)
    _only(cfg, "json", "dot", "text")
    if cfg.format == "dot":
        return EXIT_OK, g.to_dot(f"{cfg.kind}")
    if cfg.format == "text":
        lines = [f"{g.name(e.tail)} -> {g.name(e.head)} [{e.orientation.value}]" + (f" {e.label}" if e.label else "") for e in g.edges]
        contracted = contract_idle_edges(g)
        lines.append(f"after contraction: {len(contracted.vertices)} vertices, {len(contracted.edges)} edges")
        return EXIT_OK, "\n".join(lines) + "\n"
    return EXIT_OK, _dump(g.to_json())


def cmd_routes(cfg: RunConfig) -> tuple:
    p = _indexed(cfg)
    if cfg.kind == "nu":
        cfg.kind = "bidirectional"
    g = partial_augment(_graph(cfg, p), p)
    routes = enumerate_routes(g)
    _only(cfg, "json", "text")
    if cfg.format == "text":
        lines = [" ".join(g.name(v) for v in r.vertices) + "  " + " ".join("+" if s > 0 else "-" for s in r.signs) for r in routes]
        return EXIT_OK, "\n".join(lines + [f"{len(routes)} routes"]) + "\n"
    return EXIT_OK, _dump({"graph": cfg.kind, "routes": [r.to_json(g) for r in routes]})


def _reduce(cfg: RunConfig, p):
    simple = cfg.beta == "0"
    if cfg.target == "p-nu":
        start = build_p_nu(p)
    elif cfg.target == "nu-graph":
        start = BetaPoly.from_monomial(monomial_of_graph(nu_graph(p)))
    else:
        raise UsageError(f"unknown reduction target {cfg.target!r}")
    if simple:
        start = start.at_beta_zero()
    order = _order(cfg)
    return reduce_to_normal_form(start, order, p.n, simple=simple), order


def cmd_reduce(cfg: RunConfig) -> tuple:
    p = _indexed(cfg)
    red, order = _reduce(cfg, p)
    _only(cfg, "json", "text")
    if cfg.format == "text":
        steps = "\n".join(f"  reduce at {t}" for t in red.steps)
        text = f"start: {red.start}\n{steps}\nreduced: {red.poly}\n"
        return EXIT_OK, text
    data = {"path": cfg.path, "order": order.describe(), "beta": cfg.beta, "start": red.start.to_json(), "steps": red.log(), "reduced": red.poly.to_json()}
    return EXIT_OK, _dump(data)


def cmd_triangulate(cfg: RunConfig) -> tuple:
    p = _indexed(cfg)
    red, order = _reduce(cfg, p)
    t = triangulation_from_reduced(red.poly, p, order.describe())
    _only(cfg, "json", "dot", "text")
    if cfg.format == "dot":
        return EXIT_OK, t.to_dot()
    if cfg.format == "text":
        lines = [f"{len(t.facets)} facets, {len(t.faces)} inner faces, cone points {list(t.cone_points)}"]
        lines += [f"  {f.mono}" for f in t.facets]
        lines.append(f"dual graph: {len(t.dual_edges())} edges")
        return EXIT_OK, "\n".join(lines) + "\n"
    return EXIT_OK, _dump(t.to_json())


def cmd_tamari(cfg: RunConfig) -> tuple:
    p = _indexed(cfg, EXHAUSTIVE_LIMIT)
    trees = tamari.enumerate_cyclic_ij_trees(p, cyclic=not cfg.increasing, max_size=EXHAUSTIVE_LIMIT if not cfg.force else 10**6)
    covers = tamari.increasing_flip_covers(trees)
    _only(cfg, "json", "dot", "text")
    if cfg.format == "dot":
        return EXIT_OK, tamari.hasse_to_dot(trees, covers)
    ranks = tamari.hasse_ranks(trees, covers)
    if cfg.format == "text":
        lines = [f"{len(trees)} trees, {len(covers)} covers"] + [f"  rank {ranks[t]}: {t}" for t in trees]
        return EXIT_OK, "\n".join(lines) + "\n"
    index = {t: k for k, t in enumerate(trees)}
    data = {
        "cyclic": not cfg.increasing,
        "trees": [t.to_json() for t in trees],
        "ranks": [ranks[t] for t in trees],
        "covers": [[index[a], index[b]] for a, b in covers],
    }
    if not cfg.increasing:
        data["maximal_arcs"] = [list(tamari.maximal_arc(t, p).as_pair()) for t in trees]
    return EXIT_OK, _dump(data)


def _render_report(cfg: RunConfig, rep) -> str:
    return rep.to_text() if cfg.format == "text" else _dump(rep.to_json())


def cmd_verify(cfg: RunConfig) -> tuple:
    _only(cfg, "json", "text")
    if cfg.triangulation:
        try:
            with open(cfg.triangulation) as fh:
                t = Triangulation.from_json(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.triangulation}: {exc.strerror}") from None
        except TriangulationFormatError as exc:
            return EXIT_FAIL, _dump(exc.to_json())
        rep = checks.verify_triangulation_file(t, cfg.trials, cfg.seed or 0)
        return (EXIT_OK if rep.ok else EXIT_FAIL), _render_report(cfg, rep)
    nu = _lattice(cfg)
    _guard(nu, CONSTRUCT_LIMIT, cfg)
    exhaustive = len(nu) <= EXHAUSTIVE_LIMIT or cfg.force
    rep = checks.verify_path(index_path(nu), cfg.trials, cfg.seed or 0, cfg.random_orders, exhaustive=exhaustive)
    return (EXIT_OK if rep.ok else EXIT_FAIL), _render_report(cfg, rep)


def cmd_sweep(cfg: RunConfig) -> tuple:
    if cfg.max_size > EXHAUSTIVE_LIMIT and not cfg.force:
        raise GuardError(f"--max-size {cfg.max_size} exceeds the limit {EXHAUSTIVE_LIMIT}; pass --force to override")
    _only(cfg, "json", "text")
    if cfg.workers < 1:
        raise UsageError("--workers must be at least 1")
    paths = list(paths_up_to(cfg.max_size))

    def run(nu):
        return checks.verify_path(index_path(nu), cfg.trials, cfg.seed or 0, cfg.random_orders)

    # map keeps input order, so the report does not depend on scheduling
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        reports = list(pool.map(run, paths))
    rows = [
        {"path": nu.steps, "a": nu.a, "b": nu.b, "cat": nu_catalan(nu), "ok": rep.ok, "failed": [c.name for c in rep.failures()]}
        for nu, rep in zip(paths, reports)
    ]
    ok = all(r["ok"] for r in rows)
    if cfg.format == "text":
        lines = [f"{r['path'] or '(empty)':<{cfg.max_size + 2}} {'ok' if r['ok'] else 'FAIL ' + ', '.join(r['failed'])}" for r in rows]
        lines.append(f"{sum(r['ok'] for r in rows)}/{len(rows)} paths pass")
        return (EXIT_OK if ok else EXIT_FAIL), "\n".join(lines) + "\n"
    return (EXIT_OK if ok else EXIT_FAIL), _dump({"max_size": cfg.max_size, "ok": ok, "paths": rows})


COMMANDS = {
    "index": cmd_index,
    "graph": cmd_graph,
    "routes": cmd_routes,
    "reduce": cmd_reduce,
    "triangulate": cmd_triangulate,
    "tamari": cmd_tamari,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "dot", "text"], default="json")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--force", action="store_true", help="ignore size guards")

    algebra = argparse.ArgumentParser(add_help=False)
    algebra.add_argument("--order", choices=["rho-len", "lex", "random"], default="rho-len")
    algebra.add_argument("--length-variant", choices=["span", "complement"], default="span")
    algebra.add_argument("--seed", type=int)
    algebra.add_argument("--beta", choices=["full", "0"], default="full")

    graphs = argparse.ArgumentParser(add_help=False)
    graphs.add_argument("--kind", choices=["nu", "bidirectional", "cell"], default="nu")
    graphs.add_argument("--cell", type=int, help="cell index i for --kind cell")
    graphs.add_argument("--cells", help="comma separated cell indices to intersect")

    parser = argparse.ArgumentParser(prog="nu-subdiv", description="Subdivisions of products of simplices from lattice paths.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, parents, help_):
        sp = sub.add_parser(name, parents=parents, help=help_)
        if name != "sweep":
            sp.add_argument("path", nargs="?" if name == "verify" else None, default="", help="lattice path over E and N")
        return sp

    add("index", [common], "canonical indexing of the closed path")
    add("graph", [common, graphs], "partially augmented graphs")
    add("routes", [common, graphs], "routes of a partially augmented graph")
    sp = add("reduce", [common, algebra], "reduce P_nu in the subdivision algebra")
    sp.add_argument("--target", choices=["p-nu", "nu-graph"], default="p-nu")
    sp = add("triangulate", [common, algebra], "triangulation from the reduced form")
    sp.add_argument("--target", choices=["p-nu", "nu-graph"], default="p-nu")
    sp = add("tamari", [common], "cyclic (I,J)-trees and the flip Hasse diagram")
    sp.add_argument("--increasing", action="store_true", help="only increasing arcs")
    sp = add("verify", [common], "run every check on a path, or certify a triangulation file")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--random-orders", type=int, default=5)
    sp.add_argument("--triangulation", help="JSON triangulation to certify instead of building one")
    sp = add("sweep", [common], "verify every path up to a size")
    sp.add_argument("--max-size", type=int, default=6)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--random-orders", type=int, default=2)
    sp.add_argument("--workers", type=int, default=1, help="verification threads; output order is fixed")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig.from_args(ns)
    try:
        code, text = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"nu-subdiv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardError as exc:
        print(f"nu-subdiv: resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
