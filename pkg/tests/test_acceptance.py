"""Acceptance criteria, one test each, with their time budgets.

Each test prints a single PASS/FAIL line and records it for the
"acceptance criteria" section of the terminal summary.
"""

import functools
import itertools
import re
import time
from contextlib import contextmanager
from math import comb

import networkx as nx

from conftest import ACCEPTANCE_LINES, all_words, indexed
from nusubdiv._exact import rank
from nusubdiv.algebra import (
    BetaPoly,
    Lexicographic,
    Monomial,
    RhoLen,
    SeededRandom,
    monomial_of_graph,
    reduce_at,
    reduce_to_normal_form,
)
from nusubdiv.flow import check_flow, enumerate_routes, signed_vector
from nusubdiv.graph import bidirectional_nu_graph, nu_graph, partial_augment
from nusubdiv.path import cyclic_shift, nu_catalan, strip
from nusubdiv.tamari import enumerate_cyclic_ij_trees, increasing_flip_covers, monomial_to_tree
from nusubdiv.triangulate import (
    build_p_nu,
    cells_from_signs,
    dual_graph,
    reduce_p_nu,
    separation_violations,
    simplex_subdivision,
    triangulation_from_reduced,
    verify_cover,
    verify_unimodular,
)

MAX_SIZE = 8
RANDOM_SEEDS = (0, 1, 2, 3, 4)
PROBES = 1000

# displays transcribed from the worked examples, in their written generator order
WORKED_P_NU = (
    "x_{23}x_{34}x_{41} + x_{41}x_{13}x_{23} + x_{13}x_{23}x_{34} + x_{23}x_{41}\\beta"
    " + x_{23}x_{34}\\beta + x_{13}x_{23}\\beta + x_{23}\\beta^2"
)
WORKED_REDUCED = (
    "x_{23}x_{24}x_{21} + x_{23}x_{21}x_{41} + x_{24}x_{34}x_{21} + x_{21}x_{34}x_{31} + x_{21}x_{31}x_{41}"
    " + x_{13}x_{23}x_{43} + x_{23}x_{41}x_{43} + x_{13}x_{14}x_{23} + x_{14}x_{23}x_{24} + x_{14}x_{24}x_{34}"
)
SMALL_START = "x_{12}x_{24}x_{52} + x_{12}x_{24}\\beta"
SMALL_REDUCED = (
    "x_{12}x_{14}x_{52} + x_{14}x_{52}x_{54} + x_{14}x_{24}x_{54} + x_{14}x_{54}\\beta + x_{14}x_{52}\\beta"
)


def parse_display(text):
    """A sum of terms like x_{23}x_{41}\\beta^2 as a BetaPoly."""
    terms = {}
    for term in text.split(" + "):
        gens = tuple((int(m[0]), int(m[1])) for m in re.findall(r"x_\{(\d)(\d)\}", term))
        beta = re.search(r"\\beta(?:\^(\d+))?", term)
        e = 0 if beta is None else int(beta.group(1) or 1)
        key = (Monomial(gens), e)
        terms[key] = terms.get(key, 0) + 1
    return BetaPoly(terms)


def canonical(poly):
    """Sorted canonical rendering of every term, for byte comparison."""
    return sorted(f"{c}*{m}*beta^{e}" for (m, e), c in poly.items())


@contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    detail = {}
    try:
        yield detail
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        line = f"criterion {number} [{title}]: FAIL ({elapsed:.1f}s) {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < budget
    extra = ", ".join(f"{k}={v}" for k, v in detail.items())
    line = f"criterion {number} [{title}]: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s of {budget}s){' ' + extra if extra else ''}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, f"criterion {number} exceeded its {budget}s budget: {elapsed:.1f}s"


def orders():
    return [("rho-len", RhoLen())] + [(f"random-{s}", SeededRandom(s)) for s in RANDOM_SEEDS]


@functools.lru_cache(maxsize=None)
def triangulations():
    """word -> [(order name, reduced polynomial)] for every path up to MAX_SIZE."""
    out = {}
    for word in all_words(MAX_SIZE):
        p = indexed(word)
        out[word] = [(name, reduce_p_nu(p, order, simple=True).poly) for name, order in orders()]
    return out


def test_criterion_1_worked_example():
    with criterion(1, "worked example P_nu and its ten monomials", 1.0) as info:
        p = indexed("NEENE")
        assert canonical(build_p_nu(p)) == canonical(parse_display(WORKED_P_NU))
        reduced = reduce_p_nu(p, RhoLen(), simple=True).poly
        assert canonical(reduced) == canonical(parse_display(WORKED_REDUCED))
        info["facets"] = len(reduced)


def test_criterion_2_small_reduction():
    with criterion(2, "rewriting of x12 x24 x52", 1.0) as info:
        start = parse_display(SMALL_START)
        expected = parse_display(SMALL_REDUCED)
        # the displayed steps act on the degree-three term
        head = BetaPoly.from_monomial(Monomial.parse("x12*x24*x52"))
        head = reduce_at(reduce_at(head, (1, 2, 4)), (5, 2, 4))
        assert head.is_reduced()
        assert canonical(head) == canonical(expected)
        # on the whole polynomial the first step also rewrites the beta term,
        # contributing x12 x14 beta + x14 x24 beta + x14 beta^2 beyond the display
        whole = reduce_at(reduce_at(start, (1, 2, 4)), (5, 2, 4))
        tail = parse_display("x_{12}x_{14}\\beta + x_{14}x_{24}\\beta + x_{14}\\beta^2")
        assert whole.is_reduced()
        assert canonical(whole) == canonical(expected + tail)
        info["terms"] = len(head)


def test_criterion_3_facet_counts():
    with criterion(3, "facet count C(a+b,a) and cyclic-shift volumes", 300.0) as info:
        checked = 0
        for word, reductions in triangulations().items():
            p = indexed(word)
            a, b = word.count("E"), word.count("N")
            for name, poly in reductions:
                assert len(poly.top_degree_terms()) == comb(a + b, a), (word, name)
                checked += 1
            assert sum(nu_catalan(strip(cyclic_shift(p, k))) for k in range(1, p.w + 1)) == comb(a + b, a), word
        info["paths"] = len(triangulations())
        info["reductions"] = checked


def test_criterion_4_degree_profiles():
    with criterion(4, "degree profile independent of reduction order", 120.0) as info:
        for word in all_words(7):
            p = indexed(word)
            start = BetaPoly.from_monomial(monomial_of_graph(nu_graph(p)))
            profiles = set()
            for order in [RhoLen(), Lexicographic()] + [SeededRandom(s) for s in range(10)]:
                red = reduce_to_normal_form(start, order, p.n, simple=False).poly
                profiles.add(tuple(sorted(red.degree_profile().items())))
            assert len(profiles) == 1, (word, profiles)
        info["paths"] = len(all_words(7))
        info["orders"] = 12


def test_criterion_5_tamari_correspondence():
    with criterion(5, "facets are the cyclic (I,J)-trees, dual graph is the Hasse diagram", 300.0) as info:
        edges = 0
        for word, reductions in triangulations().items():
            p = indexed(word)
            t = triangulation_from_reduced(dict(reductions)["rho-len"], p)
            trees = enumerate_cyclic_ij_trees(p)
            images = [monomial_to_tree(f.mono, p) for f in t.facets]
            assert set(images) == set(trees), word
            covers = increasing_flip_covers(trees)
            dual = nx.Graph()
            dual.add_nodes_from(range(len(images)))
            dual.add_edges_from(dual_graph(t))
            hasse = nx.Graph()
            hasse.add_nodes_from(trees)
            hasse.add_edges_from(covers)
            assert nx.is_isomorphic(dual, hasse), word
            # the tree map is itself an isomorphism
            assert {frozenset((images[a], images[b])) for a, b in dual.edges} == {frozenset(c) for c in covers}, word
            edges += len(covers)
        info["paths"] = len(triangulations())
        info["hasse_edges"] = edges


def test_criterion_6_geometry():
    triangulations()  # reductions are timed under criterion 3
    with criterion(6, "unimodular facets, cover and disjoint interiors", 600.0) as info:
        facets = probes = 0
        for word, reductions in triangulations().items():
            p = indexed(word)
            for k, (name, poly) in enumerate(reductions):
                t = triangulation_from_reduced(poly, p)
                for f in t.facets:
                    assert verify_unimodular(f, p), (word, name, str(f.mono))
                rep = verify_cover(t, PROBES, seed=k)
                assert rep.ok, (word, name, rep.to_json())
                facets += len(t.facets)
                probes += PROBES
        info["facets"] = facets
        info["probes"] = probes


def test_criterion_7_cells():
    with criterion(7, "cells, their intersections and separating functionals", 120.0) as info:
        faces = 0
        for word in all_words(MAX_SIZE):
            p = indexed(word)
            sub = simplex_subdivision(p)
            by_sign = cells_from_signs(p)
            assert sub.cells == by_sign, word
            for S, verts in sub.faces.items():
                assert verts == frozenset.intersection(*(by_sign[i] for i in S)), (word, S)
                faces += 1
            assert separation_violations(p) == [], word
        info["faces"] = faces


def test_criterion_8_flow_vertices():
    with criterion(8, "route vectors of the bidirectional graph", 60.0) as info:
        routes = 0
        for word in all_words(6):
            p = indexed(word)
            g = partial_augment(bidirectional_nu_graph(p), p)
            vecs = [signed_vector(r, g) for r in enumerate_routes(g)]
            assert len(vecs) == len(p.I) * len(p.J), word
            assert all(check_flow(v, g) for v in vecs), word
            assert len(set(vecs)) == len(vecs), word
            for x, y, z in itertools.combinations(vecs, 3):
                assert rank([[b - a for a, b in zip(x, y)], [c - a for a, c in zip(x, z)]]) == 2, word
            routes += len(vecs)
        info["routes"] = routes

