import itertools
import json
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_words, indexed, lattice_paths
from nusubdiv.algebra import (
    BetaPoly,
    Lexicographic,
    LongestFirst,
    Monomial,
    RhoLen,
    SeededRandom,
    SquareFreeError,
    StepLimitError,
    edge_length,
    leaf_poly,
    make_order,
    monomial_of_graph,
    reduce_at,
    reduce_monomial,
    reduce_to_normal_form,
    reducible_triples,
    reduction_tree,
    rho_len_next,
)
from nusubdiv.graph import Edge, MixedGraph, bidirectional_nu_graph, nu_graph
from nusubdiv.path import index_path
from nusubdiv.tamari import Arc, cyclically_crosses
from nusubdiv.triangulate import build_p_nu, reduce_p_nu

P = Monomial.parse

WORKED_FACETS = {
    "x23*x24*x21", "x23*x21*x41", "x24*x34*x21", "x21*x34*x31", "x21*x31*x41",
    "x13*x23*x43", "x23*x41*x43", "x13*x14*x23", "x14*x23*x24", "x14*x24*x34",
}


def poly(*texts):
    return sum((BetaPoly.from_monomial(P(t)) for t in texts), BetaPoly())


@pytest.mark.parametrize(
    "text, gens",
    [("x13*x23", ((1, 3), (2, 3))), ("1", ()), ("", ()), ("x[10,3]*x21", ((2, 1), (10, 3)))],
)
def test_monomial_parse(text, gens):
    assert P(text).gens == gens


@pytest.mark.parametrize("text", ["x13*x31", "x41*x13*x23", "x[10,3]*x[3,12]", "1"])
def test_monomial_str_round_trip(text):
    assert P(str(P(text))) == P(text)


@pytest.mark.parametrize("bad", ["y12", "x1", "x123", "x[1,2"])
def test_monomial_parse_errors(bad):
    with pytest.raises(ValueError, match="cannot parse"):
        P(bad)


def test_monomial_validation():
    with pytest.raises(ValueError, match="not a generator"):
        Monomial.of((2, 2))
    with pytest.raises(SquareFreeError):
        Monomial.of((1, 2), (1, 2))


def test_monomial_of_graph_examples(neene):
    assert monomial_of_graph(nu_graph(neene)) == P("x13*x23*x34")
    backward = MixedGraph((1, 2, 3), (Edge(1, 3, "B"), Edge(2, 3)))
    assert monomial_of_graph(backward) == P("x31*x23")


def test_monomial_of_graph_errors(neene):
    with pytest.raises(ValueError, match="parallel"):
        monomial_of_graph(MixedGraph((1, 2), (Edge(1, 2), Edge(1, 2))))
    with pytest.raises(ValueError):
        monomial_of_graph(bidirectional_nu_graph(neene))


@pytest.mark.parametrize(
    "text, triples",
    [
        ("x13*x23*x34", [(1, 3, 4), (2, 3, 4)]),
        ("x13*x31", []),
        ("x12*x24*x52", [(1, 2, 4), (5, 2, 4)]),
        ("x41*x13*x23", [(4, 1, 3)]),
        ("x14*x24*x34", []),
    ],
)
def test_reducible_triples(text, triples):
    assert reducible_triples(P(text)) == triples


def test_reduce_monomial_successors():
    assert reduce_monomial(P("x12*x23"), (1, 2, 3)) == [(P("x12*x13"), 0), (P("x13*x23"), 0), (P("x13"), 1)]
    with pytest.raises(ValueError, match="not reducible"):
        reduce_monomial(P("x12*x34"), (1, 2, 3))


def test_square_free_violation():
    with pytest.raises(SquareFreeError):
        reduce_monomial(P("x12*x23*x13"), (1, 2, 3))


def test_small_worked_reduction():
    # x12 x24 x52: reduce (1,2,4), then (5,2,4) on the middle term
    p = reduce_at(poly("x12*x24*x52"), (1, 2, 4))
    assert p == BetaPoly({(P("x12*x14*x52"), 0): 1, (P("x14*x24*x52"), 0): 1, (P("x14*x52"), 1): 1})
    p = reduce_at(p, (5, 2, 4))
    expected = BetaPoly(
        {
            (P("x12*x14*x52"), 0): 1,
            (P("x14*x52*x54"), 0): 1,
            (P("x14*x24*x54"), 0): 1,
            (P("x14*x54"), 1): 1,
            (P("x14*x52"), 1): 1,
        }
    )
    assert p == expected and p.is_reduced()


def test_reduce_at_is_global():
    p = reduce_at(poly("x12*x23", "x12*x23*x45", "x34"), (1, 2, 3), simple=True)
    assert len(p) == 5
    assert p.coefficient(P("x34")) == 1


def test_reduce_at_rejects_bad_triple():
    with pytest.raises(ValueError):
        reduce_at(poly("x12"), (1, 2, 1))


def test_worked_example_polynomial(neene):
    P_nu = build_p_nu(neene)
    assert str(P_nu) == (
        "x13*x23*beta + x13*x23*x34 + x13*x23*x41 + x23*beta^2 + x23*x34*beta + x23*x34*x41 + x23*x41*beta"
    )


def test_worked_example_reduction_steps(neene):
    red = reduce_p_nu(neene, RhoLen(), simple=True)
    assert red.steps == [(4, 1, 3), (1, 3, 4), (2, 3, 4), (2, 4, 1), (3, 4, 1)]
    assert {m for m, _ in red.poly} == {P(t) for t in WORKED_FACETS}
    assert all(c == 1 and e == 0 for (_, e), c in red.poly.items())
    assert red.log()[0] == {"triple": [4, 1, 3], "rule": "simple"}


def test_complement_length_does_not_reproduce_worked_example(neene):
    # calibration: only the span reading of edge length reproduces the worked steps
    red = reduce_p_nu(neene, RhoLen("complement"), simple=True)
    assert red.steps != [(4, 1, 3), (1, 3, 4), (2, 3, 4), (2, 4, 1), (3, 4, 1)]
    assert {m for m, _ in red.poly} != {P(t) for t in WORKED_FACETS}


@pytest.mark.parametrize(
    "i, j, n, span, complement",
    [(1, 3, 4, 2, 2), (4, 1, 4, 1, 3), (1, 4, 4, 3, 1), (2, 3, 5, 1, 4), (5, 2, 5, 2, 3)],
)
def test_edge_length(i, j, n, span, complement):
    assert edge_length(i, j, n) == span
    assert edge_length(i, j, n, "complement") == complement


def test_edge_length_errors():
    with pytest.raises(ValueError):
        edge_length(2, 2, 4)
    with pytest.raises(ValueError, match="variant"):
        edge_length(1, 2, 4, "other")


def test_rho_len_first_steps(neene):
    p = build_p_nu(neene).at_beta_zero()
    assert rho_len_next(p, neene.n) == (4, 1, 3)
    p = reduce_at(p, (4, 1, 3), simple=True)
    assert rho_len_next(p, neene.n) == (1, 3, 4)
    with pytest.raises(ValueError, match="already reduced"):
        rho_len_next(poly("x12"), 3)


def test_rho_len_prefers_longest_pair_at_middle():
    # at middle 3 the incoming edge (1,3) is longer than (2,3)
    assert rho_len_next(poly("x13*x34", "x23*x35"), 5) == (1, 3, 4)
    assert rho_len_next(poly("x13*x35*x23"), 5) == (1, 3, 5)
    # ties on the incoming edge fall to the longer outgoing edge
    assert rho_len_next(poly("x13*x34*x35"), 5) == (1, 3, 5)
    # the smallest middle vertex wins over longer pairs elsewhere
    assert rho_len_next(poly("x12*x23", "x14*x45"), 5) == (1, 2, 3)


def test_step_limit(neene):
    with pytest.raises(StepLimitError):
        reduce_p_nu(neene, RhoLen(), max_steps=2)


@pytest.mark.parametrize("name, cls", [("rho-len", RhoLen), ("lex", Lexicographic), ("longest-first", LongestFirst)])
def test_make_order(name, cls):
    assert isinstance(make_order(name, seed=3), cls)


def test_make_order_errors():
    with pytest.raises(ValueError, match="seed"):
        make_order("random")
    with pytest.raises(ValueError, match="unknown"):
        make_order("fastest")
    assert make_order("random", seed=7).describe() == {"order": "random", "seed": 7}


@pytest.mark.parametrize("size", range(9))
def test_top_degree_count_is_binomial(size):
    for word in all_words(size):
        if len(word) != size:
            continue
        p = indexed(word)
        top = reduce_p_nu(p, RhoLen(), simple=True).poly.top_degree_terms()
        assert all(m.degree == p.n - 1 for m in top)
        assert len(top) == comb(word.count("E") + word.count("N"), word.count("E")), word


@settings(max_examples=40, deadline=None)
@given(lattice_paths(max_size=7), st.integers(0, 10**6))
def test_reduced_form_independent_of_order(nu, seed):
    # term count and degree profile agree across orders, and coefficients stay 1
    p = index_path(nu)
    ref = reduce_p_nu(p, RhoLen(), simple=False).poly
    for order in (SeededRandom(seed), Lexicographic(), LongestFirst(seed)):
        red = reduce_p_nu(p, order, simple=False).poly
        assert red.is_reduced()
        assert red.degree_profile() == ref.degree_profile()
        assert all(c == 1 for _, c in red.items())


@settings(max_examples=30, deadline=None)
@given(lattice_paths(max_size=7))
def test_degree_plus_beta_is_constant(nu):
    # every term of the full reduction has degree + beta exponent = n - 1
    p = index_path(nu)
    red = reduce_p_nu(p, RhoLen(), simple=False)
    assert {m.degree + e for m, e in red.poly} <= {p.n - 1}


@settings(max_examples=30, deadline=None)
@given(lattice_paths(max_size=6))
def test_length_order_keeps_routes_noncrossing(nu):
    # each intermediate monomial of the length order has no two generators
    # whose arcs cross; generators x_ij are read as arcs on the cyclic word
    p = index_path(nu)
    red = reduce_to_normal_form(build_p_nu(p).at_beta_zero(), RhoLen(), p.n, simple=True, keep_history=True)
    assert len(red.history) == len(red.steps) + 1
    final = red.history[-1]
    for m, _ in final:
        arcs = [Arc(i, j) for i, j in m if i in p.I and j in p.J]
        for x, y in itertools.combinations(arcs, 2):
            assert not cyclically_crosses(x, y, p)


def test_reduction_tree_of_a_pair():
    root = reduction_tree(P("x12*x23"), Lexicographic(), 3)
    assert root.triple == (1, 2, 3) and root.size() == 4
    assert len(list(root.leaves())) == 3
    assert leaf_poly(root) == reduce_to_normal_form(poly("x12*x23"), Lexicographic(), 3).poly


def test_reduction_tree_of_reduced_monomial():
    root = reduction_tree(P("x13*x23"), RhoLen(), 3)
    assert root.size() == 1 and [leaf.mono for leaf in root.leaves()] == [P("x13*x23")]


@pytest.mark.parametrize("word", ["NEENE", "EENN", "ENEN", "NENEE"])
@pytest.mark.parametrize("simple", [True, False])
def test_leaf_poly_matches_reduction(word, simple):
    p = indexed(word)
    total = BetaPoly()
    for (m, e), c in build_p_nu(p).items():
        if simple and e:
            continue
        leaves = leaf_poly(reduction_tree(m, RhoLen(), p.n, simple))
        total = total + BetaPoly({(lm, le + e): lc * c for (lm, le), lc in leaves.items()})
    assert total.is_reduced()
    assert total.degree_profile() == reduce_p_nu(p, RhoLen(), simple).poly.degree_profile()


def test_beta_poly_json_round_trip(neene):
    p = reduce_p_nu(neene, RhoLen(), simple=False).poly
    assert BetaPoly.from_json(json.dumps(p.to_json())) == p


def test_beta_poly_helpers():
    p = BetaPoly({(P("x12"), 1): 2, (P("x12*x23"), 0): 1, (P("x13"), 0): 0})
    assert len(p) == 2
    assert p.coefficient(P("x12"), 1) == 2 and p.coefficient(P("x12")) == 0
    assert p.at_beta_zero() == poly("x12*x23")
    assert p.max_degree() == 2 and p.degree_profile() == {1: 2, 2: 1}
    assert str(BetaPoly()) == "0" and "2*x12*beta" in str(p)
