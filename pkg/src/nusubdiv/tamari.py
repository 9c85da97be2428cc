"""Arcs over an indexed path, (cyclic) crossing, (I,J)-trees and flips.

An arc ``(i, j)`` joins the E step with index i to the N step with index j.
Crossing is decided on letter positions in the closed word rather than on
bare indices: a valley index k names two letters E_k N_k, and comparing
positions keeps the order E_k < N_k that bare indices lose.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from . import dot
from .flow import route_arc
from .path import E, N, IndexedPath


@dataclass(frozen=True, order=True)
class Arc:
    i: int
    j: int

    @property
    def increasing(self) -> bool:
        return self.i < self.j

    @property
    def minimal(self) -> bool:
        return self.i == self.j

    def as_pair(self) -> tuple:
        return (self.i, self.j)


def _pos(p: IndexedPath, a: Arc) -> tuple:
    return p.position(E, a.i), p.position(N, a.j)


def _cyclic_pattern(i, j, i2, j2) -> bool:
    return (
        i < i2 < j < j2
        or j2 < i < i2 < j
        or j < j2 < i < i2
        or i2 < j < j2 < i
        or i < j2 < i2 < j
        or j < i < j2 < i2
    )


def cyclically_crosses(a: Arc, b: Arc, p: IndexedPath) -> bool:
    """The six cyclic crossing configurations, in either role order, tested
    on letter positions."""
    i, j = _pos(p, a)
    i2, j2 = _pos(p, b)
    return _cyclic_pattern(i, j, i2, j2) or _cyclic_pattern(i2, j2, i, j)


def crosses(a: Arc, b: Arc) -> bool:
    """Crossing of increasing (or minimal) arcs: i < i' <= j < j' up to swap.

    The tie i' = j is a crossing because the E step of a valley comes
    before its N step.
    """
    for arc in (a, b):
        if arc.i > arc.j:
            raise ValueError(f"{arc} is not an increasing arc")
    i, j, i2, j2 = a.i, a.j, b.i, b.j
    return (i < i2 <= j < j2) or (i2 < i <= j2 < j)


def arcs(p: IndexedPath, increasing: bool = False) -> list:
    out = [Arc(i, j) for i in p.I for j in p.J]
    if increasing:
        out = [a for a in out if a.i <= a.j]
    return sorted(out)


def is_maximal_arc(a: Arc, p: IndexedPath) -> bool:
    if a.i == 1 and a.j == p.n:
        return True
    if a.j < a.i:
        return not any(a.j < k < a.i for k in set(p.I) | set(p.J))
    return False


@dataclass(frozen=True)
class IJForest:
    arcs: tuple
    cyclic: bool = True

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))

    def pairs(self) -> list:
        return [a.as_pair() for a in self.arcs]

    def non_minimal(self) -> frozenset:
        return frozenset(a for a in self.arcs if not a.minimal)

    def __contains__(self, a):
        return a in self.arcs

    def to_json(self) -> list:
        return [list(a.as_pair()) for a in self.arcs]

    def __str__(self):
        return " ".join(f"{a.i}-{a.j}" for a in self.arcs)


def _crossing_test(p: IndexedPath, cyclic: bool):
    if cyclic:
        return lambda a, b: cyclically_crosses(a, b, p)
    return crosses


def is_forest(arcs_: Iterable[Arc], p: IndexedPath, cyclic: bool = True) -> bool:
    arcs_ = list(arcs_)
    test = _crossing_test(p, cyclic)
    return not any(test(a, b) for k, a in enumerate(arcs_) for b in arcs_[k + 1 :])


def enumerate_cyclic_ij_trees(p: IndexedPath, cyclic: bool = True, max_size: int = 10) -> list:
    """All maximal (cyclically) non-crossing arc sets, sorted.

    The trees are the maximal cliques of the compatibility graph on arcs.
    """
    if p.a + p.b > max_size:
        raise ValueError(f"a+b = {p.a + p.b} exceeds the enumeration guard {max_size}")
    pool = arcs(p, increasing=not cyclic)
    test = _crossing_test(p, cyclic)
    compat = nx.Graph()
    compat.add_nodes_from(pool)
    for k, a in enumerate(pool):
        for b in pool[k + 1 :]:
            if not test(a, b):
                compat.add_edge(a, b)
    trees = [IJForest(tuple(c), cyclic) for c in nx.find_cliques(compat)]
    return sorted(trees, key=lambda t: t.arcs)


def maximal_arc(t: IJForest, p: IndexedPath) -> Arc:
    found = [a for a in t.arcs if is_maximal_arc(a, p)]
    if len(found) != 1:
        raise ValueError(f"expected exactly one maximal arc, found {len(found)}")
    return found[0]


def increasing_flip_covers(trees: list) -> list:
    """Pairs ``(T, T')`` where T' replaces one arc (i, j) of T by (i', j')
    with i < i'."""
    by_rest: dict = {}
    for t in trees:
        for a in t.arcs:
            rest = frozenset(t.arcs) - {a}
            by_rest.setdefault(rest, []).append((a, t))
    covers = []
    for group in by_rest.values():
        for a, t in group:
            for b, t2 in group:
                if a.i < b.i:
                    covers.append((t, t2))
    return sorted(covers, key=lambda c: (c[0].arcs, c[1].arcs))


def hasse_ranks(trees: list, covers: list) -> dict:
    """Shortest number of flips from a minimal element, per tree."""
    up = {t: [] for t in trees}
    has_lower = set()
    for lo, hi in covers:
        up[lo].append(hi)
        has_lower.add(hi)
    rank = {t: 0 for t in trees if t not in has_lower}
    queue = deque(rank)
    while queue:
        t = queue.popleft()
        for h in up[t]:
            if h not in rank:
                rank[h] = rank[t] + 1
                queue.append(h)
    return rank


def hasse_to_dot(trees: list, covers: list, name: str = "hasse") -> str:
    ids = {t: f"T{k}" for k, t in enumerate(trees)}
    ranks = hasse_ranks(trees, covers)
    node_attrs = {ids[t]: {"label": str(t), "rank": str(ranks[t])} for t in trees}
    edges = [(ids[lo], ids[hi], {}) for lo, hi in covers]
    return dot.render_digraph(name, [ids[t] for t in trees], edges, node_attrs)


def phi_route_to_arc(r) -> Arc:
    return Arc(*route_arc(r))


def monomial_to_tree(m, p: IndexedPath) -> IJForest:
    """Arcs of the generators of ``m`` together with all minimal arcs."""
    arcs_ = {Arc(i, j) for i, j in m.gens}
    for i, j in m.gens:
        if i not in p.I or j not in p.J:
            raise ValueError(f"generator x_{i}{j} is not an arc of {p}")
    arcs_.update(Arc(k, k) for k in p.V)
    return IJForest(tuple(arcs_), cyclic=True)


def tree_to_monomial(t: IJForest):
    from .algebra import Monomial

    return Monomial(tuple(a.as_pair() for a in t.arcs if not a.minimal))
