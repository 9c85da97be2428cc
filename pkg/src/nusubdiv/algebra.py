"""The beta-subdivision algebra and its reduction engine.

Generators ``x_ij`` (i != j) commute.  A reduction at the triple (i, j, k)
rewrites every term containing ``x_ij * x_jk`` (i != k) as

    x_ik x_ij  +  x_jk x_ik  +  beta x_ik

and a *simple* reduction drops the beta branch.  A polynomial is reduced when
no stored monomial contains such a pair.
"""

from __future__ import annotations

import json
import random
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional


class SquareFreeError(ValueError):
    """A reduction would have squared a generator."""


class StepLimitError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class Monomial:
    """Square-free product of generators, stored as a sorted tuple of (i, j)."""

    gens: tuple = ()

    def __post_init__(self):
        gens = tuple(sorted((int(i), int(j)) for i, j in self.gens))
        for i, j in gens:
            if i == j:
                raise ValueError(f"x_{i}{j} is not a generator")
        if len(set(gens)) != len(gens):
            raise SquareFreeError(f"repeated generator in {gens}")
        object.__setattr__(self, "gens", gens)

    @classmethod
    def of(cls, *gens) -> "Monomial":
        return cls(tuple(gens))

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        text = text.strip()
        if text in ("", "1"):
            return cls()
        gens = []
        for tok in text.split("*"):
            tok = tok.strip()
            m = re.fullmatch(r"x\[(\d+),(\d+)\]", tok) or re.fullmatch(r"x(\d)(\d)", tok)
            if not m:
                raise ValueError(f"cannot parse generator {tok!r}")
            gens.append((int(m.group(1)), int(m.group(2))))
        return cls(tuple(gens))

    @property
    def degree(self) -> int:
        return len(self.gens)

    def __contains__(self, gen) -> bool:
        return tuple(gen) in self.gens

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def replace(self, remove: Iterable, add: Iterable) -> "Monomial":
        rest = set(self.gens)
        for g in remove:
            rest.remove(tuple(g))
        for g in add:
            if tuple(g) in rest:
                raise SquareFreeError(f"x_{g[0]}{g[1]} already present in {self}")
            rest.add(tuple(g))
        return Monomial(tuple(rest))

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(set(self.gens) & set(other.gens)))

    def __str__(self):
        if not self.gens:
            return "1"
        return "*".join(_gen_text(i, j) for i, j in self.gens)


def _gen_text(i, j) -> str:
    if i < 10 and j < 10:
        return f"x{i}{j}"
    return f"x[{i},{j}]"


class BetaPoly:
    """Polynomial in the generators with coefficients in Z[beta].

    Terms are keyed by ``(Monomial, beta_exponent)``; zero coefficients are
    never stored.  Instances are treated as immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc: Counter = Counter()
        for key, c in dict(terms or {}).items():
            mono, e = key
            acc[(mono, int(e))] += c
        self._terms = {k: c for k, c in sorted(acc.items()) if c != 0}

    @classmethod
    def from_monomial(cls, m: Monomial, beta: int = 0, coef: int = 1) -> "BetaPoly":
        return cls({(m, beta): coef})

    def items(self):
        return self._terms.items()

    def monomials(self):
        return [m for m, _ in self._terms]

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __eq__(self, other):
        return isinstance(other, BetaPoly) and self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "BetaPoly") -> "BetaPoly":
        merged = Counter(self._terms)
        merged.update(other._terms)
        return BetaPoly(merged)

    def coefficient(self, m: Monomial, beta: int = 0) -> int:
        return self._terms.get((m, beta), 0)

    def at_beta_zero(self) -> "BetaPoly":
        return BetaPoly({k: c for k, c in self._terms.items() if k[1] == 0})

    def max_degree(self) -> int:
        return max((m.degree for m, _ in self._terms), default=0)

    def top_degree_terms(self) -> list:
        d = self.max_degree()
        return [m for m, _ in self._terms if m.degree == d]

    def degree_profile(self) -> dict:
        """Map degree -> total coefficient of terms with that degree."""
        prof: Counter = Counter()
        for (m, _), c in self._terms.items():
            prof[m.degree] += c
        return dict(sorted(prof.items()))

    def is_reduced(self) -> bool:
        return not any(reducible_triples(m) for m, _ in self._terms)

    def to_json(self) -> list:
        return [{"mono": [list(g) for g in m.gens], "beta": e, "coef": c} for (m, e), c in self._terms.items()]

    @classmethod
    def from_json(cls, data) -> "BetaPoly":
        if isinstance(data, str):
            data = json.loads(data)
        terms: Counter = Counter()
        for t in data:
            terms[(Monomial(tuple(tuple(g) for g in t["mono"])), int(t["beta"]))] += int(t["coef"])
        return cls(terms)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (m, e), c in self._terms.items():
            s = "" if m.degree == 0 and e else str(m)
            if e:
                beta = "beta" if e == 1 else f"beta^{e}"
                s = f"{s}*{beta}" if s else beta
            if c != 1:
                s = f"{c}*{s}"
            parts.append(s)
        return " + ".join(parts)

    def __repr__(self):
        return f"BetaPoly({self})"


def monomial_of_graph(g) -> Monomial:
    """One generator per inner edge: x_ij for (i, j, +) and x_ji for (i, j, -)."""
    if not g.is_simple():
        raise ValueError("graph has parallel edges")
    return Monomial(tuple(e.generator() for e in g.inner_edges))


def reducible_triples(m: Monomial) -> list:
    outgoing: dict = {}
    for i, j in m.gens:
        outgoing.setdefault(i, []).append(j)
    out = []
    for i, j in m.gens:
        for k in outgoing.get(j, ()):
            if k != i:
                out.append((i, j, k))
    return sorted(out)


def reduce_monomial(m: Monomial, triple) -> list:
    """The three successors ``[(monomial, extra_beta), ...]`` of one reduction."""
    i, j, k = triple
    if i == k or (i, j) not in m or (j, k) not in m:
        raise ValueError(f"{triple} is not reducible in {m}")
    return [
        (m.replace([(j, k)], [(i, k)]), 0),
        (m.replace([(i, j)], [(i, k)]), 0),
        (m.replace([(i, j), (j, k)], [(i, k)]), 1),
    ]


def reduce_at(p: BetaPoly, triple, simple: bool = False) -> BetaPoly:
    i, j, k = triple
    if i == k or len({i, j, k}) != 3:
        raise ValueError(f"invalid triple {triple}")
    acc: Counter = Counter()
    for (m, e), c in p.items():
        if (i, j) in m and (j, k) in m:
            for succ, db in reduce_monomial(m, triple):
                if db and simple:
                    continue
                acc[(succ, e + db)] += c
        else:
            acc[(m, e)] += c
    return BetaPoly(acc)


def edge_length(i: int, j: int, n: int, variant: str = "span") -> int:
    """Cyclic length of the edge (i, j) among n vertices.

    ``span`` is (j - i) mod n, the distance travelled going up from i to j;
    ``complement`` is (i + n - j) mod n.
    """
    if i == j:
        raise ValueError("edge length needs i != j")
    if variant == "span":
        return (j - i) % n
    if variant == "complement":
        return (i + n - j) % n
    raise ValueError(f"unknown length variant {variant!r}")


def all_triples(p: BetaPoly) -> list:
    found = set()
    for m, _ in p:
        found.update(reducible_triples(m))
    return sorted(found)


def longest_pair_at(p: BetaPoly, j: int, n: int, variant: str = "span"):
    """Among reducible triples with middle vertex j, the one with the longest
    incoming edge, then the longest outgoing edge."""
    cands = [t for t in all_triples(p) if t[1] == j]
    if not cands:
        return None
    return max(cands, key=lambda t: (edge_length(t[0], j, n, variant), edge_length(j, t[2], n, variant), t))


def rho_len_next(p: BetaPoly, n: int, variant: str = "span"):
    triples = all_triples(p)
    if not triples:
        raise ValueError("polynomial is already reduced")
    j = min(t[1] for t in triples)
    return longest_pair_at(p, j, n, variant)


class ReductionOrder:
    """Strategy choosing the next triple to reduce."""

    name = "order"

    def select(self, p: BetaPoly, n: int):
        raise NotImplementedError

    def describe(self) -> dict:
        return {"order": self.name}


class RhoLen(ReductionOrder):
    """Reduce the longest pair at the smallest middle vertex."""

    name = "rho-len"

    def __init__(self, variant: str = "span"):
        self.variant = variant

    def select(self, p, n):
        return rho_len_next(p, n, self.variant)

    def describe(self):
        return {"order": self.name, "length_variant": self.variant}


class Lexicographic(ReductionOrder):
    name = "lex"

    def select(self, p, n):
        return all_triples(p)[0]


class SeededRandom(ReductionOrder):
    """Uniform choice among the distinct reducible triples."""

    name = "random"

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = random.Random(seed)

    def select(self, p, n):
        return self._rng.choice(all_triples(p))

    def describe(self):
        return {"order": self.name, "seed": self.seed}


class LongestFirst(ReductionOrder):
    """Longest pair at a randomly chosen middle vertex."""

    name = "longest-first"

    def __init__(self, seed: int, variant: str = "span"):
        self.seed = seed
        self.variant = variant
        self._rng = random.Random(seed)

    def select(self, p, n):
        middles = sorted({t[1] for t in all_triples(p)})
        return longest_pair_at(p, self._rng.choice(middles), n, self.variant)

    def describe(self):
        return {"order": self.name, "seed": self.seed, "length_variant": self.variant}


def make_order(name: str, seed: Optional[int] = None, variant: str = "span") -> ReductionOrder:
    if name in ("rho-len", "rho_len"):
        return RhoLen(variant)
    if name == "lex":
        return Lexicographic()
    if name == "random":
        if seed is None:
            raise ValueError("the random order needs a seed")
        return SeededRandom(seed)
    if name == "longest-first":
        return LongestFirst(0 if seed is None else seed, variant)
    raise ValueError(f"unknown reduction order {name!r}")


@dataclass
class Reduction:
    start: BetaPoly
    poly: BetaPoly
    steps: list = field(default_factory=list)
    simple: bool = False
    history: Optional[list] = None

    def log(self) -> list:
        rule = "simple" if self.simple else "full"
        return [{"triple": list(t), "rule": rule} for t in self.steps]


def reduce_to_normal_form(
    p: BetaPoly,
    order: ReductionOrder,
    n: int,
    simple: bool = False,
    max_steps: int = 100_000,
    keep_history: bool = False,
) -> Reduction:
    start = p
    steps = []
    history = [p] if keep_history else None
    while not p.is_reduced():
        if len(steps) >= max_steps:
            raise StepLimitError(f"no normal form within {max_steps} reductions")
        t = order.select(p, n)
        p = reduce_at(p, t, simple)
        steps.append(t)
        if keep_history:
            history.append(p)
    return Reduction(start, p, steps, simple, history)


@dataclass
class TreeNode:
    mono: Monomial
    beta: int
    triple: Optional[tuple] = None
    children: list = field(default_factory=list)

    def leaves(self):
        if not self.children:
            yield self
        for c in self.children:
            yield from c.leaves()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


def reduction_tree(
    m: Monomial, order: ReductionOrder, n: int, simple: bool = False, max_steps: int = 100_000
) -> TreeNode:
    """Reduction tree of ``m``, rebuilt by replaying the polynomial step log
    on the leaves."""
    red = reduce_to_normal_form(BetaPoly.from_monomial(m), order, n, simple, max_steps)
    root = TreeNode(m, 0)
    for t in red.steps:
        i, j, k = t
        for leaf in list(root.leaves()):
            if (i, j) in leaf.mono and (j, k) in leaf.mono:
                leaf.triple = t
                for succ, db in reduce_monomial(leaf.mono, t):
                    if db and simple:
                        continue
                    leaf.children.append(TreeNode(succ, leaf.beta + db))
    return root


def leaf_poly(root: TreeNode) -> BetaPoly:
    acc: Counter = Counter()
    for leaf in root.leaves():
        acc[(leaf.mono, leaf.beta)] += 1
    return BetaPoly(acc)
