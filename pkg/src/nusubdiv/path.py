"""Lattice paths over {E, N}, the closed path EvN and its canonical indexing.

A closed path ``EvN`` is indexed letter by letter with consecutive positive
integers, except that the first N of every run of N steps reuses the index of
the E step right before it.  The shared indices are exactly the valleys.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from math import comb

E = "E"
N = "N"


@dataclass(frozen=True)
class LatticePath:
    """Monotone lattice path from (0, 0) to (a, b), stored as a step word."""

    steps: str = ""

    def __post_init__(self):
        for s in self.steps:
            if s not in (E, N):
                raise ValueError(f"invalid step {s!r}")

    @property
    def a(self) -> int:
        return self.steps.count(E)

    @property
    def b(self) -> int:
        return self.steps.count(N)

    def __str__(self):
        return self.steps

    def __len__(self):
        return len(self.steps)


def parse_path(text: str) -> LatticePath:
    return LatticePath(text.strip().upper())


def close_path(nu: LatticePath) -> LatticePath:
    return LatticePath(E + nu.steps + N)


def strip(p: "IndexedPath | LatticePath") -> LatticePath:
    """Inverse of :func:`close_path`: drop the leading E and trailing N."""
    word = p.word if isinstance(p, IndexedPath) else p.steps
    if not (word.startswith(E) and word.endswith(N)):
        raise ValueError(f"{word!r} is not of the form E...N")
    return LatticePath(word[1:-1])


@dataclass(frozen=True)
class IndexedPath:
    """A closed path EvN with its canonical letter indexing.

    ``letters`` is a tuple of ``(step, index)`` pairs.  Use
    :func:`canonical_index` to build one; the constructor only checks that the
    indexing is the canonical one.
    """

    letters: tuple

    def __post_init__(self):
        if _canonical_letters(self.word) != tuple(self.letters):
            raise ValueError("letters are not canonically indexed")

    @cached_property
    def word(self) -> str:
        return "".join(s for s, _ in self.letters)

    @cached_property
    def I(self) -> tuple:  # noqa: E743
        return tuple(k for s, k in self.letters if s == E)

    @cached_property
    def J(self) -> tuple:
        return tuple(k for s, k in self.letters if s == N)

    @cached_property
    def V(self) -> tuple:
        return tuple(sorted(set(self.I) & set(self.J)))

    @property
    def n(self) -> int:
        return self.letters[-1][1]

    @property
    def w(self) -> int:
        return len(self.V)

    @property
    def a(self) -> int:
        return len(self.I) - 1

    @property
    def b(self) -> int:
        return len(self.J) - 1

    @cached_property
    def cyclic_peaks(self) -> tuple:
        """Cyclic peaks as ``(j, i)`` pairs meaning the factor ``N_j E_i``.

        Ordinary peaks come first in reading order; the wrap-around pair
        (last N, first E) is always the final entry.
        """
        peaks = []
        for (s1, k1), (s2, k2) in zip(self.letters, self.letters[1:]):
            if s1 == N and s2 == E:
                peaks.append((k1, k2))
        peaks.append((self.letters[-1][1], self.letters[0][1]))
        return tuple(peaks)

    def position(self, step: str, index: int) -> int:
        """0-based position of the letter ``step_index`` in the word."""
        return self._positions[(step, index)]

    @cached_property
    def _positions(self) -> dict:
        return {letter: pos for pos, letter in enumerate(self.letters)}

    def __str__(self):
        return "".join(f"{s}{k}" for s, k in self.letters)

    def to_json(self) -> dict:
        return {
            "letters": [[s, k] for s, k in self.letters],
            "I": list(self.I),
            "J": list(self.J),
            "V": list(self.V),
        }

    @classmethod
    def from_json(cls, data) -> "IndexedPath":
        if isinstance(data, str):
            data = json.loads(data)
        p = cls(tuple((s, int(k)) for s, k in data["letters"]))
        for key in ("I", "J", "V"):
            if key in data and tuple(data[key]) != getattr(p, key):
                raise ValueError(f"inconsistent {key} in indexed path JSON")
        return p


def _canonical_letters(word: str) -> tuple:
    letters = []
    k = 0
    prev = None
    for s in word:
        if not (s == N and prev == E):
            k += 1
        letters.append((s, k))
        prev = s
    return tuple(letters)


def canonical_index(closed: LatticePath | str) -> IndexedPath:
    word = closed.steps if isinstance(closed, LatticePath) else closed
    LatticePath(word)  # validates the alphabet
    if not (word.startswith(E) and word.endswith(N)):
        raise ValueError(f"{word!r} is not a closed path E...N")
    return IndexedPath(_canonical_letters(word))


def index_path(nu: LatticePath | str) -> IndexedPath:
    """Shortcut for ``canonical_index(close_path(nu))``."""
    if isinstance(nu, str):
        nu = parse_path(nu)
    return canonical_index(close_path(nu))


def shift_start(p: IndexedPath, k: int) -> int:
    """Letter position where the k-th cyclic shift starts (the E of peak k)."""
    if not 1 <= k <= p.w:
        raise ValueError(f"k must lie in 1..{p.w}, got {k}")
    _, i = p.cyclic_peaks[k - 1]
    return p.position(E, i)


def cyclic_shift(p: IndexedPath, k: int) -> IndexedPath:
    """The path read cyclically from the E step of the k-th cyclic peak,
    canonically re-indexed."""
    start = shift_start(p, k)
    return canonical_index(p.word[start:] + p.word[:start])


def shift_relabeling(p: IndexedPath, k: int) -> dict:
    """Map from indices of ``p`` to indices of ``cyclic_shift(p, k)``.

    Rotating at a peak boundary shifts every index by the same amount
    modulo n.
    """
    _, i = p.cyclic_peaks[k - 1]
    n = p.n
    return {m: (m - i) % n + 1 for m in range(1, n + 1)}


def _lowest_heights(nu: LatticePath) -> list:
    """Height at which ``nu`` arrives in column x, for x = 0..a."""
    low = [0]
    h = 0
    for s in nu.steps:
        if s == N:
            h += 1
        else:
            low.append(h)
    return low


def nu_catalan(nu: LatticePath | str) -> int:
    """Number of lattice paths from (0,0) to (a,b) weakly above ``nu``."""
    if isinstance(nu, str):
        nu = parse_path(nu)
    a, b = nu.a, nu.b
    low = _lowest_heights(nu)
    # count[y] = number of admissible paths ending at (x, y)
    count = [1] * (b + 1)
    for x in range(1, a + 1):
        new = [0] * (b + 1)
        for y in range(b + 1):
            if y < low[x]:
                continue
            new[y] = count[y] + (new[y - 1] if y > 0 else 0)
        count = new
    return count[b]


def _e_step_heights(steps: str) -> tuple:
    h = 0
    out = []
    for s in steps:
        if s == N:
            h += 1
        else:
            out.append(h)
    return tuple(out)


def is_weakly_above(path: LatticePath, nu: LatticePath) -> bool:
    """Each E step of ``path`` is taken at a height >= the matching E of ``nu``."""
    if (path.a, path.b) != (nu.a, nu.b):
        return False
    return all(p >= q for p, q in zip(_e_step_heights(path.steps), _e_step_heights(nu.steps)))


def all_paths(a: int, b: int):
    """All lattice paths from (0,0) to (a,b) in lexicographic order."""
    for pos in itertools.combinations(range(a + b), a):
        steps = [N] * (a + b)
        for q in pos:
            steps[q] = E
        yield LatticePath("".join(steps))


def paths_up_to(size: int):
    """Every lattice path with a + b <= size, shortest first."""
    for m in range(size + 1):
        for a in range(m + 1):
            yield from sorted(all_paths(a, m - a), key=str)


def enumerate_paths_weakly_above(nu: LatticePath | str, max_size: int = 24) -> set:
    if isinstance(nu, str):
        nu = parse_path(nu)
    if len(nu) > max_size:
        raise ValueError(f"path length {len(nu)} exceeds enumeration guard {max_size}")
    return {p for p in all_paths(nu.a, nu.b) if is_weakly_above(p, nu)}


def binomial_volume(nu: LatticePath) -> int:
    """Normalized volume of the product of simplices for ``nu``'s endpoint."""
    return comb(nu.a + nu.b, nu.a)
