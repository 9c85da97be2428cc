"""Small exact linear algebra over Z and Q."""

from __future__ import annotations

import math
from fractions import Fraction


def bareiss_det(rows) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    m = [list(map(int, r)) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(rows) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(map(int, r)) for r in rows]
    if not m:
        return 0
    r = 0
    for c in range(len(m[0])):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for k in range(r + 1, len(m)):
            if m[k][c]:
                f, g = m[k][c], m[r][c]
                m[k] = [a * g - b * f for a, b in zip(m[k], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def solve(A, b):
    """Unique solution of the consistent system A x = b over Q, or None.

    A may have more rows than columns.  Returns None if the system is
    inconsistent or underdetermined.  Rows are scaled to integers and
    eliminated fraction-free; only the back substitution uses Fractions.
    """
    rows = []
    for r, v in zip(A, b):
        r = [Fraction(x) for x in r] + [Fraction(v)]
        scale = math.lcm(*(x.denominator for x in r))
        rows.append([int(x * scale) for x in r])
    ncols = len(rows[0]) - 1
    prev = 1
    for c in range(ncols):
        piv = next((k for k in range(c, len(rows)) if rows[k][c] != 0), None)
        if piv is None:
            return None
        rows[c], rows[piv] = rows[piv], rows[c]
        for i in range(c + 1, len(rows)):
            rows[i] = [(rows[i][j] * rows[c][c] - rows[i][c] * rows[c][j]) // prev for j in range(len(rows[i]))]
        prev = rows[c][c]
    if any(r[ncols] != 0 for r in rows[ncols:]):
        return None
    x = [Fraction(0)] * ncols
    for c in reversed(range(ncols)):
        acc = Fraction(rows[c][ncols]) - sum(rows[c][j] * x[j] for j in range(c + 1, ncols))
        x[c] = acc / rows[c][c]
    return x
