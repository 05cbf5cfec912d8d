"""Pure-Python board kernels.

Same contract as the compiled module: callers guarantee queens is a tuple of
(row, col) int pairs inside an n-by-n board. Two queens attack each other
when they share a row, a column, or a diagonal.
"""

from __future__ import annotations

KERNEL_NAME = "pure"


def pairwise_safe(queens: tuple) -> bool:
    """True when no two of the given queens attack each other."""
    for i in range(len(queens)):
        r1, c1 = queens[i]
        for j in range(i + 1, len(queens)):
            r2, c2 = queens[j]
            if r1 == r2 or c1 == c2 or abs(r1 - r2) == abs(c1 - c2):
                return False
    return True


def safe_squares(n: int, queens: tuple) -> frozenset:
    """Flat indexes (row * n + col) of every empty square where one more
    queen can be placed without attacking any existing queen."""
    rows = set()
    cols = set()
    diffs = set()
    sums = set()
    for r, c in queens:
        rows.add(r)
        cols.add(c)
        diffs.add(r - c)
        sums.add(r + c)
    out = []
    for r in range(n):
        if r in rows:
            continue
        base = r * n
        for c in range(n):
            if c in cols or (r - c) in diffs or (r + c) in sums:
                continue
            out.append(base + c)
    return frozenset(out)
