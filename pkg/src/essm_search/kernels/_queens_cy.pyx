# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled board kernels: attack checks and safe-square enumeration.

Mirrors kernels.queens_py exactly; the dispatcher in kernels/__init__.py
picks whichever is available.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.string cimport memset

KERNEL_NAME = "compiled"


def pairwise_safe(tuple queens):
    """True when no two of the given queens attack each other."""
    cdef Py_ssize_t q = len(queens)
    if q < 2:
        return True
    cdef long *rs = <long *> PyMem_Malloc(q * sizeof(long))
    cdef long *cs = <long *> PyMem_Malloc(q * sizeof(long))
    if rs == NULL or cs == NULL:
        PyMem_Free(rs)
        PyMem_Free(cs)
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef long dr, dc
    cdef bint ok = True
    try:
        for i in range(q):
            rs[i] = queens[i][0]
            cs[i] = queens[i][1]
        for i in range(q):
            if not ok:
                break
            for j in range(i + 1, q):
                dr = rs[i] - rs[j]
                if dr < 0:
                    dr = -dr
                dc = cs[i] - cs[j]
                if dc < 0:
                    dc = -dc
                if rs[i] == rs[j] or cs[i] == cs[j] or dr == dc:
                    ok = False
                    break
        return ok
    finally:
        PyMem_Free(rs)
        PyMem_Free(cs)


def safe_squares(int n, tuple queens):
    """Flat indexes (row * n + col) of every empty square where one more
    queen can be placed without attacking any existing queen."""
    cdef Py_ssize_t q = len(queens)
    cdef Py_ssize_t span = 2 * n - 1
    cdef char *rows = <char *> PyMem_Malloc(n)
    cdef char *cols = <char *> PyMem_Malloc(n)
    cdef char *diffs = <char *> PyMem_Malloc(span)
    cdef char *sums = <char *> PyMem_Malloc(span)
    if rows == NULL or cols == NULL or diffs == NULL or sums == NULL:
        PyMem_Free(rows)
        PyMem_Free(cols)
        PyMem_Free(diffs)
        PyMem_Free(sums)
        raise MemoryError()
    cdef Py_ssize_t i
    cdef long r, c, base
    out = []
    try:
        memset(rows, 0, n)
        memset(cols, 0, n)
        memset(diffs, 0, span)
        memset(sums, 0, span)
        for i in range(q):
            r = queens[i][0]
            c = queens[i][1]
            rows[r] = 1
            cols[c] = 1
            diffs[r - c + n - 1] = 1
            sums[r + c] = 1
        for r in range(n):
            if rows[r]:
                continue
            base = r * n
            for c in range(n):
                if cols[c] or diffs[r - c + n - 1] or sums[r + c]:
                    continue
                out.append(base + c)
        return frozenset(out)
    finally:
        PyMem_Free(rows)
        PyMem_Free(cols)
        PyMem_Free(diffs)
        PyMem_Free(sums)
