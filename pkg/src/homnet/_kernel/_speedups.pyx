# cython: boundscheck=False, wraparound=False
"""Compiled fraction-free row echelon over 64-bit integers.

Twin of homnet._kernel.pure with identical pivoting and output.  Entries are
stored as int64 and the Bareiss update (piv*x - lead*y)/prev runs in 128-bit
intermediates, so any entry bounded by 2**62 is handled; larger values raise
OverflowError and the caller falls back to the unbounded pure-Python kernel.
The input list of rows is never modified.
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    """
    #include <stdint.h>
    static inline int64_t ff_update(int64_t piv, int64_t x, int64_t lead,
                                    int64_t y, int64_t prev, int *overflow) {
        __int128 v = (__int128)piv * x - (__int128)lead * y;
        v /= prev;  /* exact by the fraction-free invariant */
        if (v > (((__int128)1) << 62) || v < -(((__int128)1) << 62)) {
            *overflow = 1;
            return 0;
        }
        return (int64_t)v;
    }
    """
    long long ff_update(long long piv, long long x, long long lead,
                        long long y, long long prev, int *overflow) nogil

BACKEND = "compiled"

cdef long long GUARD = (<long long> 1) << 62


def echelon(rows, int ncols):
    cdef int nrows = len(rows)
    cdef int r, c, i, j, p
    cdef int overflow = 0
    cdef long long piv, lead, prev, val
    cdef long long *m
    if nrows == 0 or ncols == 0:
        return [list(row) for row in rows], []

    m = <long long *> malloc(nrows * ncols * sizeof(long long))
    if m == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                val = row[j]
                if val > GUARD or val < -GUARD:
                    raise OverflowError("entry exceeds the compiled kernel guard")
                m[i * ncols + j] = val

        pivot_cols = []
        prev = 1
        r = 0
        for c in range(ncols):
            p = r
            while p < nrows and m[p * ncols + c] == 0:
                p += 1
            if p == nrows:
                continue
            if p != r:
                for j in range(ncols):
                    val = m[p * ncols + j]
                    m[p * ncols + j] = m[r * ncols + j]
                    m[r * ncols + j] = val
            piv = m[r * ncols + c]
            for i in range(r + 1, nrows):
                lead = m[i * ncols + c]
                for j in range(c + 1, ncols):
                    m[i * ncols + j] = ff_update(
                        piv, m[i * ncols + j], lead, m[r * ncols + j], prev,
                        &overflow,
                    )
                m[i * ncols + c] = 0
            if overflow:
                raise OverflowError("entry exceeds the compiled kernel guard")
            prev = piv
            pivot_cols.append(c)
            r += 1
            if r == nrows:
                break

        out = [
            [m[i * ncols + j] for j in range(ncols)] for i in range(nrows)
        ]
        return out, pivot_cols
    finally:
        free(m)
