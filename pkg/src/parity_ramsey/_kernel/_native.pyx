# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled scan kernel.

Walks lexicographic m-subsets with an in-place successor (no subset
materialization) and runs the per-subset checks in C with the GIL released;
the GIL is reacquired only to record a hit, which is rare on healthy
colorings. Output order and counts match the numpy backend exactly.
"""

import numpy as np

from . import tables as T

BACKEND_NAME = "native"


cdef inline void _sort_small(int* a, int n) noexcept nogil:
    cdef int i, j, key
    for i in range(1, n):
        key = a[i]
        j = i - 1
        while j >= 0 and a[j] > key:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = key


cdef int _check_one(const int* cols, int m, int checks,
                    const int[:, ::1] t1, const int[:, ::1] t2,
                    const int[:, ::1] t3, int* hits) noexcept nogil:
    """Run the enabled checks on one subset; write kind ids (ascending) to
    hits and return how many fired."""
    cdef int s[10]
    cdef int ne = m * (m - 1) // 2
    cdef int i, nh = 0, distinct
    cdef bint even, dup

    if m == 3:
        if checks & (1 << 8):
            if cols[0] == cols[1] and cols[1] == cols[2]:
                hits[nh] = 8
                nh += 1
        return nh

    for i in range(ne):
        s[i] = cols[i]
    _sort_small(s, ne)

    if m == 4:
        if checks & (1 << 5):
            if s[0] == s[1] and s[2] == s[3] and s[4] == s[5]:
                hits[nh] = 5
                nh += 1
        if checks & (1 << 6):
            # matchings {ab,cd} {ac,bd} {ad,bc} = slots (0,5) (1,4) (2,3)
            if (cols[0] == cols[5] and cols[1] == cols[4] and cols[2] == cols[3]
                    and cols[0] != cols[1] and cols[0] != cols[2] and cols[1] != cols[2]):
                hits[nh] = 6
                nh += 1
        if checks & (1 << 7):
            if (s[0] == s[1] and s[2] == s[3] and s[4] == s[5]
                    and s[1] != s[2] and s[3] != s[4]):
                hits[nh] = 7
                nh += 1
        return nh

    # m == 5
    if checks & (1 << 0):
        even = True
        for i in range(0, 10, 2):
            if s[i] != s[i + 1]:
                even = False
                break
        if even:
            hits[nh] = 0
            nh += 1
    dup = False
    distinct = 10
    for i in range(9):
        if s[i] == s[i + 1]:
            dup = True
            distinct -= 1
    if checks & (1 << 1):
        if distinct <= 3:
            hits[nh] = 1
            nh += 1
    if dup:
        # a closed equality group needs a repeated color, so rainbow
        # subsets skip the instance tables entirely
        if checks & (1 << 2):
            for i in range(t1.shape[0]):
                if cols[t1[i, 0]] == cols[t1[i, 1]] and cols[t1[i, 2]] == cols[t1[i, 3]]:
                    hits[nh] = 2
                    nh += 1
                    break
        if checks & (1 << 3):
            for i in range(t2.shape[0]):
                if (cols[t2[i, 0]] == cols[t2[i, 1]] and cols[t2[i, 1]] == cols[t2[i, 2]]
                        and cols[t2[i, 3]] == cols[t2[i, 4]] and cols[t2[i, 4]] == cols[t2[i, 5]]):
                    hits[nh] = 3
                    nh += 1
                    break
        if checks & (1 << 4):
            for i in range(t3.shape[0]):
                if (cols[t3[i, 0]] == cols[t3[i, 1]] and cols[t3[i, 1]] == cols[t3[i, 2]]
                        and cols[t3[i, 3]] == cols[t3[i, 4]] and cols[t3[i, 4]] == cols[t3[i, 5]]):
                    hits[nh] = 4
                    nh += 1
                    break
    return nh


def scan_range(const int[:, ::1] colors, int m, long long start, long long count, int checks):
    """Check the lexicographic m-subsets with ranks [start, start+count)."""
    counts_np = np.zeros(T.N_KINDS, dtype=np.int64)
    if count <= 0:
        return counts_np, []
    cdef int n = colors.shape[0]
    t1_np, t2_np, t3_np = T.config_tables()
    cdef const int[:, ::1] t1 = t1_np
    cdef const int[:, ::1] t2 = t2_np
    cdef const int[:, ::1] t3 = t3_np
    cdef const long long[:, ::1] ctab = T.comb_table(n, m)
    cdef long long[::1] counts = counts_np
    hits_out = []

    cdef int comb[5]
    cdef int cols[10]
    cdef int hitbuf[9]
    cdef long long idx, r
    cdef int pos, v, x, i, j, t, nh

    # unrank the starting subset
    r = start
    x = 0
    for pos in range(m):
        v = x
        while r >= ctab[n - 1 - v, m - 1 - pos]:
            r -= ctab[n - 1 - v, m - 1 - pos]
            v += 1
        comb[pos] = v
        x = v + 1

    with nogil:
        for idx in range(count):
            t = 0
            for i in range(m):
                for j in range(i + 1, m):
                    cols[t] = colors[comb[i], comb[j]]
                    t += 1
            nh = _check_one(cols, m, checks, t1, t2, t3, hitbuf)
            if nh > 0:
                for i in range(nh):
                    counts[hitbuf[i]] += 1
                with gil:
                    subset = tuple(comb[i] for i in range(m))
                    for i in range(nh):
                        hits_out.append((hitbuf[i], subset))
            if idx < count - 1:
                i = m - 1
                while comb[i] == n - m + i:
                    i -= 1
                comb[i] += 1
                for j in range(i + 1, m):
                    comb[j] = comb[j - 1] + 1
    return counts_np, hits_out


def scan_subsets(const int[:, ::1] colors, const int[:, ::1] subs, int checks):
    """Check explicit subsets (one per row). Returns (per-kind counts, hits)."""
    counts_np = np.zeros(T.N_KINDS, dtype=np.int64)
    cdef long long nrows = subs.shape[0]
    if nrows == 0:
        return counts_np, []
    cdef int m = subs.shape[1]
    t1_np, t2_np, t3_np = T.config_tables()
    cdef const int[:, ::1] t1 = t1_np
    cdef const int[:, ::1] t2 = t2_np
    cdef const int[:, ::1] t3 = t3_np
    cdef long long[::1] counts = counts_np
    hits_out = []

    cdef int cols[10]
    cdef int hitbuf[9]
    cdef long long row
    cdef int i, j, t, nh

    with nogil:
        for row in range(nrows):
            t = 0
            for i in range(m):
                for j in range(i + 1, m):
                    cols[t] = colors[subs[row, i], subs[row, j]]
                    t += 1
            nh = _check_one(cols, m, checks, t1, t2, t3, hitbuf)
            if nh > 0:
                for i in range(nh):
                    counts[hitbuf[i]] += 1
                with gil:
                    subset = tuple(subs[row, i] for i in range(m))
                    for i in range(nh):
                        hits_out.append((hitbuf[i], subset))
    return counts_np, hits_out
