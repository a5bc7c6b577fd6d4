"""Numpy fallback kernel: vectorized subset checks, no compiled code.

Mirrors the compiled backend exactly: same inputs, same counts, same hit
stream order ((subset position, kind id) ascending). Sorting the edge colors
of a subset makes two of the checks one comparison each:

* all color classes even  <=>  s[0]==s[1], s[2]==s[3], ... on the sorted row
  (classes are runs in sorted order; all runs even iff adjacent pairs match);
* the number of distinct colors is 1 + (count of adjacent inequalities).
"""
from __future__ import annotations

import numpy as np

from . import tables as T

BACKEND_NAME = "vector"


def _flat_subsets(n: int, m: int, start: int, count: int):
    cur = T.unrank_subset(start, n, m)
    yield from cur
    for _ in range(count - 1):
        i = m - 1
        while cur[i] == n - m + i:
            i -= 1
        cur[i] += 1
        for j in range(i + 1, m):
            cur[j] = cur[j - 1] + 1
        yield from cur


def _check_block(colors: np.ndarray, subs: np.ndarray, checks_mask: int):
    k, m = subs.shape
    edges = T.edge_order(m)
    ne = len(edges)
    cols = np.empty((k, ne), dtype=np.int32)
    for t, (i, j) in enumerate(edges):
        cols[:, t] = colors[subs[:, i], subs[:, j]]

    counts = np.zeros(T.N_KINDS, dtype=np.int64)
    found: list[tuple[np.ndarray, int]] = []

    def record(mask: np.ndarray, kind: int):
        counts[kind] = int(mask.sum())
        if counts[kind]:
            found.append((np.nonzero(mask)[0], kind))

    if m == 3:
        if checks_mask & (1 << T.MONO_TRIANGLE):
            record((cols[:, 0] == cols[:, 1]) & (cols[:, 1] == cols[:, 2]), T.MONO_TRIANGLE)
    elif m == 4:
        s = np.sort(cols, axis=1)
        if checks_mask & (1 << T.PARITY_EVEN_K4):
            record(np.all(s[:, 0::2] == s[:, 1::2], axis=1), T.PARITY_EVEN_K4)
        if checks_mask & (1 << T.STRIPED_K4):
            # matchings {ab,cd} {ac,bd} {ad,bc} = slots (0,5) (1,4) (2,3)
            mk = (cols[:, 0] == cols[:, 5]) & (cols[:, 1] == cols[:, 4]) & (cols[:, 2] == cols[:, 3])
            mk &= (cols[:, 0] != cols[:, 1]) & (cols[:, 0] != cols[:, 2]) & (cols[:, 1] != cols[:, 2])
            record(mk, T.STRIPED_K4)
        if checks_mask & (1 << T.K4_TYPE_222):
            mk = (s[:, 0] == s[:, 1]) & (s[:, 2] == s[:, 3]) & (s[:, 4] == s[:, 5])
            mk &= (s[:, 1] != s[:, 2]) & (s[:, 3] != s[:, 4])
            record(mk, T.K4_TYPE_222)
    elif m == 5:
        s = np.sort(cols, axis=1)
        adjacent_eq = s[:, 1:] == s[:, :-1]
        if checks_mask & (1 << T.PARITY_EVEN_K5):
            record(np.all(s[:, 0::2] == s[:, 1::2], axis=1), T.PARITY_EVEN_K5)
        if checks_mask & (1 << T.K5_FEW_COLORS):
            distinct = ne - adjacent_eq.sum(axis=1)
            record(distinct <= 3, T.K5_FEW_COLORS)
        config_kinds = [kk for kk in (T.FORBIDDEN_1, T.FORBIDDEN_2, T.FORBIDDEN_3)
                        if checks_mask & (1 << kk)]
        if config_kinds:
            # a repeated color is necessary for any equality group to close
            dup_rows = np.nonzero(adjacent_eq.any(axis=1))[0]
            if len(dup_rows):
                sub = cols[dup_rows]
                tabs = dict(zip((T.FORBIDDEN_1, T.FORBIDDEN_2, T.FORBIDDEN_3), T.config_tables()))
                for kind in config_kinds:
                    tab = tabs[kind]
                    half = tab.shape[1] // 2
                    mk = np.zeros(len(sub), dtype=bool)
                    for row in tab:
                        ok = np.ones(len(sub), dtype=bool)
                        for g in (row[:half], row[half:]):
                            for e in g[1:]:
                                ok &= sub[:, g[0]] == sub[:, e]
                        mk |= ok
                    full = np.zeros(k, dtype=bool)
                    full[dup_rows[mk]] = True
                    record(full, kind)

    if not found:
        return counts, []
    rows = np.concatenate([r for r, _ in found])
    kinds = np.concatenate([np.full(len(r), kk, dtype=np.int64) for r, kk in found])
    order = np.lexsort((kinds, rows))
    hits = [(int(kinds[o]), tuple(int(x) for x in subs[rows[o]])) for o in order]
    return counts, hits


def scan_subsets(colors: np.ndarray, subs: np.ndarray, checks_mask: int):
    """Check explicit subsets (one per row). Returns (per-kind counts, hits)."""
    if len(subs) == 0:
        return np.zeros(T.N_KINDS, dtype=np.int64), []
    return _check_block(colors, np.ascontiguousarray(subs, dtype=np.int32), checks_mask)


def scan_range(colors: np.ndarray, m: int, start: int, count: int, checks_mask: int):
    """Check the lexicographic m-subsets with ranks [start, start+count)."""
    if count <= 0:
        return np.zeros(T.N_KINDS, dtype=np.int64), []
    n = colors.shape[0]
    flat = np.fromiter(_flat_subsets(n, m, start, count), dtype=np.int32, count=count * m)
    return _check_block(colors, flat.reshape(count, m), checks_mask)
