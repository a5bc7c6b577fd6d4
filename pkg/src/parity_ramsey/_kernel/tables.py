"""Shared constants for the subset-scan kernels.

Both kernel backends (compiled and numpy) consume the same kind registry,
edge orders and forbidden-configuration instance tables, so their outputs are
comparable entry for entry.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

import numpy as np

# Kind ids are stable across backends and releases; JSONL reports use the
# names. The triangle check is the subset-size-3 face of the odd-cycle kind.
PARITY_EVEN_K5 = 0
K5_FEW_COLORS = 1
FORBIDDEN_1 = 2
FORBIDDEN_2 = 3
FORBIDDEN_3 = 4
PARITY_EVEN_K4 = 5
STRIPED_K4 = 6
K4_TYPE_222 = 7
MONO_TRIANGLE = 8

N_KINDS = 9

KIND_NAMES = (
    "parity-even-k5",
    "k5-few-colors",
    "forbidden-config-1",
    "forbidden-config-2",
    "forbidden-config-3",
    "parity-even-k4",
    "striped-k4",
    "k4-type-222",
    "mono-odd-cycle",
)

KINDS_FOR_M = {3: (MONO_TRIANGLE,), 4: (PARITY_EVEN_K4, STRIPED_K4, K4_TYPE_222), 5: (PARITY_EVEN_K5, K5_FEW_COLORS, FORBIDDEN_1, FORBIDDEN_2, FORBIDDEN_3)}

# Scan defaults: size 5 runs everything; size 4 runs the two structural
# checks (the parity check at size 4 is opt-in, used when auditing p=4
# random constructions); size 3 has only the triangle check.
DEFAULT_KINDS_FOR_M = {
    3: (MONO_TRIANGLE,),
    4: (STRIPED_K4, K4_TYPE_222),
    5: KINDS_FOR_M[5],
}


def edge_order(m: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(m) for j in range(i + 1, m)]

EDGES5 = edge_order(5)
EDGES4 = edge_order(4)
_SLOT5 = {e: k for k, e in enumerate(EDGES5)}


def _slot(a: int, b: int) -> int:
    return _SLOT5[(a, b) if a < b else (b, a)]


@lru_cache(maxsize=None)
def config_tables() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Instance tables for the three forbidden 5-vertex configurations.

    Each row lists edge slots (in the fixed 10-edge order) that must be
    equal: rows of the first table are [e1,e2,f1,f2] meaning c[e1]==c[e2]
    and c[f1]==c[f2]; the other two use two triples. Instances are deduped
    over all 120 labelings (the two equality groups are unordered) and
    sorted, so every backend walks them in the same order.
    """
    insts1, insts2, insts3 = set(), set(), set()
    for a, b, c, d, e in itertools.permutations(range(5)):
        g1 = tuple(sorted((_slot(a, b), _slot(c, d))))
        g2 = tuple(sorted((_slot(a, c), _slot(a, d))))
        insts1.add(tuple(sorted((g1, g2))))
        g1 = tuple(sorted((_slot(a, b), _slot(b, c), _slot(c, d))))
        g2 = tuple(sorted((_slot(a, c), _slot(c, e), _slot(d, e))))
        insts2.add(tuple(sorted((g1, g2))))
        g1 = tuple(sorted((_slot(a, b), _slot(a, e), _slot(c, e))))
        g2 = tuple(sorted((_slot(a, d), _slot(d, e), _slot(b, c))))
        insts3.add(tuple(sorted((g1, g2))))

    def flatten(insts):
        rows = sorted(g1 + g2 for g1, g2 in insts)
        return np.array(rows, dtype=np.int32)

    return flatten(insts1), flatten(insts2), flatten(insts3)


@lru_cache(maxsize=None)
def comb_table(n: int, m: int) -> np.ndarray:
    """C(a, b) for a <= n, b <= m as int64 (enough for n <= 4096, m <= 5)."""
    tab = np.zeros((n + 1, m + 1), dtype=np.int64)
    for a in range(n + 1):
        for b in range(m + 1):
            tab[a, b] = comb(a, b)
    return tab


def unrank_subset(rank: int, n: int, m: int) -> list[int]:
    """The rank-th m-subset of range(n) in lexicographic order."""
    out = []
    x = 0
    r = rank
    for pos in range(m):
        v = x
        while True:
            c = comb(n - 1 - v, m - 1 - pos)
            if r < c:
                break
            r -= c
            v += 1
        out.append(v)
        x = v + 1
    return out
