"""Forbidden-pattern verification over a concrete edge-colored K_n.

The central object is a ColoringOracle: a symmetric assignment of encoded
color byte strings to the edges of an indexed vertex list, interned to dense
integer ids so the scan kernels can work on an int32 matrix. ``scan`` walks
m-subsets (exhaustively in lexicographic rank order, or by seeded sampling)
and streams Violations; the per-subset ``check_*`` functions are independent
reference implementations of the same predicates, used to cross-validate the
kernels and to explain individual findings.

Scans are chunked over subset-rank ranges and merged in rank order, so the
violation stream and the summary are identical at any parallelism degree.
"""
from __future__ import annotations

import itertools
import json
import logging
import os
import random
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from . import _kernel
from ._kernel import tables as T
from .coloring import BitVector, Params, edge_color, encode_color
from .errors import ConfigurationError, ParameterError

log = logging.getLogger(__name__)

__all__ = [
    "ColoringOracle",
    "psi_oracle",
    "matrix_oracle",
    "ParityVector",
    "parity_vector",
    "is_bad_clique",
    "Violation",
    "check_striped_k4",
    "check_k4_type_222",
    "check_k5_min_colors",
    "check_forbidden_configs",
    "check_parity_even",
    "check_mono_odd_cycle",
    "scan",
    "ScanRun",
    "DEFAULT_CHECKS",
]

DEFAULT_CHECKS = {
    m: tuple(T.KIND_NAMES[k] for k in kinds) for m, kinds in T.DEFAULT_KINDS_FOR_M.items()
}


class ColoringOracle:
    """A symmetric, deterministic edge coloring of K_n with interned colors.

    ``labels[i]`` is the identifier reported for vertex i; colors are opaque
    byte strings, stored once in ``table`` and referenced by dense ids in an
    (n, n) int32 matrix (diagonal -1). Ids are assigned in first-appearance
    order along lexicographic edge enumeration, so construction is
    deterministic.
    """

    def __init__(self, labels: Sequence, ids: np.ndarray, table: Sequence[bytes]):
        self.labels = tuple(labels)
        self.ids = ids
        self.table = tuple(table)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def distinct_colors(self) -> int:
        return len(self.table)

    def color_id(self, i: int, j: int) -> int:
        if i == j:
            raise ParameterError("no color on a self-loop")
        return int(self.ids[i, j])

    def color_bytes(self, i: int, j: int) -> bytes:
        return self.table[self.color_id(i, j)]

    def color_hex(self, i: int, j: int) -> str:
        return self.color_bytes(i, j).hex()

    @classmethod
    def from_function(cls, labels: Sequence, color_fn: Callable[[int, int], bytes]) -> "ColoringOracle":
        n = len(labels)
        ids = np.full((n, n), -1, dtype=np.int32)
        interned: dict[bytes, int] = {}
        for i in range(n):
            for j in range(i + 1, n):
                cid = interned.setdefault(color_fn(i, j), len(interned))
                ids[i, j] = ids[j, i] = cid
        return cls(labels, ids, list(interned))

    def with_merged_color(self, src_edge: tuple[int, int], dst_edge: tuple[int, int]) -> "ColoringOracle":
        """Fault-injection control: every edge colored like src_edge is
        recolored with dst_edge's color. The result is still symmetric and
        deterministic, but generally violates the structural guarantees."""
        src = self.color_id(*src_edge)
        dst = self.color_id(*dst_edge)
        if src == dst:
            raise ParameterError("edges already share a color; nothing to merge")
        ids = self.ids.copy()
        ids[ids == src] = dst
        return ColoringOracle(self.labels, ids, self.table)


def psi_oracle(params: Params, vertices: Sequence[BitVector]) -> ColoringOracle:
    """Oracle for the layered coloring restricted to the given vertices."""
    return ColoringOracle.from_function(
        [v.to_string() for v in vertices],
        lambda i, j: encode_color(edge_color(params, vertices[i], vertices[j])),
    )


def matrix_oracle(assignment: np.ndarray, labels: Optional[Sequence] = None) -> ColoringOracle:
    """Oracle over small integer color ids (e.g. a random construction).

    ``assignment`` is a symmetric (n, n) integer matrix; colors encode as
    4-byte big-endian ids so reports stay readable.
    """
    n = assignment.shape[0]
    if labels is None:
        labels = list(range(n))
    return ColoringOracle.from_function(
        labels, lambda i, j: int(assignment[i, j]).to_bytes(4, "big")
    )


# ---------------------------------------------------------------------------
# Parity vectors.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParityVector:
    """Per-color parities of an edge set, kept sparse: only colors with odd
    intersection are stored. Equality compares supports."""

    support: frozenset

    def parity(self, color: bytes) -> int:
        return 1 if color in self.support else 0

    def __xor__(self, other: "ParityVector") -> "ParityVector":
        return ParityVector(self.support ^ other.support)

    @property
    def is_even(self) -> bool:
        return not self.support


def parity_vector(oracle: ColoringOracle, subset: Sequence[int]) -> ParityVector:
    if len(subset) < 2:
        raise ParameterError("parity vector needs at least two vertices")
    counts: Counter = Counter()
    for a, b in itertools.combinations(subset, 2):
        counts[oracle.color_bytes(a, b)] += 1
    return ParityVector(frozenset(c for c, k in counts.items() if k % 2))


def is_bad_clique(oracle: ColoringOracle, subset: Sequence[int]) -> bool:
    """True iff every color class meets the clique in an even number of edges.

    When the clique has an odd number of edges (p not 0 or 1 mod 4) some
    class is forced odd, so the answer is False without looking at colors.
    """
    p = len(subset)
    if comb(p, 2) % 2:
        log.debug("is_bad_clique: C(%d,2) is odd; no all-even copy can exist", p)
        return False
    return parity_vector(oracle, subset).is_even


# ---------------------------------------------------------------------------
# Violations and per-subset reference checks.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    vertices: tuple
    edges: tuple  # of (u_label, w_label, color_hex)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "edges": [{"u": u, "w": w, "color_hex": h} for u, w, h in self.edges],
        }

    def to_jsonl(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def _subset_violation(oracle: ColoringOracle, kind: str, subset: Sequence[int]) -> Violation:
    subset = tuple(subset)
    edges = tuple(
        (oracle.labels[a], oracle.labels[b], oracle.color_hex(a, b))
        for a, b in itertools.combinations(subset, 2)
    )
    return Violation(kind, tuple(oracle.labels[v] for v in subset), edges)


def check_striped_k4(oracle: ColoringOracle, quad: Sequence[int]) -> Optional[Violation]:
    """All three perfect matchings monochromatic, in pairwise distinct colors."""
    a, b, c, d = quad
    m1 = (oracle.color_bytes(a, b), oracle.color_bytes(c, d))
    m2 = (oracle.color_bytes(a, c), oracle.color_bytes(b, d))
    m3 = (oracle.color_bytes(a, d), oracle.color_bytes(b, c))
    values = []
    for lo, hi in (m1, m2, m3):
        if lo != hi:
            return None
        values.append(lo)
    if len(set(values)) != 3:
        return None
    return _subset_violation(oracle, "striped-k4", quad)


def check_k4_type_222(oracle: ColoringOracle, quad: Sequence[int]) -> Optional[Violation]:
    """Exactly three colors, each on exactly two edges (any shape)."""
    counts = Counter(oracle.color_bytes(a, b) for a, b in itertools.combinations(quad, 2))
    if sorted(counts.values()) == [2, 2, 2]:
        return _subset_violation(oracle, "k4-type-222", quad)
    return None


def check_k5_min_colors(oracle: ColoringOracle, quint: Sequence[int]) -> Optional[Violation]:
    distinct = len({oracle.color_bytes(a, b) for a, b in itertools.combinations(quint, 2)})
    if distinct <= 3:
        return _subset_violation(oracle, "k5-few-colors", quint)
    return None


def check_forbidden_configs(oracle: ColoringOracle, quint: Sequence[int]) -> list[Violation]:
    """Test the three forbidden 5-vertex equality patterns over all labelings.

    Deliberately written as a literal labeling sweep (not via the kernels'
    deduplicated instance tables) so the two routes check each other. Emits
    at most one Violation per pattern.
    """
    col = oracle.color_bytes
    matched = [False, False, False]
    for a, b, c, d, e in itertools.permutations(quint):
        if not matched[0] and col(a, b) == col(c, d) and col(a, c) == col(a, d):
            matched[0] = True
        if not matched[1] and (
            col(a, b) == col(b, c) == col(c, d) and col(a, c) == col(c, e) == col(d, e)
        ):
            matched[1] = True
        if not matched[2] and (
            col(a, b) == col(a, e) == col(c, e) and col(a, d) == col(d, e) == col(b, c)
        ):
            matched[2] = True
        if all(matched):
            break
    return [
        _subset_violation(oracle, f"forbidden-config-{k + 1}", quint)
        for k in range(3)
        if matched[k]
    ]


def check_parity_even(oracle: ColoringOracle, subset: Sequence[int]) -> Optional[Violation]:
    """All-even parity vector on a clique of 4 or 5 vertices."""
    p = len(subset)
    if p not in (4, 5):
        raise ConfigurationError(f"parity check defined for subsets of size 4 or 5, got {p}")
    if is_bad_clique(oracle, subset):
        return _subset_violation(oracle, f"parity-even-k{p}", subset)
    return None


def check_mono_odd_cycle(
    oracle: ColoringOracle, subset: Optional[Sequence[int]] = None
) -> list[Violation]:
    """One Violation per color class that is not bipartite on the subset.

    Equivalent to forbidding monochromatic odd cycles; evidence is an
    explicit odd cycle recovered from the 2-coloring conflict.
    """
    verts = list(range(oracle.n)) if subset is None else list(subset)
    by_color: dict[int, list[tuple[int, int]]] = {}
    for a, b in itertools.combinations(verts, 2):
        by_color.setdefault(oracle.color_id(a, b), []).append((a, b))
    out = []
    for cid in sorted(by_color):
        cycle = _find_odd_cycle(by_color[cid])
        if cycle is None:
            continue
        hexcol = oracle.table[cid].hex()
        edges = tuple(
            (oracle.labels[cycle[k]], oracle.labels[cycle[(k + 1) % len(cycle)]], hexcol)
            for k in range(len(cycle))
        )
        out.append(Violation("mono-odd-cycle", tuple(oracle.labels[v] for v in cycle), edges))
    return out


def _find_odd_cycle(edges: list[tuple[int, int]]) -> Optional[list[int]]:
    """An odd cycle in the graph given by ``edges``, or None if bipartite."""
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    side: dict[int, int] = {}
    parent: dict[int, Optional[int]] = {}
    for root in sorted(adj):
        if root in side:
            continue
        side[root] = 0
        parent[root] = None
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v in adj[u]:
                if v not in side:
                    side[v] = side[u] ^ 1
                    parent[v] = u
                    queue.append(v)
                elif side[v] == side[u]:
                    return _close_cycle(u, v, parent)
    return None


def _close_cycle(u: int, v: int, parent: dict) -> list[int]:
    # walk both BFS paths to the root; the cycle is u..lca..v plus edge (v,u)
    pu, pv = [u], [v]
    while parent[pu[-1]] is not None:
        pu.append(parent[pu[-1]])
    while parent[pv[-1]] is not None:
        pv.append(parent[pv[-1]])
    anc_u = set(pu)
    k = next(i for i, x in enumerate(pv) if x in anc_u)
    lca = pv[k]
    cycle = pu[: pu.index(lca)] + [lca] + pv[:k][::-1]
    assert len(cycle) % 2 == 1, "conflict edge inside one BFS side must close an odd cycle"
    return cycle


# ---------------------------------------------------------------------------
# Chunked scans.
# ---------------------------------------------------------------------------


def _resolve_checks(m: int, checks: Optional[Iterable[str]]) -> tuple[int, tuple[str, ...]]:
    if m not in T.KINDS_FOR_M:
        raise ConfigurationError(f"subset size m={m} not supported (use 3, 4 or 5)")
    if checks is None:
        names = DEFAULT_CHECKS[m]
    else:
        names = tuple(checks)
    allowed = {T.KIND_NAMES[k] for k in T.KINDS_FOR_M[m]}
    mask = 0
    for name in names:
        if name not in allowed:
            raise ConfigurationError(f"check {name!r} is incompatible with m={m}")
        mask |= 1 << T.KIND_NAMES.index(name)
    if not mask:
        raise ConfigurationError("no checks requested")
    return mask, names


def _default_jobs() -> int:
    raw = os.environ.get("PARITY_RAMSEY_JOBS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass
class ScanSummary:
    n: int
    m: int
    mode: str
    checks: tuple[str, ...]
    subsets_scanned: int
    violations: dict
    backend: str
    jobs: int
    elapsed_seconds: float
    distinct_subsets: Optional[int] = None

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "m": self.m,
            "mode": self.mode,
            "checks": list(self.checks),
            "subsets_scanned": self.subsets_scanned,
            "violations": dict(self.violations),
            "backend": self.backend,
            "jobs": self.jobs,
            "elapsed_seconds": self.elapsed_seconds,
        }
        if self.distinct_subsets is not None:
            out["distinct_subsets"] = self.distinct_subsets
        return out


class ScanRun:
    """Streaming scan result: iterate for Violations (in deterministic
    (subset rank, kind) order), then read ``.summary``."""

    def __init__(self, oracle, m, mask, names, mode, samples, seed, jobs, chunk_size, backend):
        self._oracle = oracle
        self._m = m
        self._mask = mask
        self._names = names
        self._mode = mode
        self._samples = samples
        self._seed = seed
        self._jobs = jobs
        self._chunk = chunk_size
        self._backend = backend
        self.summary: Optional[ScanSummary] = None

    def __iter__(self) -> Iterator[Violation]:
        started = time.perf_counter()
        counts = np.zeros(T.N_KINDS, dtype=np.int64)
        oracle = self._oracle
        kernel = _kernel.get_backend(self._backend)
        colors = np.ascontiguousarray(oracle.ids, dtype=np.int32)
        distinct = None

        if self._mode == "exhaustive":
            total = comb(oracle.n, self._m)
            tasks = [
                (start, min(self._chunk, total - start))
                for start in range(0, total, self._chunk)
            ]
            run_one = lambda t: kernel.scan_range(colors, self._m, t[0], t[1], self._mask)
        else:
            rng = random.Random(self._seed)
            draws = [
                tuple(sorted(rng.sample(range(oracle.n), self._m)))
                for _ in range(self._samples)
            ]
            distinct = len(set(draws))
            total = len(draws)
            arr = np.array(draws, dtype=np.int32).reshape(total, self._m)
            tasks = [
                (start, min(self._chunk, total - start))
                for start in range(0, total, self._chunk)
            ]
            run_one = lambda t: kernel.scan_subsets(colors, arr[t[0] : t[0] + t[1]], self._mask)

        # waves of chunks keep task submission bounded while preserving order
        wave = max(1, self._jobs) * 4
        with ThreadPoolExecutor(max_workers=max(1, self._jobs)) as pool:
            for base in range(0, len(tasks), wave):
                for chunk_counts, hits in pool.map(run_one, tasks[base : base + wave]):
                    counts += chunk_counts
                    for kind_id, subset in hits:
                        yield _subset_violation(oracle, T.KIND_NAMES[kind_id], subset)

        self.summary = ScanSummary(
            n=oracle.n,
            m=self._m,
            mode=self._mode,
            checks=self._names,
            subsets_scanned=total,
            violations={name: int(counts[T.KIND_NAMES.index(name)]) for name in self._names},
            backend=kernel.BACKEND_NAME,
            jobs=self._jobs,
            elapsed_seconds=round(time.perf_counter() - started, 6),
            distinct_subsets=distinct,
        )


def scan(
    oracle: ColoringOracle,
    m: int,
    checks: Optional[Iterable[str]] = None,
    *,
    mode: str = "exhaustive",
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    jobs: Optional[int] = None,
    chunk_size: int = 131072,
    backend: Optional[str] = None,
) -> ScanRun:
    """Scan m-subsets of the oracle's vertices for the requested checks.

    mode="exhaustive" walks all C(n, m) subsets in lexicographic rank order;
    mode="sample" draws ``samples`` uniform m-subsets from a seeded stream
    (collisions across draws allowed and reported). Violations stream in
    (rank, kind) order regardless of ``jobs``; identical inputs give
    identical outputs at any parallelism.
    """
    mask, names = _resolve_checks(m, checks)
    if mode == "exhaustive":
        if samples is not None:
            raise ConfigurationError("samples only applies to mode='sample'")
    elif mode == "sample":
        if not samples or samples < 1:
            raise ConfigurationError("mode='sample' needs a positive sample count")
        if seed is None:
            raise ParameterError("mode='sample' requires an explicit seed")
    else:
        raise ConfigurationError(f"unknown scan mode {mode!r}")
    if oracle.n < m:
        raise ConfigurationError(f"need at least m={m} vertices, have {oracle.n}")
    if chunk_size < 1:
        raise ConfigurationError("chunk_size must be positive")
    return ScanRun(
        oracle,
        m,
        mask,
        names,
        mode,
        samples,
        seed,
        jobs if jobs is not None else _default_jobs(),
        chunk_size,
        backend,
    )
