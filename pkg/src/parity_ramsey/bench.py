"""Timing harness for the scan kernels.

The same subset scan runs on every available backend (compiled and numpy)
over identical inputs; results include throughput so the two can be compared
honestly. Used by the `bench` subcommand and by anyone deciding whether the
compiled extension matters on their machine.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from ._kernel import available_backends, get_backend
from ._kernel.tables import DEFAULT_KINDS_FOR_M
from .coloring import derive_params, enumerate_vertices
from .verify import psi_oracle


@dataclass(frozen=True)
class BenchResult:
    backend: str
    n: int
    m: int
    checks: tuple
    subsets: int
    seconds: float

    @property
    def subsets_per_second(self) -> float:
        return self.subsets / self.seconds if self.seconds > 0 else float("inf")

    def to_json(self) -> dict:
        return {
            "backend": self.backend,
            "n": self.n,
            "m": self.m,
            "checks": list(self.checks),
            "subsets": self.subsets,
            "seconds": round(self.seconds, 6),
            "subsets_per_second": round(self.subsets_per_second),
        }


def run_bench(
    n: int = 48,
    m: int = 5,
    beta: int = 2,
    repeats: int = 3,
    backends: Optional[Sequence[str]] = None,
) -> list[BenchResult]:
    """Scan all C(n, m) subsets of the lex-first universe once per backend.

    Reports the best of ``repeats`` wall times; the oracle is built once so
    only kernel time is measured.
    """
    params = derive_params(beta)
    oracle = psi_oracle(params, enumerate_vertices(params, n))
    kinds = DEFAULT_KINDS_FOR_M[m]
    mask = 0
    for k in kinds:
        mask |= 1 << k
    total = comb(n, m)
    out = []
    for name in backends or available_backends():
        kernel = get_backend(name)
        best = float("inf")
        for _ in range(max(1, repeats)):
            t0 = time.perf_counter()
            counts, hits = kernel.scan_range(oracle.ids, m, 0, total, mask)
            best = min(best, time.perf_counter() - t0)
        out.append(BenchResult(name, n, m, kinds, total, best))
    return out


def format_table(results: Sequence[BenchResult]) -> str:
    lines = [f"{'backend':<8} {'n':>4} {'m':>2} {'subsets':>10} {'seconds':>9} {'subsets/s':>12}"]
    for r in results:
        lines.append(
            f"{r.backend:<8} {r.n:>4} {r.m:>2} {r.subsets:>10} {r.seconds:>9.3f} {r.subsets_per_second:>12.0f}"
        )
    if len(results) == 2 and results[0].seconds > 0 and results[1].seconds > 0:
        slow, fast = sorted(results, key=lambda r: r.seconds, reverse=True)
        lines.append(f"speedup: {fast.backend} is {slow.seconds / fast.seconds:.1f}x {slow.backend}")
    return "\n".join(lines)
