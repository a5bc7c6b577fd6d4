"""Randomized coloring of K_n with no all-even K_p, by resampling.

For p with C(p,2) even, a uniformly random t-coloring with
t = ceil(c * n^(4(p-2)/(p(p-1)))) avoids, with positive probability, every
K_p whose color classes all have even size. This module makes that
constructive: color uniformly, then repeatedly pick the lexicographically
least bad p-subset and redraw its C(p,2) edges until none remains
(Moser-Tardos). The probability accounting behind the local-lemma condition
is exposed for inspection alongside the loop.

Determinism contract: one seeded random.Random stream, consumed in a fixed
order (initial coloring edge by edge in lex order, then the resampled
subset's edges in lex order each round). Same seed, same everything.
"""
from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence, TextIO

import numpy as np

from ._kernel import get_backend
from ._kernel.tables import PARITY_EVEN_K4, PARITY_EVEN_K5
from .errors import ParameterError, ParityError


def _as_fraction(c) -> Fraction:
    try:
        frac = Fraction(c)
    except (TypeError, ValueError) as exc:
        raise ParameterError(f"constant c must be rational, got {c!r}") from exc
    if frac <= 0:
        raise ParameterError(f"constant c must be positive, got {c!r}")
    return frac


def _check_params(n: int, p: int) -> None:
    if p < 4:
        raise ParameterError(f"p must be at least 4, got {p}")
    if p % 4 not in (0, 1):
        raise ParityError(
            f"p={p} has C(p,2) odd; an all-even K_{p} cannot exist, nothing to avoid"
        )
    if n < p:
        raise ParameterError(f"need n >= p, got n={n}, p={p}")


def required_colors(n: int, p: int, c) -> int:
    """Smallest t >= c * n^(4(p-2)/(p(p-1))), and at least 1.

    Exact integer arithmetic: with exponent a/b in lowest terms and c = u/v,
    t is the least integer with (t*v)^b >= u^b * n^a.
    """
    _check_params(n, p)
    frac = _as_fraction(c)
    exp = Fraction(4 * (p - 2), p * (p - 1))
    a, b = exp.numerator, exp.denominator
    rhs = frac.numerator**b * n**a
    t = max(1, math.floor(float(frac) * n ** (a / b)) - 2)
    while (t * frac.denominator) ** b < rhs:
        t += 1
    return t


@lru_cache(maxsize=None)
def _even_partition_count(c: int, i: int) -> int:
    """Partitions of a c-element set into i unordered nonempty even blocks."""
    if c == 0:
        return 1 if i == 0 else 0
    if i == 0:
        return 0
    total = 0
    for k in range(2, c + 1, 2):
        total += math.comb(c - 1, k - 1) * _even_partition_count(c - k, i - 1)
    return total


@dataclass(frozen=True)
class BadProbabilityBound:
    """The displayed upper bound on P(a fixed K_p is bad), with its pieces.

    ``raw`` is the literal sum over admitted i of t^i * (i/t)^C; ``value``
    caps it at 1 (it is a probability bound). ``leading_term`` is the i=C/2
    summand (C/2)^C / t^(C/2), the source of the O(t^(-p(p-1)/4)) rate; it
    is computed separately so the two can be compared. The summand filter
    keeps i <= C/2 with C/i an even integer, as displayed; see
    exact_bad_probability for the ground truth it must dominate.
    """

    p: int
    t: int
    value: Fraction
    raw: Fraction
    leading_term: Fraction
    terms: tuple  # ((i, Fraction), ...) admitted summands


def bad_probability_bound(p: int, t: int) -> BadProbabilityBound:
    if p % 4 not in (0, 1):
        raise ParityError(f"p={p} has C(p,2) odd")
    if t < 1:
        raise ParameterError(f"need t >= 1, got {t}")
    ne = p * (p - 1) // 2
    terms = []
    for i in range(1, ne // 2 + 1):
        if ne % i == 0 and (ne // i) % 2 == 0:
            terms.append((i, Fraction(t**i * i**ne, t**ne)))
    raw = sum(term for _, term in terms)
    half = ne // 2
    leading = Fraction(half**ne, t**half)
    return BadProbabilityBound(
        p=p, t=t, value=min(raw, Fraction(1)), raw=raw, leading_term=leading, terms=tuple(terms)
    )


def exact_bad_probability(p: int, t: int) -> Fraction:
    """The true P(every color class of a uniform t-colored K_p is even).

    Sums over set partitions of the C(p,2) edges into i even blocks given
    distinct colors: count(i) * t(t-1)...(t-i+1) / t^C. Independent of the
    displayed bound, for cross-checking it.
    """
    ne = p * (p - 1) // 2
    total = Fraction(0)
    for i in range(1, ne // 2 + 1):
        cnt = _even_partition_count(ne, i)
        if cnt == 0:
            continue
        ff = 1
        for k in range(i):
            ff *= t - k
        if ff <= 0:
            continue
        total += Fraction(cnt * ff, t**ne)
    return total


class LLLCondition(NamedTuple):
    D: int
    satisfied: bool


def lll_condition(n: int, p: int, t: int) -> LLLCondition:
    """Dependency degree D = C(p,2)*C(n-2,p-2) and whether e*bound*(D+1) < 1."""
    _check_params(n, p)
    D = math.comb(p, 2) * math.comb(n - 2, p - 2)
    bound = bad_probability_bound(p, t).value
    return LLLCondition(D, math.e * float(bound) * (D + 1) < 1.0)


# ---------------------------------------------------------------------------
# The resampling loop.
# ---------------------------------------------------------------------------


@dataclass
class RandomColoring:
    """A t-coloring of K_n's edges, color ids 1..t, with its resample trail."""

    n: int
    t: int
    seed: int
    assignment: dict  # (u, w) with u < w -> color id in 1..t
    resample_log: tuple  # ((round, subset), ...)

    def color(self, u: int, w: int) -> int:
        return self.assignment[(u, w) if u < w else (w, u)]


@dataclass
class MTResult:
    converged: bool
    n: int
    p: int
    t: int
    seed: int
    rounds: int
    bad_count: int  # bad p-subsets remaining at stop (0 on success)
    coloring: Optional[RandomColoring]
    resample_log: tuple

    def to_json(self) -> dict:
        return {
            "converged": self.converged,
            "n": self.n,
            "p": self.p,
            "t": self.t,
            "seed": self.seed,
            "rounds": self.rounds,
            "bad_count": self.bad_count,
        }


def assignment_matrix(n: int, assignment: dict) -> np.ndarray:
    """Symmetric (n, n) int32 matrix from an edge->color map, -1 diagonal."""
    colors = np.full((n, n), -1, dtype=np.int32)
    for (u, w), cid in assignment.items():
        colors[u, w] = cid
        colors[w, u] = cid
    return colors


def initial_coloring(n: int, t: int, seed: int) -> dict:
    """The exact uniform sample the loop starts from (reproducibility anchor)."""
    rng = random.Random(seed)
    return {
        (u, w): rng.randrange(t) + 1 for u, w in itertools.combinations(range(n), 2)
    }


def is_all_even(colors: np.ndarray, subset: Sequence[int]) -> bool:
    """Every color class among the subset's edges has even size."""
    row = sorted(
        colors[u, w] for u, w in itertools.combinations(sorted(subset), 2)
    )
    return row[0::2] == row[1::2]


def _affected_subsets(n: int, subset: tuple, p: int) -> list:
    """All p-subsets sharing an edge (>= 2 vertices) with the resampled one,
    in a deterministic order."""
    inside = set(subset)
    others = [v for v in range(n) if v not in inside]
    out = []
    for k in range(2, p + 1):
        for a in itertools.combinations(subset, k):
            for b in itertools.combinations(others, p - k):
                out.append(tuple(sorted(a + b)))
    return out


def _scan_bad(kernel, colors: np.ndarray, n: int, p: int) -> set:
    if p in (4, 5):
        kind = PARITY_EVEN_K4 if p == 4 else PARITY_EVEN_K5
        _, hits = kernel.scan_range(colors, p, 0, math.comb(n, p), 1 << kind)
        return {sub for _, sub in hits}
    return {
        sub
        for sub in itertools.combinations(range(n), p)
        if is_all_even(colors, sub)
    }


def _recheck(kernel, colors: np.ndarray, affected: list, p: int) -> set:
    if p in (4, 5):
        kind = PARITY_EVEN_K4 if p == 4 else PARITY_EVEN_K5
        subs = np.array(affected, dtype=np.int32)
        _, hits = kernel.scan_subsets(colors, subs, 1 << kind)
        return {sub for _, sub in hits}
    return {sub for sub in affected if is_all_even(colors, sub)}


def moser_tardos(
    n: int,
    p: int,
    t: int,
    seed: int,
    max_rounds: int = 10**6,
    backend: Optional[str] = None,
) -> MTResult:
    """Sample, then resample the lex-least bad K_p until none remains.

    Returns an MTResult either way; ``converged`` distinguishes success from
    a budget-exhausted failure report. Never raises for non-convergence.
    """
    _check_params(n, p)
    if t < 1:
        raise ParameterError(f"need t >= 1, got {t}")
    if max_rounds < 0:
        raise ParameterError(f"max_rounds must be nonnegative, got {max_rounds}")
    kernel = get_backend(backend)
    rng = random.Random(seed)
    colors = np.full((n, n), -1, dtype=np.int32)
    for u, w in itertools.combinations(range(n), 2):
        cid = rng.randrange(t)
        colors[u, w] = cid
        colors[w, u] = cid
    bad = _scan_bad(kernel, colors, n, p)
    log = []
    while bad and len(log) < max_rounds:
        subset = min(bad)
        log.append((len(log) + 1, subset))
        for u, w in itertools.combinations(subset, 2):
            cid = rng.randrange(t)
            colors[u, w] = cid
            colors[w, u] = cid
        affected = _affected_subsets(n, subset, p)
        bad.difference_update(affected)
        bad.update(_recheck(kernel, colors, affected, p))
    assignment = {
        (u, w): int(colors[u, w]) + 1 for u, w in itertools.combinations(range(n), 2)
    }
    coloring = RandomColoring(n, t, seed, assignment, tuple(log))
    return MTResult(
        converged=not bad,
        n=n,
        p=p,
        t=t,
        seed=seed,
        rounds=len(log),
        bad_count=len(bad),
        coloring=coloring,
        resample_log=tuple(log),
    )


# ---------------------------------------------------------------------------
# On-disk format: one '# {json}' header line, then u,w,color_id rows.
# ---------------------------------------------------------------------------


def write_coloring_csv(out: TextIO, result: MTResult, c=None) -> None:
    header = {
        "n": result.n,
        "p": result.p,
        "t": result.t,
        "c": None if c is None else str(c),
        "seed": result.seed,
        "rounds": result.rounds,
    }
    out.write("# " + json.dumps(header, sort_keys=True) + "\n")
    out.write("u,w,color_id\n")
    for (u, w), cid in sorted(result.coloring.assignment.items()):
        out.write(f"{u},{w},{cid}\n")


def read_coloring_csv(src: TextIO) -> tuple[dict, dict]:
    first = src.readline()
    if not first.startswith("# "):
        raise ParameterError("missing header line")
    header = json.loads(first[2:])
    cols = src.readline().strip()
    if cols != "u,w,color_id":
        raise ParameterError(f"unexpected column line {cols!r}")
    assignment = {}
    for line in src:
        line = line.strip()
        if not line:
            continue
        u, w, cid = line.split(",")
        assignment[(int(u), int(w))] = int(cid)
    return header, assignment
