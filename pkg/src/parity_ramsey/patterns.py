"""Exhaustive classification of edge-colored K5 shapes up to isomorphism.

A Pattern is a coloring of the 10 edges of K5 (or 6 of K4) by small integer
ids, normalized so ids appear as 1, 2, 3, ... along the fixed edge order
ab ac ad ae bc bd be cd ce de. Canonical form is the lexicographically least
normalized word over all 120 vertex permutations; with 5 vertices brute
force beats cleverness.

The module enumerates all colorings of a given color type (class-size
multiset), applies the structural filters that any valid layered coloring
imposes on its cliques, and buckets the survivors by their number of
monochromatic 2-edge paths. The filters, in order:

  k4-222            no K4 sub-pattern with three colors twice each
  striped-k4        no K4 whose three matchings are mono in distinct colors
  forbidden-config-1/2/3   the three 5-vertex equality patterns
  mono-odd-cycle    no color class containing an odd cycle
  claim31           no special vertex with profile (s, 1)
  core-multiplicity no vertex that is the core of two monochromatic paths

The last two encode the classification argument's special-vertex bookkeeping
and are specific to the all-pairs type (2,2,2,2,2); on other types they do
not apply and pass everything through.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import MultiplicityError, NotSpecialError, ParameterError

EDGE_ORDER5 = ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
EDGE_ORDER4 = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
_SLOT5 = {e: k for k, e in enumerate(EDGE_ORDER5)}
_SLOT4 = {e: k for k, e in enumerate(EDGE_ORDER4)}

ALL_PAIRS_TYPE = (2, 2, 2, 2, 2)


def _slot5(a: int, b: int) -> int:
    return _SLOT5[(a, b) if a < b else (b, a)]


def normalize_word(word: Sequence[int]) -> tuple[int, ...]:
    """Renumber ids by first appearance: 1, 2, 3, ..."""
    seen: dict = {}
    return tuple(seen.setdefault(c, len(seen) + 1) for c in word)


@lru_cache(maxsize=None)
def _perm_maps(order: int) -> tuple[tuple[int, ...], ...]:
    """For each vertex permutation, dst[k] = slot receiving old slot k."""
    edges = EDGE_ORDER5 if order == 5 else EDGE_ORDER4
    slots = {e: k for k, e in enumerate(edges)}
    maps = []
    for perm in itertools.permutations(range(order)):
        dst = [0] * len(edges)
        for k, (i, j) in enumerate(edges):
            a, b = perm[i], perm[j]
            dst[k] = slots[(a, b) if a < b else (b, a)]
        maps.append(tuple(dst))
    return tuple(maps)


def canonical_word(word: Sequence[int], order: int = 5) -> tuple[int, ...]:
    ne = len(word)
    best = None
    scratch = [0] * ne
    for dst in _perm_maps(order):
        for k in range(ne):
            scratch[dst[k]] = word[k]
        cand = normalize_word(scratch)
        if best is None or cand < best:
            best = cand
    return best


@dataclass(frozen=True)
class Pattern:
    """An edge-colored K4 or K5 shape with normalized integer color ids."""

    order: int
    labels: tuple[int, ...]
    is_canonical: bool = False

    def __post_init__(self):
        expected = self.order * (self.order - 1) // 2
        if len(self.labels) != expected:
            raise ParameterError(f"order {self.order} needs {expected} edge labels")

    @classmethod
    def from_labels(cls, labels: Sequence, order: int = 5) -> "Pattern":
        return cls(order, normalize_word(labels))

    @classmethod
    def from_text(cls, text: str) -> "Pattern":
        parts = text.split()
        order = 5 if len(parts) == 10 else 4
        return cls.from_labels([int(x) for x in parts], order)

    def to_text(self) -> str:
        return " ".join(str(x) for x in self.labels)

    def canonical(self) -> "Pattern":
        if self.is_canonical:
            return self
        return Pattern(self.order, canonical_word(self.labels, self.order), True)

    def color_type(self) -> tuple[int, ...]:
        return tuple(sorted(Counter(self.labels).values()))

    def sub_k4(self, keep: Sequence[int]) -> "Pattern":
        """The induced K4 pattern on 4 of the 5 vertices (ids renormalized)."""
        keep = sorted(keep)
        word = [self.labels[_slot5(a, b)] for a, b in itertools.combinations(keep, 2)]
        return Pattern.from_labels(word, 4)


# ---------------------------------------------------------------------------
# Enumeration.
# ---------------------------------------------------------------------------


def _perfect_matchings(slots: tuple[int, ...]):
    if not slots:
        yield ()
        return
    first, rest = slots[0], slots[1:]
    for k in range(len(rest)):
        for tail in _perfect_matchings(rest[:k] + rest[k + 1 :]):
            yield ((first, rest[k]),) + tail


def enumerate_22222() -> list[Pattern]:
    """All 945 partitions of K5's edges into five unordered pairs."""
    out = []
    for matching in _perfect_matchings(tuple(range(10))):
        word = [0] * 10
        for cid, (a, b) in enumerate(matching, start=1):
            word[a] = word[b] = cid
        out.append(Pattern.from_labels(word, 5))
    return out


def enumerate_2224() -> list[Pattern]:
    """All 3150 labeled colorings of type (2,2,2,4): a 4-edge class plus a
    perfect matching on the remaining 6 slots."""
    out = []
    for big in itertools.combinations(range(10), 4):
        rest = tuple(s for s in range(10) if s not in big)
        for matching in _perfect_matchings(rest):
            word = [0] * 10
            for s in big:
                word[s] = 9
            for cid, (a, b) in enumerate(matching, start=1):
                word[a] = word[b] = cid
            out.append(Pattern.from_labels(word, 5))
    return out


def even_color_types() -> list[tuple[int, ...]]:
    """Class-size multisets with every size even, summing to 10 (descending)."""

    def rec(left: int, cap: int):
        if left == 0:
            yield ()
            return
        for part in range(min(left, cap), 1, -1):
            if part % 2 == 0:
                for tail in rec(left - part, part):
                    yield (part,) + tail

    return list(rec(10, 10))


def enumerate_type(sizes: Sequence[int]) -> list[Pattern]:
    """All colorings of K5 with the given class-size multiset, one per edge
    partition (classes of equal size are unordered)."""
    if sum(sizes) != 10 or any(s < 1 for s in sizes):
        raise ParameterError(f"sizes must be positive and sum to 10, got {sizes}")
    words: list[tuple[int, ...]] = []
    assign = [0] * 10

    def rec(remaining: tuple[int, ...], left: tuple[int, ...], prev_size: int, prev_min: int):
        if not left:
            words.append(normalize_word(assign))
            return
        size = left[0]
        for k, m in enumerate(remaining):
            # equal-size classes in ascending order of least slot
            if size == prev_size and m <= prev_min:
                continue
            for rest in itertools.combinations(remaining[k + 1 :], size - 1):
                cls = (m,) + rest
                for s in cls:
                    assign[s] = len(left)
                rec(tuple(s for s in remaining if s not in cls), left[1:], size, m)

    rec(tuple(range(10)), tuple(sorted(sizes, reverse=True)), 0, -1)
    return [Pattern.from_labels(word) for word in sorted(set(words))]


# ---------------------------------------------------------------------------
# Structure queries.
# ---------------------------------------------------------------------------


def _incident_slots(v: int) -> list[int]:
    return [_slot5(v, u) for u in range(5) if u != v]


def mono_k12s(p: Pattern) -> list[tuple[int, int, int]]:
    """All monochromatic 2-edge paths as (core, root, root) triples."""
    out = []
    for core in range(5):
        others = [u for u in range(5) if u != core]
        for x, y in itertools.combinations(others, 2):
            if p.labels[_slot5(core, x)] == p.labels[_slot5(core, y)]:
                out.append((core, x, y))
    return out


def mono_k12_count(p: Pattern) -> int:
    return len(mono_k12s(p))


def core_counts(p: Pattern) -> tuple[int, ...]:
    counts = [0] * 5
    for core, _, _ in mono_k12s(p):
        counts[core] += 1
    return tuple(counts)


class SpecialVertexProfile(NamedTuple):
    s: int  # monochromatic 2-edge paths having v as a root
    t: int  # monochromatic 2-edge paths inside the K4 on the other vertices


def special_vertex_profile(p: Pattern, v: int) -> SpecialVertexProfile:
    """Profile (s, t) of a vertex that cores exactly one monochromatic path.

    The classification's alphabet is {0,1,2} for each coordinate; larger
    values can only arise on patterns other filters already exclude.
    """
    paths = mono_k12s(p)
    cored = sum(1 for core, _, _ in paths if core == v)
    if cored == 0:
        raise NotSpecialError(f"vertex {v} is not the core of any monochromatic path")
    if cored > 1:
        raise MultiplicityError(f"vertex {v} cores {cored} monochromatic paths")
    s = sum(1 for _, x, y in paths if v in (x, y))
    others = [u for u in range(5) if u != v]
    t = _k4_mono_k12_count(p.sub_k4(others))
    return SpecialVertexProfile(s, t)


def _k4_mono_k12_count(q: Pattern) -> int:
    count = 0
    for core in range(4):
        incident = [_SLOT4[(min(core, u), max(core, u))] for u in range(4) if u != core]
        for a, b in itertools.combinations(incident, 2):
            if q.labels[a] == q.labels[b]:
                count += 1
    return count


# ---------------------------------------------------------------------------
# Filters.
# ---------------------------------------------------------------------------


def has_k4_type_222(p: Pattern) -> bool:
    for quad in itertools.combinations(range(5), 4):
        if p.sub_k4(quad).color_type() == (2, 2, 2):
            return True
    return False


def has_striped_k4(p: Pattern) -> bool:
    for quad in itertools.combinations(range(5), 4):
        w = p.sub_k4(quad).labels
        # matchings {ab,cd} {ac,bd} {ad,bc} = slots (0,5) (1,4) (2,3)
        if w[0] == w[5] and w[1] == w[4] and w[2] == w[3]:
            if w[0] != w[1] and w[0] != w[2] and w[1] != w[2]:
                return True
    return False


@lru_cache(maxsize=None)
def _config_groups(which: int) -> tuple:
    insts = set()
    for a, b, c, d, e in itertools.permutations(range(5)):
        if which == 1:
            g1 = (_slot5(a, b), _slot5(c, d))
            g2 = (_slot5(a, c), _slot5(a, d))
        elif which == 2:
            g1 = (_slot5(a, b), _slot5(b, c), _slot5(c, d))
            g2 = (_slot5(a, c), _slot5(c, e), _slot5(d, e))
        else:
            g1 = (_slot5(a, b), _slot5(a, e), _slot5(c, e))
            g2 = (_slot5(a, d), _slot5(d, e), _slot5(b, c))
        insts.add(tuple(sorted((tuple(sorted(g1)), tuple(sorted(g2))))))
    return tuple(sorted(insts))


def matches_forbidden_config(p: Pattern, which: int) -> bool:
    if which not in (1, 2, 3):
        raise ParameterError("configuration index must be 1, 2 or 3")
    w = p.labels
    for g1, g2 in _config_groups(which):
        if all(w[e] == w[g[0]] for g in (g1, g2) for e in g[1:]):
            return True
    return False


def has_mono_odd_cycle(p: Pattern) -> bool:
    """On 5 vertices a monochromatic odd cycle is a triangle or a 5-cycle."""
    for tri in itertools.combinations(range(5), 3):
        e = [p.labels[_slot5(a, b)] for a, b in itertools.combinations(tri, 2)]
        if e[0] == e[1] == e[2]:
            return True
    for cls, size in Counter(p.labels).items():
        if size >= 5:
            edges = [EDGE_ORDER5[k] for k, c in enumerate(p.labels) if c == cls]
            if _has_odd_cycle(edges):
                return True
    return False


def _has_odd_cycle(edges: list[tuple[int, int]]) -> bool:
    side: dict[int, int] = {}
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    for root in adj:
        if root in side:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in side:
                    side[v] = side[u] ^ 1
                    stack.append(v)
                elif side[v] == side[u]:
                    return True
    return False


def violates_claim31(p: Pattern) -> bool:
    """Some vertex coring exactly one monochromatic path has profile (s, 1)."""
    counts = core_counts(p)
    for v in range(5):
        if counts[v] == 1 and special_vertex_profile(p, v).t == 1:
            return True
    return False


def has_core_multiplicity(p: Pattern) -> bool:
    return any(c >= 2 for c in core_counts(p))


def _all_pairs_only(fn):
    def wrapped(p: Pattern) -> bool:
        return p.color_type() == ALL_PAIRS_TYPE and fn(p)

    return wrapped


FILTERS: tuple[tuple[str, object], ...] = (
    ("k4-222", has_k4_type_222),
    ("striped-k4", has_striped_k4),
    ("forbidden-config-1", lambda p: matches_forbidden_config(p, 1)),
    ("forbidden-config-2", lambda p: matches_forbidden_config(p, 2)),
    ("forbidden-config-3", lambda p: matches_forbidden_config(p, 3)),
    ("mono-odd-cycle", has_mono_odd_cycle),
    ("claim31", _all_pairs_only(violates_claim31)),
    ("core-multiplicity", _all_pairs_only(has_core_multiplicity)),
)

FILTER_NAMES = tuple(name for name, _ in FILTERS)


# ---------------------------------------------------------------------------
# Classification.
# ---------------------------------------------------------------------------


@dataclass
class ClassificationReport:
    color_type: Optional[tuple[int, ...]]
    raw_count: int
    class_count: int
    filtered: dict  # filter name -> classes removed (first filter to fire)
    skipped: tuple[str, ...]
    survivors: list  # canonical Patterns
    buckets: dict  # mono-K12 count -> list of canonical Patterns

    @property
    def survivor_count(self) -> int:
        return len(self.survivors)

    def bucket_counts(self) -> dict[int, int]:
        return {k: len(v) for k, v in sorted(self.buckets.items())}

    def to_json(self) -> dict:
        return {
            "color_type": list(self.color_type) if self.color_type else None,
            "raw_count": self.raw_count,
            "class_count": self.class_count,
            "filtered": dict(self.filtered),
            "skipped_filters": list(self.skipped),
            "survivor_count": self.survivor_count,
            "buckets": {str(k): [p.to_text() for p in v] for k, v in sorted(self.buckets.items())},
        }


def filter_and_classify(
    patterns: Optional[Iterable[Pattern]] = None, skip: Iterable[str] = ()
) -> ClassificationReport:
    """Deduplicate, filter and bucket patterns by monochromatic-path count.

    ``skip`` names filters to disable (ablation support). Input defaults to
    the 945 all-pairs colorings.
    """
    skip = tuple(skip)
    unknown = set(skip) - set(FILTER_NAMES)
    if unknown:
        raise ParameterError(f"unknown filters {sorted(unknown)}; known: {FILTER_NAMES}")
    pats = list(patterns) if patterns is not None else enumerate_22222()
    raw_count = len(pats)
    classes = sorted({p.canonical().labels for p in pats})
    types = {Pattern(5, w).color_type() for w in classes}
    filtered: dict[str, int] = {}
    survivors = []
    for word in classes:
        pat = Pattern(5, word, True)
        for name, fn in FILTERS:
            if name in skip:
                continue
            if fn(pat):
                filtered[name] = filtered.get(name, 0) + 1
                break
        else:
            survivors.append(pat)
    buckets: dict[int, list[Pattern]] = {}
    for pat in survivors:
        buckets.setdefault(mono_k12_count(pat), []).append(pat)
    return ClassificationReport(
        color_type=types.pop() if len(types) == 1 else None,
        raw_count=raw_count,
        class_count=len(classes),
        filtered=filtered,
        skipped=skip,
        survivors=survivors,
        buckets=buckets,
    )


def enumerate_2224_and_filter(skip: Iterable[str] = ()) -> ClassificationReport:
    return filter_and_classify(enumerate_2224(), skip=skip)


EXPECTED_BUCKET_COUNTS = {0: 1, 1: 1, 3: 1, 4: 1, 5: 1}


def matches_expected_classification(report: ClassificationReport) -> bool:
    """The all-pairs contract: five classes, one per count in {0,1,3,4,5}."""
    return report.bucket_counts() == EXPECTED_BUCKET_COUNTS


def watch_list() -> list[Pattern]:
    """Canonical shapes of every combinatorially possible all-even K5 that
    passes the filters, across all even color types. Scans search for these;
    under a valid coloring none should ever appear."""
    out: list[Pattern] = []
    for sizes in even_color_types():
        report = filter_and_classify(enumerate_type(sizes))
        out.extend(report.survivors)
    return out


def canonical_from_colors(colors: Sequence) -> Pattern:
    """Bridge from a scan finding: the canonical Pattern of 10 edge colors
    given in the fixed edge order (colors may be any hashable values)."""
    if len(colors) != 10:
        raise ParameterError(f"expected 10 edge colors, got {len(colors)}")
    return Pattern.from_labels(normalize_word(colors), 5).canonical()
