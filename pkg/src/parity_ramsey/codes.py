"""Parity-class graph codes on up to 7 labeled vertices.

Every graph on [n] gets a signature: one parity bit per color of a fixed
edge coloring, the parity of the graph's intersection with that color
class. Signatures are linear under symmetric difference, so graphs sharing
a signature form a class in which any two members differ by an all-even
edge set. If the coloring admits no K5 with all color classes even, no two
members of a class can differ by exactly a 5-clique, making the class a
K5-code. The module builds the classes, picks a largest one, and verifies
the code property by clique flips rather than pairwise differencing.

Graph encoding: bit k of a graph index is edge slot k, slots numbered by
lex order over vertex pairs (0,1), (0,2), ... Bitmap files use the same
indexing with little-endian bit order and an 8-byte header (n, C(n,2)),
both little-endian u32.
"""
from __future__ import annotations

import itertools
import logging
import struct
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import BinaryIO, Iterable, Optional, Sequence, Union

import numpy as np

from .errors import CapacityError, ParameterError, ShapeError
from .verify import ColoringOracle

log = logging.getLogger(__name__)

MAX_VERTICES = 7  # 2^C(7,2) = 2,097,152 graph indices, the hard ceiling


def _check_n(n: int) -> None:
    if n < 1:
        raise ParameterError(f"need at least one vertex, got n={n}")
    if n > MAX_VERTICES:
        raise CapacityError(
            f"n={n} means 2^{comb(n, 2)} graphs; the ceiling is n={MAX_VERTICES}"
        )


@lru_cache(maxsize=None)
def edge_slots(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(itertools.combinations(range(n), 2))


def edge_slot(n: int, u: int, w: int) -> int:
    if u == w:
        raise ParameterError("no self-loop slots")
    a, b = (u, w) if u < w else (w, u)
    return edge_slots(n).index((a, b))


def clique_mask(n: int, subset: Sequence[int]) -> int:
    """Edge-set bitmask of the complete graph on the given vertices."""
    mask = 0
    for u, w in itertools.combinations(sorted(subset), 2):
        mask |= 1 << edge_slot(n, u, w)
    return mask


@dataclass(frozen=True)
class SmallGraph:
    n: int
    edges: int  # bitmask over the C(n,2) lex-ordered edge slots

    def __post_init__(self):
        _check_n(self.n)
        if not 0 <= self.edges < 1 << comb(self.n, 2):
            raise ShapeError(f"edge mask {self.edges:#x} out of range for n={self.n}")

    def edge_list(self) -> list[tuple[int, int]]:
        return [e for k, e in enumerate(edge_slots(self.n)) if self.edges >> k & 1]

    def __xor__(self, other: "SmallGraph") -> "SmallGraph":
        if self.n != other.n:
            raise ShapeError("vertex counts differ")
        return SmallGraph(self.n, self.edges ^ other.edges)


def graph_signatures(oracle: ColoringOracle) -> np.ndarray:
    """Signature of every graph on the oracle's vertices, indexed by edge
    bitmask. Built by doubling: appending edge k XORs its color bit onto
    the first 2^k entries."""
    n = oracle.n
    _check_n(n)
    m = oracle.distinct_colors
    assert m <= 32, "at most C(7,2)=21 colors possible here"
    sig = np.zeros(1, dtype=np.uint32)
    for u, w in edge_slots(n):
        sig = np.concatenate([sig, sig ^ np.uint32(1 << oracle.color_id(u, w))])
    return sig


def _popcount_u32(arr: np.ndarray) -> np.ndarray:
    v = arr.astype(np.uint32)
    v = v - ((v >> 1) & 0x55555555)
    v = (v & 0x33333333) + ((v >> 2) & 0x33333333)
    v = (v + (v >> 4)) & 0x0F0F0F0F
    return (v * 0x01010101) >> 24


@dataclass
class ParityClass:
    """Membership bitmap of one signature class over all 2^C(n,2) graphs."""

    n: int
    bitmap: np.ndarray  # packed bits, little-endian bit order
    signature: Optional[int] = None
    color_count: Optional[int] = None

    @classmethod
    def from_indices(cls, n: int, indices, signature=None, color_count=None) -> "ParityClass":
        _check_n(n)
        member = np.zeros(1 << comb(n, 2), dtype=np.uint8)
        member[np.asarray(list(indices), dtype=np.int64)] = 1
        return cls(n, np.packbits(member, bitorder="little"), signature, color_count)

    @property
    def size(self) -> int:
        return int(_popcount_u32(self.bitmap.astype(np.uint32)).sum())

    def indices(self) -> np.ndarray:
        bits = np.unpackbits(self.bitmap, bitorder="little")[: 1 << comb(self.n, 2)]
        return np.nonzero(bits)[0]

    def __contains__(self, graph: Union[int, SmallGraph]) -> bool:
        idx = graph.edges if isinstance(graph, SmallGraph) else int(graph)
        return bool(self.bitmap[idx >> 3] >> (idx & 7) & 1)

    def with_member(self, graph: Union[int, SmallGraph]) -> "ParityClass":
        """Copy with one extra member (to plant code violations in tests)."""
        idx = graph.edges if isinstance(graph, SmallGraph) else int(graph)
        bm = self.bitmap.copy()
        bm[idx >> 3] |= 1 << (idx & 7)
        return ParityClass(self.n, bm, self.signature, self.color_count)


@dataclass
class CodeReport:
    n: int
    color_count: int
    class_sizes: dict  # signature -> member count
    chosen_signature: int
    chosen_class_size: int
    density: Fraction  # chosen size / 2^C(n,2)

    def size_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for size in self.class_sizes.values():
            hist[size] = hist.get(size, 0) + 1
        return dict(sorted(hist.items()))

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "color_count": self.color_count,
            "class_count": len(self.class_sizes),
            "chosen_signature": self.chosen_signature,
            "chosen_class_size": self.chosen_class_size,
            "density": str(self.density),
            "size_histogram": {str(k): v for k, v in self.size_histogram().items()},
        }
        if len(self.class_sizes) <= 4096:
            out["class_sizes"] = {str(k): v for k, v in sorted(self.class_sizes.items())}
        return out


def build_parity_classes(n: int, oracle: ColoringOracle) -> tuple[CodeReport, ParityClass]:
    """Partition all graphs on [n] by signature; return the report and a
    largest class (ties: least signature support, then lex bit order)."""
    _check_n(n)
    if oracle.n != n:
        raise ParameterError(f"oracle covers {oracle.n} vertices, asked for n={n}")
    m = oracle.distinct_colors
    sigs = graph_signatures(oracle)
    counts = np.bincount(sigs, minlength=1 << m)
    best_size = int(counts.max())
    cands = np.nonzero(counts == best_size)[0]
    pc = _popcount_u32(cands)
    cands = cands[pc == pc.min()]
    if len(cands) == 1:
        chosen = int(cands[0])
    else:
        # lex order of the bit tuple (b0, b1, ...) is not integer order
        chosen = min(
            (tuple(int(s) >> k & 1 for k in range(m)), int(s)) for s in cands
        )[1]
    nz = np.nonzero(counts)[0]
    report = CodeReport(
        n=n,
        color_count=m,
        class_sizes={int(s): int(counts[s]) for s in nz},
        chosen_signature=chosen,
        chosen_class_size=best_size,
        density=Fraction(best_size, 1 << comb(n, 2)),
    )
    member = (sigs == np.uint32(chosen)).astype(np.uint8)
    pclass = ParityClass(n, np.packbits(member, bitorder="little"), chosen, m)
    return report, pclass


# ---------------------------------------------------------------------------
# Code verification.
# ---------------------------------------------------------------------------


@dataclass
class CodeVerification:
    ok: bool
    n: int
    clique_order: int
    member_count: int
    probes: int
    violations: tuple  # ((g, h, subset), ...) with g < h, both members
    note: str = ""

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "n": self.n,
            "clique_order": self.clique_order,
            "member_count": self.member_count,
            "probes": self.probes,
            "violations": [
                {"g": g, "h": h, "subset": list(s)} for g, h, s in self.violations
            ],
            "note": self.note,
        }


def _as_class(members, n: Optional[int]) -> ParityClass:
    if isinstance(members, ParityClass):
        return members
    if n is None:
        raise ParameterError("n is required unless a ParityClass is given")
    idx = [g.edges if isinstance(g, SmallGraph) else int(g) for g in members]
    return ParityClass.from_indices(n, idx)


def verify_code(members, n: Optional[int] = None, clique_order: int = 5) -> CodeVerification:
    """Check no two members differ by exactly a clique edge set.

    One bitmap probe per (member, vertex subset): C(n, clique_order) * size
    probes instead of size^2 pairs. Below clique_order vertices the property
    is vacuous and reported as such.
    """
    pclass = _as_class(members, n)
    n = pclass.n
    idx = pclass.indices()
    if n < clique_order:
        note = f"n={n} < {clique_order}: no clique to flip, vacuously a code"
        log.info(note)
        return CodeVerification(True, n, clique_order, len(idx), 0, (), note)
    masks = [
        (clique_mask(n, s), s) for s in itertools.combinations(range(n), clique_order)
    ]
    violations = []
    probes = 0
    for g in idx.tolist():
        for mask, subset in masks:
            probes += 1
            h = g ^ mask
            if g < h and h in pclass:
                violations.append((g, h, subset))
    violations.sort()
    return CodeVerification(
        not violations, n, clique_order, len(idx), probes, tuple(violations)
    )


def pairwise_verify(members, n: Optional[int] = None, clique_order: int = 5) -> CodeVerification:
    """Quadratic reference: test every member pair's symmetric difference
    against the clique edge sets. Agrees with verify_code; kept as its
    independent oracle on small classes."""
    pclass = _as_class(members, n)
    n = pclass.n
    idx = pclass.indices().tolist()
    if n < clique_order:
        return CodeVerification(True, n, clique_order, len(idx), 0, (), "vacuous")
    by_mask = {
        clique_mask(n, s): s for s in itertools.combinations(range(n), clique_order)
    }
    violations = []
    probes = 0
    for a, g in enumerate(idx):
        for h in idx[a + 1 :]:
            probes += 1
            subset = by_mask.get(g ^ h)
            if subset is not None:
                violations.append((g, h, subset))
    violations.sort()
    return CodeVerification(
        not violations, n, clique_order, len(idx), probes, tuple(violations)
    )


# ---------------------------------------------------------------------------
# Bitmap files: 8-byte header (n, C(n,2)) as little-endian u32, then the
# packed membership bits.
# ---------------------------------------------------------------------------


def write_class_bitmap(out: BinaryIO, pclass: ParityClass) -> None:
    out.write(struct.pack("<II", pclass.n, comb(pclass.n, 2)))
    out.write(pclass.bitmap.tobytes())


def read_class_bitmap(src: BinaryIO) -> ParityClass:
    header = src.read(8)
    if len(header) != 8:
        raise ShapeError("truncated header")
    n, ne = struct.unpack("<II", header)
    _check_n(n)
    if ne != comb(n, 2):
        raise ShapeError(f"header says {ne} edges for n={n}, expected {comb(n, 2)}")
    body = src.read()
    expected = ((1 << ne) + 7) // 8
    if len(body) != expected:
        raise ShapeError(f"bitmap body is {len(body)} bytes, expected {expected}")
    return ParityClass(n, np.frombuffer(body, dtype=np.uint8).copy())
