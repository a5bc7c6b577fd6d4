"""Layered edge coloring of the complete graph on {0,1}^(beta^3).

A vertex is a bit vector of width alpha = beta^3. The vector splits into
blocks at four granularities: level-d blocks have width beta^d, so level 0
is single bits and level 3 is the whole vector. The color of an edge {u, w}
stacks three "first difference" profiles (at granularities 4, 2, 1 bits for
beta = 2) with a vector of per-block comparison signs:

* ``first_diff(params, d, u, w)`` reports the least index where the level-d
  blocks of u and w differ, together with the unordered block pair.
* ``level_profile(params, d, v, w)`` applies first_diff at level d inside
  each level-(d+1) block; level 2 has a single component (the whole vector),
  level 1 has beta, level 0 has beta^2.
* ``order_sign(params, i, v, w)`` compares the i-th top-level blocks
  lexicographically, giving -1/0/+1.
* ``edge_color(params, u, w)`` sorts the pair and combines all of the above.

Colors serialize to a canonical byte string (``encode_color``) so that
downstream scanning can treat them as opaque values.

Bit positions count from 1 at the most significant end: position 1 is the
first character of the '0'/'1' string form, and comparing equal-width
vectors as integers coincides with lexicographic comparison of the strings.
"""
from __future__ import annotations

import random
import struct
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .errors import CapacityError, ParameterError, SelfLoopError, ShapeError

__all__ = [
    "Params",
    "derive_params",
    "BitVector",
    "block",
    "BlockDiff",
    "ZERO_DIFF",
    "first_diff",
    "level_profile",
    "order_sign",
    "EdgeColor",
    "edge_color",
    "encode_color",
    "decode_color",
    "enumerate_vertices",
    "ColorCensus",
    "count_colors",
    "format_color",
]


@dataclass(frozen=True)
class Params:
    """Derived structure constants for a given beta.

    ``widths[d]`` is the level-d block width beta^d and ``counts[d]`` the
    number of level-d blocks in a full vector, beta^(3-d).
    """

    beta: int
    alpha: int
    widths: tuple[int, int, int, int]
    counts: tuple[int, int, int, int]


def derive_params(beta: int) -> Params:
    if not isinstance(beta, int) or beta < 2:
        raise ParameterError(f"beta must be an integer >= 2, got {beta!r}")
    widths = tuple(beta**d for d in range(4))
    counts = tuple(beta ** (3 - d) for d in range(4))
    return Params(beta=beta, alpha=beta**3, widths=widths, counts=counts)


@dataclass(frozen=True, order=False)
class BitVector:
    """A fixed-width bit string, stored as (integer value, width)."""

    value: int
    width: int

    def __post_init__(self):
        if self.width < 1:
            raise ShapeError(f"width must be positive, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ShapeError(f"value {self.value} does not fit in {self.width} bits")

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        if not text or any(ch not in "01" for ch in text):
            raise ShapeError(f"expected a nonempty string of 0/1, got {text!r}")
        return cls(int(text, 2), len(text))

    def to_string(self) -> str:
        return format(self.value, f"0{self.width}b")

    def _check_same_width(self, other: "BitVector") -> None:
        if self.width != other.width:
            raise ShapeError(f"width mismatch: {self.width} vs {other.width}")

    # Fixed-width MSB-first strings compare like their integer values.
    def __lt__(self, other):
        self._check_same_width(other)
        return self.value < other.value

    def __le__(self, other):
        self._check_same_width(other)
        return self.value <= other.value

    def __str__(self):
        return self.to_string()


def block(vec: BitVector, d: int, i: int, params: Params) -> BitVector:
    """The i-th (1-based) level-d block of ``vec``.

    Defined for any vector whose width is a multiple of the level-d block
    width, not only full alpha-wide vectors; the finer profiles apply this
    inside sub-blocks.
    """
    width = params.widths[d]
    if vec.width % width:
        raise ShapeError(f"width {vec.width} not divisible by level-{d} block width {width}")
    count = vec.width // width
    if not 1 <= i <= count:
        raise IndexError(f"block index {i} out of range 1..{count}")
    shift = vec.width - i * width
    return BitVector((vec.value >> shift) & ((1 << width) - 1), width)


@dataclass(frozen=True)
class BlockDiff:
    """Either "no difference" or (first differing index, unordered block pair).

    The pair is stored sorted, low <= high, so equal differences compare and
    hash equal no matter which orientation produced them.
    """

    index: int
    low: Optional[BitVector] = None
    high: Optional[BitVector] = None

    @property
    def is_zero(self) -> bool:
        return self.index == 0

    def __str__(self):
        if self.is_zero:
            return "Zero"
        return f"({self.index}, {{{self.low}, {self.high}}})"


ZERO_DIFF = BlockDiff(0)


def first_diff(params: Params, d: int, u: BitVector, w: BitVector) -> BlockDiff:
    """Least index i with the level-d blocks of u and w unequal, plus the pair.

    Returns ``ZERO_DIFF`` when u == w. Blocks before index i are equal by
    construction.
    """
    if not 0 <= d <= 3:
        raise IndexError(f"level {d} out of range 0..3")
    u._check_same_width(w)
    if u.value == w.value:
        return ZERO_DIFF
    width = params.widths[d]
    if u.width % width:
        raise ShapeError(f"width {u.width} not divisible by level-{d} block width {width}")
    count = u.width // width
    for i in range(1, count + 1):
        shift = u.width - i * width
        mask = (1 << width) - 1
        x = (u.value >> shift) & mask
        y = (w.value >> shift) & mask
        if x != y:
            lo, hi = (x, y) if x < y else (y, x)
            return BlockDiff(i, BitVector(lo, width), BitVector(hi, width))
    raise AssertionError("unequal vectors must differ in some block")


def level_profile(params: Params, d: int, v: BitVector, w: BitVector) -> tuple[BlockDiff, ...]:
    """first_diff at level d applied inside each level-(d+1) block.

    For full-width inputs the tuple has beta^(2-d) components; level 2 yields
    a single component equal to ``first_diff(params, 2, v, w)``.
    """
    if not 0 <= d <= 2:
        raise IndexError(f"profile level {d} out of range 0..2")
    v._check_same_width(w)
    outer = params.widths[d + 1]
    if v.width % outer:
        raise ShapeError(f"width {v.width} not divisible by level-{d + 1} block width {outer}")
    count = v.width // outer
    return tuple(
        first_diff(params, d, block(v, d + 1, j, params), block(w, d + 1, j, params))
        for j in range(1, count + 1)
    )


def order_sign(params: Params, i: int, v: BitVector, w: BitVector) -> int:
    """Lexicographic comparison sign of the i-th top-level blocks: +1 when
    v's block precedes w's, -1 when it follows, 0 when equal."""
    x = block(v, 2, i, params).value
    y = block(w, 2, i, params).value
    return (x < y) - (x > y)


@dataclass(frozen=True)
class EdgeColor:
    """Full color of an edge: three difference profiles plus the sign vector.

    ``diff2`` is the whole-vector first difference at the coarsest
    granularity; ``diff1``/``diff0`` refine it inside ever smaller blocks;
    ``signs`` records the per-block comparison directions for the sorted
    vertex pair.
    """

    diff2: BlockDiff
    diff1: tuple[BlockDiff, ...]
    diff0: tuple[BlockDiff, ...]
    signs: tuple[int, ...]

    @property
    def structural_part(self) -> tuple:
        return (self.diff2, self.diff1, self.diff0)


def edge_color(params: Params, u: BitVector, w: BitVector) -> EdgeColor:
    """Color of the undirected edge {u, w}; orientation independent.

    The pair is sorted before the sign vector is evaluated, so swapping the
    arguments cannot change the result.
    """
    u._check_same_width(w)
    if u.width != params.alpha:
        raise ShapeError(f"vertex width {u.width} != alpha {params.alpha}")
    if u.value == w.value:
        raise SelfLoopError("edge endpoints must be distinct")
    if w < u:
        u, w = w, u
    prof2 = level_profile(params, 2, u, w)
    return EdgeColor(
        diff2=prof2[0],
        diff1=level_profile(params, 1, u, w),
        diff0=level_profile(params, 0, u, w),
        signs=tuple(order_sign(params, i, u, w) for i in range(1, params.beta + 1)),
    )


# ---------------------------------------------------------------------------
# Canonical byte encoding.
#
# overall    = [payload length: u16][payload]
# payload    = [beta: u16] diff2 diff1*beta diff0*beta^2 signs
# BlockDiff  = 0x00                                  (no difference)
#            | 0x01 [index: u16] bits(low) bits(high)
# bits(b)    = [width: u16] [ceil(width/8) bytes, MSB-first]
# signs      = 2 bits per entry, MSB-first: 00 -> 0, 01 -> +1, 10 -> -1
#
# All integers big-endian. The layout is self-delimiting, so equal colors
# have equal encodings and vice versa.
# ---------------------------------------------------------------------------

_SIGN_CODE = {0: 0, 1: 1, -1: 2}
_SIGN_DECODE = {0: 0, 1: 1, 2: -1}


def _pack_bits(vec: BitVector) -> bytes:
    nbytes = (vec.width + 7) // 8
    # left-align: bit 1 of the vector is the MSB of the first byte
    padded = vec.value << (nbytes * 8 - vec.width)
    return struct.pack(">H", vec.width) + padded.to_bytes(nbytes, "big")


def _pack_diff(diff: BlockDiff) -> bytes:
    if diff.is_zero:
        return b"\x00"
    return b"\x01" + struct.pack(">H", diff.index) + _pack_bits(diff.low) + _pack_bits(diff.high)


def encode_color(color: EdgeColor) -> bytes:
    beta = len(color.signs)
    parts = [struct.pack(">H", beta), _pack_diff(color.diff2)]
    parts.extend(_pack_diff(d) for d in color.diff1)
    parts.extend(_pack_diff(d) for d in color.diff0)
    packed = bytearray((2 * beta + 7) // 8)
    for k, s in enumerate(color.signs):
        code = _SIGN_CODE[s]
        packed[k // 4] |= code << (6 - 2 * (k % 4))
    parts.append(bytes(packed))
    payload = b"".join(parts)
    if len(payload) > 0xFFFF:
        raise CapacityError("encoded color exceeds the 64KiB payload limit")
    return struct.pack(">H", len(payload)) + payload


class _Cursor:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, k: int) -> bytes:
        if self.pos + k > len(self.data):
            raise ShapeError("truncated color encoding")
        out = self.data[self.pos : self.pos + k]
        self.pos += k
        return out

    def u16(self) -> int:
        return struct.unpack(">H", self.take(2))[0]


def _unpack_bits(cur: _Cursor) -> BitVector:
    width = cur.u16()
    nbytes = (width + 7) // 8
    raw = int.from_bytes(cur.take(nbytes), "big")
    return BitVector(raw >> (nbytes * 8 - width), width)


def _unpack_diff(cur: _Cursor) -> BlockDiff:
    tag = cur.take(1)[0]
    if tag == 0:
        return ZERO_DIFF
    if tag != 1:
        raise ShapeError(f"bad difference tag {tag}")
    index = cur.u16()
    low = _unpack_bits(cur)
    high = _unpack_bits(cur)
    return BlockDiff(index, low, high)


def decode_color(data: bytes) -> EdgeColor:
    """Inverse of encode_color; raises ShapeError on malformed input."""
    outer = _Cursor(data)
    length = outer.u16()
    payload = outer.take(length)
    if outer.pos != len(data):
        raise ShapeError("trailing bytes after color payload")
    cur = _Cursor(payload)
    beta = cur.u16()
    diff2 = _unpack_diff(cur)
    diff1 = tuple(_unpack_diff(cur) for _ in range(beta))
    diff0 = tuple(_unpack_diff(cur) for _ in range(beta * beta))
    packed = cur.take((2 * beta + 7) // 8)
    signs = []
    for k in range(beta):
        code = (packed[k // 4] >> (6 - 2 * (k % 4))) & 0b11
        if code not in _SIGN_DECODE:
            raise ShapeError(f"bad sign code {code}")
        signs.append(_SIGN_DECODE[code])
    if cur.pos != len(payload):
        raise ShapeError("trailing bytes inside color payload")
    return EdgeColor(diff2, diff1, diff0, tuple(signs))


def format_color(color: EdgeColor) -> str:
    """Human-readable multi-line breakdown used by the CLI."""
    lines = [
        f"level-2 profile: {color.diff2}",
        "level-1 profile: " + ", ".join(str(d) for d in color.diff1),
        "level-0 profile: " + ", ".join(str(d) for d in color.diff0),
        "signs:           " + ", ".join({1: "+1", -1: "-1", 0: "0"}[s] for s in color.signs),
    ]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Vertex universes and census.
# ---------------------------------------------------------------------------


def enumerate_vertices(
    params: Params, n: int, order: str = "lex", seed: Optional[int] = None
) -> list[BitVector]:
    """n distinct vertices of the universe {0,1}^alpha.

    order="lex" takes the lexicographically first n vectors. order="random"
    draws a uniform n-subset with an explicit seed (ambient entropy is
    rejected so every run is reproducible); the draw order is kept.
    """
    if n < 0:
        raise ParameterError(f"vertex count must be nonnegative, got {n}")
    size = 1 << params.alpha
    if n > size:
        raise CapacityError(f"universe at beta={params.beta} has {size} vertices, asked for {n}")
    if order == "lex":
        return [BitVector(v, params.alpha) for v in range(n)]
    if order == "random":
        if seed is None:
            raise ParameterError("order='random' requires an explicit seed")
        rng = random.Random(seed)
        return [BitVector(v, params.alpha) for v in rng.sample(range(size), n)]
    raise ParameterError(f"unknown vertex order {order!r}")


class ColorCensus(NamedTuple):
    colors: int
    sign_parts: int


def count_colors(params: Params, vertices: Iterable[BitVector]) -> ColorCensus:
    """Distinct colors and distinct sign vectors over all pairs of ``vertices``.

    The sign vector ranges over at most 3^beta values; that bound is checked
    here because it is the cheap half of the color-count argument.
    """
    verts = list(vertices)
    colors = set()
    signs = set()
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            col = edge_color(params, verts[a], verts[b])
            colors.add(col)
            signs.add(col.signs)
    census = ColorCensus(len(colors), len(signs))
    assert census.sign_parts <= 3**params.beta, "sign-vector bound violated"
    return census
