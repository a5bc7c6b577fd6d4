import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parity_ramsey.coloring import (
    BitVector,
    BlockDiff,
    ZERO_DIFF,
    block,
    count_colors,
    decode_color,
    derive_params,
    edge_color,
    encode_color,
    enumerate_vertices,
    first_diff,
    format_color,
    level_profile,
    order_sign,
)
from parity_ramsey.errors import (
    CapacityError,
    ParameterError,
    SelfLoopError,
    ShapeError,
)


def bv(text):
    return BitVector.from_string(text)


class TestParams:
    def test_beta_2(self):
        p = derive_params(2)
        assert p.alpha == 8
        assert p.widths == (1, 2, 4, 8)
        assert p.counts == (8, 4, 2, 1)

    def test_beta_3(self):
        p = derive_params(3)
        assert p.alpha == 27
        assert p.widths == (1, 3, 9, 27)
        assert p.counts == (27, 9, 3, 1)

    def test_beta_too_small(self):
        with pytest.raises(ParameterError):
            derive_params(1)


class TestBlocks:
    def test_level2_blocks(self, params2):
        v = bv("00010000")
        assert block(v, 2, 1, params2) == bv("0001")
        assert block(v, 2, 2, params2) == bv("0000")

    def test_level0_blocks_are_bits(self, params2):
        v = bv("01000000")
        assert block(v, 0, 2, params2) == bv("1")

    def test_index_out_of_range(self, params2):
        with pytest.raises(IndexError):
            block(bv("00000000"), 2, 3, params2)


class TestWorkedExample:
    """The hand computation for u=00000000, w=00010000 at beta=2."""

    U = "00000000"
    W = "00010000"

    def test_level2(self, params2):
        d = first_diff(params2, 2, bv(self.U), bv(self.W))
        assert d == BlockDiff(1, bv("0000"), bv("0001"))
        assert str(d) == "(1, {0000, 0001})"

    def test_level1(self, params2):
        prof = level_profile(params2, 1, bv(self.U), bv(self.W))
        assert prof == (BlockDiff(2, bv("00"), bv("01")), ZERO_DIFF)
        assert str(prof[1]) == "Zero"

    def test_level0(self, params2):
        prof = level_profile(params2, 0, bv(self.U), bv(self.W))
        assert prof == (ZERO_DIFF, BlockDiff(2, bv("0"), bv("1")), ZERO_DIFF, ZERO_DIFF)

    def test_signs(self, params2):
        assert order_sign(params2, 1, bv(self.U), bv(self.W)) == 1
        assert order_sign(params2, 2, bv(self.U), bv(self.W)) == 0

    def test_full_color(self, params2):
        c = edge_color(params2, bv(self.U), bv(self.W))
        assert c.diff2 == BlockDiff(1, bv("0000"), bv("0001"))
        assert c.signs == (1, 0)
        text = format_color(c)
        assert "(1, {0000, 0001})" in text
        assert "+1, 0" in text


class TestEdgeColor:
    def test_symmetric(self, params2):
        u, w = bv("01100011"), bv("11000101")
        assert edge_color(params2, u, w) == edge_color(params2, w, u)

    def test_self_loop(self, params2):
        with pytest.raises(SelfLoopError):
            edge_color(params2, bv("00000000"), bv("00000000"))

    def test_wrong_width(self, params2):
        with pytest.raises(ShapeError):
            edge_color(params2, bv("000"), bv("111"))

    def test_top_diff_never_zero(self, params2):
        # distinct vertices differ somewhere, so the level-2 record is real
        u, w = bv("00000000"), bv("00000001")
        assert not edge_color(params2, u, w).diff2.is_zero

    def test_sign_antisymmetry(self, params2):
        u, w = bv("00110100"), bv("01010100")
        for i in (1, 2):
            assert order_sign(params2, i, u, w) == -order_sign(params2, i, w, u)

    def test_xi2_is_single_eta(self, params2):
        u, w = bv("10100101"), bv("00111100")
        assert level_profile(params2, 2, u, w) == (first_diff(params2, 2, u, w),)


@st.composite
def vertex_pairs(draw):
    bits = st.integers(min_value=0, max_value=255)
    u = draw(bits)
    w = draw(bits.filter(lambda x: x != u))
    return (
        BitVector(u, 8),
        BitVector(w, 8),
    )


class TestEncoding:
    @settings(max_examples=200, deadline=None)
    @given(vertex_pairs())
    def test_round_trip(self, pair):
        params = derive_params(2)
        c = edge_color(params, *pair)
        assert decode_color(encode_color(c)) == c

    @settings(max_examples=100, deadline=None)
    @given(vertex_pairs(), vertex_pairs())
    def test_encoding_separates_colors(self, p1, p2):
        params = derive_params(2)
        c1, c2 = edge_color(params, *p1), edge_color(params, *p2)
        assert (encode_color(c1) == encode_color(c2)) == (c1 == c2)

    def test_truncated_rejected(self, params2):
        data = encode_color(edge_color(params2, bv("00000000"), bv("00010000")))
        with pytest.raises(ShapeError):
            decode_color(data[:-2])

    def test_trailing_garbage_rejected(self, params2):
        data = encode_color(edge_color(params2, bv("00000000"), bv("00010000")))
        with pytest.raises(ShapeError):
            decode_color(data + b"\x00")

    def test_beta3_round_trip(self):
        params = derive_params(3)
        u = BitVector(0, 27)
        w = BitVector(1 << 26 | 5, 27)
        c = edge_color(params, u, w)
        assert decode_color(encode_color(c)) == c


class TestEnumerate:
    def test_lex_first(self, params2):
        vs = enumerate_vertices(params2, 4)
        assert [v.to_string() for v in vs] == ["00000000", "00000001", "00000010", "00000011"]

    def test_lex_sorted_distinct(self, params2):
        vs = enumerate_vertices(params2, 100)
        assert len(set(vs)) == 100
        assert all(a < b for a, b in zip(vs, vs[1:]))

    def test_random_needs_seed(self, params2):
        with pytest.raises(ParameterError):
            enumerate_vertices(params2, 10, order="random")

    def test_random_deterministic(self, params2):
        a = enumerate_vertices(params2, 10, order="random", seed=42)
        b = enumerate_vertices(params2, 10, order="random", seed=42)
        assert a == b
        assert len(set(a)) == 10

    def test_capacity(self, params2):
        with pytest.raises(CapacityError):
            enumerate_vertices(params2, 257)


class TestCensus:
    def test_small_rainbow(self, params2):
        # all edges get distinct colors well past n=16
        for n, edges in ((4, 6), (8, 28), (16, 120)):
            census = count_colors(params2, enumerate_vertices(params2, n))
            assert census.colors == edges
            assert census.sign_parts == 1

    def test_sign_parts_at_32(self, params2):
        census = count_colors(params2, enumerate_vertices(params2, 32))
        assert census.sign_parts <= 9
