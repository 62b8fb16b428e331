from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extlab import gf2
from extlab.bits import BitString, blocks
from extlab.prob import sample_flat_source
from extlab.sext import (affine_scheme, avg_case_bound, ext,
                         ext_all_seeds_poly, lhl_bound, poly_scheme,
                         sample_positions, _fold)
from extlab.verify import strong_distance, strong_distance_poly_fast, \
    ext_fn_of


def test_poly_scheme_shape():
    s = poly_scheme(12, 2, claimed_k=6)
    assert s.block == 8 and s.d_seed == 16 and s.family == "poly"
    with pytest.raises(ValueError):
        poly_scheme(12, 9, block=8)  # m_out > block


def test_affine_scheme_shape():
    s = affine_scheme(64, 24)
    assert s.block == 8 and s.d_seed == 24
    assert affine_scheme(64, 32).block == 16
    assert affine_scheme(64, 3).block == 1


def test_poly_ext_is_blockwise_polynomial():
    s = poly_scheme(12, 2, claimed_k=6)
    x = BitString(12, 0xABC)
    seed = BitString(16, (0x2A << 8) | 0x3C)
    acc = gf2.poly_eval(blocks(x, 8), 0x2A, 8)
    want = gf2.mul(acc, 0x3C, 8) >> 6
    assert ext(s, x, seed).val == want


def test_poly_ext_zero_source_is_zero():
    s = poly_scheme(16, 4, block=8)
    for sv in (0, 1, 0xFFFF, 0x1234):
        assert ext(s, BitString(16, 0), BitString(16, sv)).val == 0


def test_fold_xors_segments():
    x = BitString(12, 0b101101001110)
    assert _fold(x, 4) == 0b1011 ^ 0b0100 ^ 0b1110
    # non-dividing width: last segment padded right
    assert _fold(BitString(5, 0b10110), 3) == 0b101 ^ 0b100


def test_affine_ext_blockwise_law():
    s = affine_scheme(16, 8, block=4)
    x = BitString(16, 0xBEEF)
    seed = BitString(8, 0x5A)
    z = _fold(x, 16)
    u, v = z >> 8, z & 0xFF
    want = 0
    for i in (1, 0):
        ub, vb, sb = (u >> 4 * i) & 0xF, (v >> 4 * i) & 0xF, \
            (0x5A >> 4 * i) & 0xF
        want |= (gf2.mul(ub, sb, 4) ^ vb) << (4 * i)
    assert ext(s, x, seed).val == want


def test_affine_wide_path_matches_blockwise():
    # the numpy fast path (block=16, m>=128) must agree with the loop
    s = affine_scheme(512, 256)
    assert s.block == 16
    rng = np.random.Generator(np.random.Philox(9))
    for _ in range(10):
        x = BitString(512, int.from_bytes(rng.bytes(64), "big"))
        seed = BitString(256, int.from_bytes(rng.bytes(32), "big"))
        got = ext(s, x, seed).val
        z = _fold(x, 512)
        u, v = z >> 256, z & ((1 << 256) - 1)
        want = 0
        for i in range(16):
            sh = (15 - i) * 16
            want = (want << 16) | (
                gf2.mul((u >> sh) & 0xFFFF, (seed.val >> sh) & 0xFFFF, 16)
                ^ ((v >> sh) & 0xFFFF))
        assert got == want


@given(st.integers(0, (1 << 12) - 1), st.integers(0, (1 << 12) - 1),
       st.integers(0, (1 << 16) - 1))
@settings(max_examples=100)
def test_poly_ext_linear_in_source(x1, x2, sv):
    s = poly_scheme(12, 2, claimed_k=6)
    seed = BitString(16, sv)
    a = ext(s, BitString(12, x1), seed)
    b = ext(s, BitString(12, x2), seed)
    c = ext(s, BitString(12, x1 ^ x2), seed)
    assert (a ^ b) == c


def test_lhl_bound_values():
    # single-block scheme is exactly universal: bound = sqrt(2^(m-k))/2
    s = poly_scheme(12, 2, claimed_k=6, block=12)
    assert abs(float(lhl_bound(s, 6)) - 0.5 * 2 ** -2) < 1e-10
    # two-block b=8 scheme pays the almost-universality excess
    s8 = poly_scheme(12, 2, claimed_k=6)
    assert float(lhl_bound(s8, 6)) > float(lhl_bound(s, 6))
    assert lhl_bound(s8, 0) == 1  # capped


def test_avg_case_bound_dominates_worst_case():
    s = poly_scheme(12, 2, claimed_k=6, block=12)
    assert avg_case_bound(s, 6) >= lhl_bound(s, 6)
    assert avg_case_bound(s, 6) <= lhl_bound(s, 4) + Fraction(1, 4)


def test_measured_distance_within_lhl_bound():
    rng = np.random.Generator(np.random.Philox(5))
    s = poly_scheme(10, 2, claimed_k=5, block=5)
    bound = lhl_bound(s, 5)
    for _ in range(10):
        src = sample_flat_source(rng, 10, 5)
        d = strong_distance(ext_fn_of(s), src, s.d_seed, s.m_out)
        assert d <= bound


def test_fast_strong_distance_matches_exact():
    rng = np.random.Generator(np.random.Philox(6))
    s = poly_scheme(10, 2, claimed_k=5, block=5)
    for _ in range(3):
        src = sample_flat_source(rng, 10, 5)
        assert strong_distance_poly_fast(s, src) == \
            strong_distance(ext_fn_of(s), src, s.d_seed, s.m_out)


def test_ext_all_seeds_poly_matches_scalar():
    s = poly_scheme(10, 2, claimed_k=5, block=5)
    xs = [0, 1, 0x155, 0x3FF]
    table = ext_all_seeds_poly(s, xs)
    for xi, x in enumerate(xs):
        for s1 in (0, 3, 17, 31):
            for s2 in (0, 5, 30):
                seed = BitString(10, (s1 << 5) | s2)
                got = table[xi, s1 * 32 + s2]
                assert int(got) == ext(s, BitString(10, x), seed).val


def test_sample_positions_deterministic_and_in_range():
    r = BitString(6, 0b101110)
    pos = sample_positions(r, 2, 8)
    assert pos == [0b101, 0b110]
    assert sample_positions(r, 2, 5) == [0b101 % 5, 0b110 % 5]
    with pytest.raises(ValueError):
        sample_positions(r, 3, 8)  # needs 9 bits


def test_width_mismatch_raises():
    s = poly_scheme(12, 2)
    with pytest.raises(ValueError):
        ext(s, BitString(11, 0), BitString(16, 0))
    with pytest.raises(ValueError):
        ext(s, BitString(12, 0), BitString(15, 0))
