"""Seeded strong extractors behind a swappable scheme interface.

Two hash families are provided:

* ``poly``: split the source into b-bit blocks, read them as coefficients
  of a polynomial over GF(2^b), evaluate at the seed's first field
  element, multiply by the seed's second field element, truncate to
  m_out bits.  Seed is exactly two field elements (d_seed = 2b).  The
  family is almost-universal, so the leftover hash lemma gives the
  analytic error bound below.  Linear in the source for a fixed seed;
  the all-zero source maps to the all-zero output under every seed.

* ``affine``: XOR-fold the source into 2*m_out bits, split the two
  halves into blocks (u_i, v_i) and output u_i*s_i + v_i per block with
  independent seed blocks s_i.  Seed length equals the output length, so
  it composes into constant-width alternating chains.  The family is
  only 2^-block almost-universal: the leftover-hash bound is vacuous for
  outputs wider than one block, and its strength is established by the
  exhaustive micro oracles and Monte-Carlo suites instead.

Every scheme is a plain description; ``ext`` does the work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import gf2
from .bits import BitString, blocks, pad_to, segment, slice_bits

FAMILIES = ("poly", "affine")


@dataclass(frozen=True)
class ExtScheme:
    n_in: int
    d_seed: int
    m_out: int
    family: str
    block: int
    claimed_k: int
    claimed_eps: float

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.block < 1 or self.block > gf2.MAX_DEGREE:
            raise ValueError("block size out of range")
        if self.m_out < 1:
            raise ValueError("empty output")
        if self.family == "poly":
            if self.m_out > self.block:
                raise ValueError("poly family: m_out exceeds block size")
            if self.d_seed != 2 * self.block:
                raise ValueError("poly family: d_seed must be 2*block")
        else:
            if self.m_out % self.block:
                raise ValueError("affine family: block must divide m_out")
            if self.d_seed != self.m_out:
                raise ValueError("affine family: d_seed must equal m_out")
        if not 0 <= self.claimed_k <= self.n_in:
            raise ValueError("claimed_k out of range")


@lru_cache(maxsize=None)
def poly_scheme(n_in: int, m_out: int, claimed_k: int | None = None,
                block: int | None = None) -> ExtScheme:
    if block is None:
        block = max(m_out, 8)
    k = n_in if claimed_k is None else claimed_k
    s = ExtScheme(n_in, 2 * block, m_out, "poly", block, k, 0.0)
    return ExtScheme(s.n_in, s.d_seed, s.m_out, s.family, s.block, s.claimed_k,
                     float(lhl_bound(s, k)))


def _affine_block(m_out: int) -> int:
    for b in (16, 8, 4, 2, 1):
        if m_out % b == 0:
            return b
    raise AssertionError


@lru_cache(maxsize=None)
def affine_scheme(n_in: int, m_out: int, claimed_k: int | None = None,
                  block: int | None = None) -> ExtScheme:
    if block is None:
        block = _affine_block(m_out)
    k = n_in if claimed_k is None else claimed_k
    s = ExtScheme(n_in, m_out, m_out, "affine", block, k, 0.0)
    return ExtScheme(s.n_in, s.d_seed, s.m_out, s.family, s.block, s.claimed_k,
                     float(lhl_bound(s, k)))


def ext(scheme: ExtScheme, x: BitString, seed: BitString) -> BitString:
    if x.n != scheme.n_in:
        raise ValueError(f"source width {x.n} != {scheme.n_in}")
    if seed.n != scheme.d_seed:
        raise ValueError(f"seed width {seed.n} != {scheme.d_seed}")
    if scheme.family == "poly":
        return _ext_poly(scheme, x, seed)
    return _ext_affine(scheme, x, seed)


def _ext_poly(scheme: ExtScheme, x: BitString, seed: BitString) -> BitString:
    b = scheme.block
    s1 = seed.val >> b
    s2 = seed.val & ((1 << b) - 1)
    acc = gf2.poly_eval(blocks(x, b), s1, b)
    out = gf2.mul(acc, s2, b)
    return BitString(scheme.m_out, out >> (b - scheme.m_out))


def _fold(x: BitString, width: int) -> int:
    """XOR of consecutive ``width``-bit segments (last padded right)."""
    if x.n <= width:
        return pad_to(x, width).val
    v = x.val << ((-x.n) % width)
    mask = (1 << width) - 1
    acc = 0
    while v:
        acc ^= v & mask
        v >>= width
    return acc


def _ext_affine(scheme: ExtScheme, x: BitString, seed: BitString) -> BitString:
    m, b = scheme.m_out, scheme.block
    z = _fold(x, 2 * m)
    u, v, s = z >> m, z & ((1 << m) - 1), seed.val
    if b == 16 and m >= 128:
        return BitString(m, _affine_wide16(u, s, m) ^ v)
    mask = (1 << b) - 1
    out = 0
    for i in range(m // b):
        sh = (m // b - 1 - i) * b
        out = (out << b) | (gf2.mul((u >> sh) & mask, (s >> sh) & mask, b)
                            ^ ((v >> sh) & mask))
    return BitString(m, out)


def _affine_wide16(u: int, s: int, m: int) -> int:
    """Blockwise GF(2^16) products of u and s via table lookups on numpy
    lanes; the wide-output fast path of the affine family."""
    import numpy as np

    log, exp = gf2.np_tables(16)
    nb = m // 16
    ub = np.frombuffer(u.to_bytes(2 * nb, "big"), dtype=">u2").astype(np.int64)
    sb = np.frombuffer(s.to_bytes(2 * nb, "big"), dtype=">u2").astype(np.int64)
    prod = exp[log[ub] + log[sb]]
    prod[(ub == 0) | (sb == 0)] = 0
    return int.from_bytes(prod.astype(">u2").tobytes(), "big")


def lhl_bound(scheme: ExtScheme, k: int) -> Fraction:
    """Leftover-hash error bound for a (n, k) source, as an exact
    Fraction capped at 1: half the square root of 2^(m-k) plus the
    family's almost-universality excess."""
    m, b = scheme.m_out, scheme.block
    if scheme.family == "poly":
        n_blocks = -(-scheme.n_in // b)
        excess = Fraction(n_blocks - 1, 1 << b) * (1 << m)
    else:
        # one differing block suffices to collide: 2^-b almost-universal
        excess = Fraction(1 << m, 1 << b) - 1 if m > b else Fraction(0)
        if excess < 0:
            excess = Fraction(0)
    inside = Fraction(1 << m, 1 << k) + excess
    val = _sqrt_fraction_upper(inside) / 2
    return min(val, Fraction(1))


def avg_case_bound(scheme: ExtScheme, k_avg: float) -> Fraction:
    """Error against sources with *average* conditional min-entropy
    k_avg: optimize the worst-case/average-case tradeoff, i.e. the min
    over g of lhl_bound(k_avg - g) + 2^-g."""
    best = Fraction(1)
    kf = math.floor(k_avg)
    for g in range(0, max(kf, 0) + 1):
        kk = kf - g
        if kk < 0:
            break
        cand = lhl_bound(scheme, kk) + Fraction(1, 1 << g)
        if cand < best:
            best = cand
    return min(best, Fraction(1))


def _sqrt_fraction_upper(x: Fraction) -> Fraction:
    """Upper bound on sqrt(x) exact to ~2^-48 relative error."""
    if x == 0:
        return Fraction(0)
    scale = 1 << 96
    num = math.isqrt(x.numerator * scale // x.denominator) + 1
    return Fraction(num, 1 << 48)


def sample_positions(r: BitString, count: int, universe: int) -> list[int]:
    """Deterministically turn extractor output r into ``count`` positions
    in range(universe), reading fixed-width chunks left to right."""
    if universe < 1:
        raise ValueError("empty universe")
    w = max(1, (universe - 1).bit_length())
    if count * w > r.n:
        raise ValueError(
            f"sampler needs {count * w} bits, extractor output has {r.n}")
    return [segment(r, i * w, w).val % universe for i in range(count)]


def ext_all_seeds_poly(scheme: ExtScheme, xs: list[int]):
    """Vectorized poly-family evaluation over every seed, for the exact
    strong-distance oracle.  Returns a (len(xs), 2^d_seed) uint16 array of
    outputs; requires block <= 8 so the seed space is enumerable."""
    import numpy as np

    b = scheme.block
    if b > 8:
        raise ValueError("seed space too large to enumerate")
    field = 1 << b
    log, exp = gf2._tables(b) if b > 1 else ([0, 0], [1, 1])
    LOG = np.asarray(log, dtype=np.int32)
    EXP = np.asarray(exp, dtype=np.int32)

    def vmul(a, c):
        if b == 1:
            return a & c
        r = EXP[LOG[a] + LOG[c]]
        return np.where((a == 0) | (c == 0), 0, r)

    xb = np.asarray(
        [blocks(BitString(scheme.n_in, x), b) for x in xs], dtype=np.int32)
    s1 = np.arange(field, dtype=np.int32)[None, :]
    acc = np.zeros((len(xs), field), dtype=np.int32)
    for j in range(xb.shape[1]):
        acc = vmul(acc, s1) ^ xb[:, j:j + 1]
    # out[x, s1, s2] = prefix_m(acc[x, s1] * s2)
    s2 = np.arange(field, dtype=np.int32)[None, None, :]
    prod = vmul(acc[:, :, None], s2)
    out = (prod >> (b - scheme.m_out)).astype(np.uint16)
    return out.reshape(len(xs), field * field)
