"""Exhaustive micro-scale verification oracles.

Everything in this module computes exact rational quantities by
enumerating supports: strong extractor distance, non-malleability
distance against explicit tamper tables, and merger distance on planted
instances.  Instances are described by their latent free bits, so a
matrix whose rows are all functions of one shared block enumerates over
the block, not over the ambient row space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .bits import BitString
from .prob import Dist, stat_distance_maps
from .sext import ExtScheme, ext

ZERO = Fraction(0)


# ---------------------------------------------------------------- tampering

@dataclass(frozen=True)
class TamperFn:
    """Fixed-point-free function table on d-bit strings."""

    d: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != 1 << self.d:
            raise ValueError("table size mismatch")
        for x, y in enumerate(self.table):
            if x == y:
                raise ValueError(f"tamper table has fixed point at {x}")
            if not 0 <= y < (1 << self.d):
                raise ValueError("table value out of range")

    def __call__(self, x: int) -> int:
        return self.table[x]


def enumerate_tampers(d: int) -> Iterable[TamperFn]:
    """All fixed-point-free tables on d bits; (2^d - 1)^(2^d) of them.
    Only d <= 3 is allowed (d = 2 gives the 81-table battery)."""
    if d > 3:
        raise ValueError("full enumeration limited to d <= 3; sample instead")
    n = 1 << d
    choices = [[y for y in range(n) if y != x] for x in range(n)]
    for combo in itertools.product(*choices):
        yield TamperFn(d, tuple(combo))


def sample_tamper(rng, d: int) -> TamperFn:
    n = 1 << d
    table = []
    for x in range(n):
        y = int(rng.integers(n - 1))
        table.append(y + 1 if y >= x else y)
    return TamperFn(d, tuple(table))


def flip_low_bit_tamper(d: int) -> TamperFn:
    return TamperFn(d, tuple(x ^ 1 for x in range(1 << d)))


# ------------------------------------------------------- extractor oracles

ExtFn = Callable[[int, int], int]  # (x, seed) -> output, plain ints


def ext_fn_of(scheme: ExtScheme) -> ExtFn:
    def f(x: int, s: int) -> int:
        return ext(scheme, BitString(scheme.n_in, x),
                   BitString(scheme.d_seed, s)).val
    return f


def strong_distance(f: ExtFn, source: Dist, d_seed: int, m_out: int
                    ) -> Fraction:
    """Exact distance of (Ext(X, S), S) from (U_m, S) with S uniform."""
    n_seeds = 1 << d_seed
    u = Fraction(1, 1 << m_out)
    total = ZERO
    sup = [(x, p) for x, p in enumerate(source.w) if p > 0]
    for s in range(n_seeds):
        hist: dict[int, Fraction] = {}
        for x, p in sup:
            z = f(x, s)
            hist[z] = hist.get(z, ZERO) + p
        acc = sum((abs(p - u) for p in hist.values()), ZERO)
        acc += u * ((1 << m_out) - len(hist))
        total += acc
    return total / (2 * n_seeds)


def strong_distance_poly_fast(scheme: ExtScheme, source: Dist) -> Fraction:
    """Vectorized exact strong distance for poly schemes over flat
    sources: enumerate every seed with numpy, then do exact arithmetic
    on the integer counts."""
    import numpy as np

    from .sext import ext_all_seeds_poly

    sup = source.support()
    p0 = source.w[sup[0]]
    if any(source.w[x] != p0 for x in sup):
        return strong_distance(ext_fn_of(scheme), source,
                               scheme.d_seed, scheme.m_out)
    outs = ext_all_seeds_poly(scheme, sup)  # (N, n_seeds)
    n, n_seeds = len(sup), outs.shape[1]
    m = scheme.m_out
    flat = (np.arange(n_seeds, dtype=np.int64)[None, :] << m) | outs
    counts = np.bincount(flat.ravel(), minlength=n_seeds << m)
    # distance = sum_{s,z} |c/(N*2^d) - 1/(2^(d+m))| / 2; the per-cell
    # terms |c*2^m - n| stay well inside int64, so the sum is exact
    big = int(np.abs(counts * (1 << m) - n, dtype=np.int64).sum(dtype=object))
    return Fraction(big, 2 * n * (1 << m) * n_seeds)


def nm_distance(f: ExtFn, source: Dist, d_seed: int, m_out: int,
                tamper: TamperFn) -> Fraction:
    """Exact distance of (E(X,Y), E(X,A(Y)), Y) from (U, E(X,A(Y)), Y)
    with Y uniform on d_seed bits."""
    if tamper.d != d_seed:
        raise ValueError("tamper arity mismatch")
    n_seeds = 1 << d_seed
    qy = Fraction(1, n_seeds)
    p: dict = {}
    for y in range(n_seeds):
        ya = tamper(y)
        for x, pw in enumerate(source.w):
            if pw > 0:
                key = (f(x, y), f(x, ya), y)
                p[key] = p.get(key, ZERO) + pw * qy
    # marginal over (z', y)
    marg: dict = {}
    for (z, za, y), pr in p.items():
        marg[(za, y)] = marg.get((za, y), ZERO) + pr
    u = Fraction(1, 1 << m_out)
    q = {(z, za, y): u * pr
         for (za, y), pr in marg.items() for z in range(1 << m_out)}
    return stat_distance_maps(p, q)


# --------------------------------------------------------- merger oracles

MergerFn = Callable[[tuple[int, ...], int], int]  # (rows, y) -> output


@dataclass(frozen=True)
class MergerInstance:
    """A planted matrix/seed joint with t tampered copies, described by
    latent free bits: lat_x generates the row matrix through row_maps,
    the tampered matrices are deterministic functions of the rows, and
    the tampered seeds are fixed-point-free tables over y."""

    L: int
    m: int
    d: int
    t: int
    witness: int
    lat_x_bits: int
    rows_of: Callable[[int], tuple[int, ...]] = field(compare=False)
    tamper_rows: tuple[Callable[[tuple[int, ...]], tuple[int, ...]], ...] = \
        field(compare=False)
    tamper_y: tuple[TamperFn, ...] = field(compare=False)

    def __post_init__(self) -> None:
        if self.lat_x_bits + self.d > 24:
            raise ValueError("latent space too large to enumerate")
        if len(self.tamper_rows) != self.t or len(self.tamper_y) != self.t:
            raise ValueError("need one tamper pair per copy")


def merger_distance(merge: MergerFn, inst: MergerInstance, m_out: int
                    ) -> Fraction:
    """Exact distance of (M, M^1..M^t, Y, Y^1..Y^t) from the same tuple
    with M replaced by an independent uniform string."""
    n_lat = 1 << inst.lat_x_bits
    n_y = 1 << inst.d
    w = Fraction(1, n_lat * n_y)
    p: dict = {}
    cache: dict = {}
    for lat in range(n_lat):
        rows = inst.rows_of(lat)
        tampered = [tf(rows) for tf in inst.tamper_rows]
        for y in range(n_y):
            ck = (rows, y)
            mv = cache.get(ck)
            if mv is None:
                mv = merge(rows, y)
                cache[ck] = mv
            outs = [mv]
            ys = [y]
            for g in range(inst.t):
                yg = inst.tamper_y[g](y)
                ck = (tampered[g], yg)
                mg = cache.get(ck)
                if mg is None:
                    mg = merge(tampered[g], yg)
                    cache[ck] = mg
                outs.append(mg)
                ys.append(yg)
            key = (tuple(outs), tuple(ys))
            p[key] = p.get(key, ZERO) + w
    marg: dict = {}
    for (outs, ys), pr in p.items():
        rest = (outs[1:], ys)
        marg[rest] = marg.get(rest, ZERO) + pr
    u = Fraction(1, 1 << m_out)
    q: dict = {}
    for (rest_outs, ys), pr in marg.items():
        for z in range(1 << m_out):
            q[((z,) + rest_outs, ys)] = u * pr
    return stat_distance_maps(p, q)


def rot(v: int, m: int, sh: int) -> int:
    sh %= m
    return ((v << sh) | (v >> (m - sh))) & ((1 << m) - 1)


def build_instance(rng, L: int, m: int, d: int, t: int, witness: int,
                   shared_block: bool = True) -> MergerInstance:
    """Plant a valid instance: every row exactly uniform, tampered
    matrices copy the non-witness rows and pin the witness row to a
    constant, tampered seeds are random fixed-point-free tables.

    With shared_block=True all rows are rotations/masks of one m-bit
    block, keeping the latent space at m + d bits."""
    if not 0 <= witness < L:
        raise ValueError("witness out of range")
    masks = [int(rng.integers(1 << m)) for _ in range(L)]

    if shared_block:
        lat_bits = m

        def rows_of(lat: int) -> tuple[int, ...]:
            return tuple(rot(lat, m, i) ^ masks[i] for i in range(L))
    else:
        lat_bits = L * m

        def rows_of(lat: int) -> tuple[int, ...]:
            return tuple(((lat >> (i * m)) & ((1 << m) - 1)) ^ masks[i]
                         for i in range(L))

    consts = [int(rng.integers(1 << m)) for _ in range(t)]

    def make_tamper(g: int):
        def tf(rows: tuple[int, ...]) -> tuple[int, ...]:
            out = list(rows)
            out[witness] = consts[g]
            return tuple(out)
        return tf

    return MergerInstance(
        L=L, m=m, d=d, t=t, witness=witness, lat_x_bits=lat_bits,
        rows_of=rows_of,
        tamper_rows=tuple(make_tamper(g) for g in range(t)),
        tamper_y=tuple(sample_tamper(rng, d) for _ in range(t)))


def adversarial_xor_instance(rng, L: int, m: int, d: int) -> MergerInstance:
    """Instance that defeats the XOR-of-rows strawman: the tampered
    matrix is a cyclic row rotation, so the XOR of the rows is preserved
    while a witness row stays independent of its tampered copy."""
    if L < 2:
        raise ValueError("need at least two rows")

    def rows_of(lat: int) -> tuple[int, ...]:
        return tuple(((lat >> (i * m)) & ((1 << m) - 1)) for i in range(L))

    def tf(rows: tuple[int, ...]) -> tuple[int, ...]:
        return rows[1:] + rows[:1]

    return MergerInstance(
        L=L, m=m, d=d, t=1, witness=0, lat_x_bits=L * m,
        rows_of=rows_of, tamper_rows=(tf,),
        tamper_y=(sample_tamper(rng, d),))


def xor_strawman(rows: tuple[int, ...], y: int) -> int:
    out = 0
    for r in rows:
        out ^= r
    return out
