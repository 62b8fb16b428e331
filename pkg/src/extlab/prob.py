"""Exact finite probability distributions over bit strings.

Everything here is exact: weights are Fractions, statistical distance
and entropies are computed from them without floating-point error (the
entropy values themselves are returned as floats of an exact rational).
Distributions are capped at N_MAX bits of ambient arity so exhaustive
oracles stay tractable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .bits import BitString

N_MAX = 20

ONE = Fraction(1)
ZERO = Fraction(0)


def _log2_fraction(p: Fraction) -> float:
    if p <= 0:
        raise ValueError("log of non-positive weight")
    # exact split avoids float overflow on huge numerators
    return math.log2(p.numerator) - math.log2(p.denominator)


@dataclass(frozen=True)
class Dist:
    """Distribution over {0,1}^n, dense weight vector of length 2^n."""

    n: int
    w: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or self.n > N_MAX:
            raise ValueError(f"arity {self.n} out of range (N_MAX={N_MAX})")
        if len(self.w) != 1 << self.n:
            raise ValueError("weight vector has wrong length")
        if sum(self.w) != ONE:
            raise ValueError("weights do not sum to 1")
        if any(x < 0 for x in self.w):
            raise ValueError("negative weight")

    def p(self, x: int) -> Fraction:
        return self.w[x]

    def support(self) -> list[int]:
        return [x for x, p in enumerate(self.w) if p > 0]


def uniform(n: int) -> Dist:
    q = Fraction(1, 1 << n)
    return Dist(n, tuple([q] * (1 << n)))


def point_mass(n: int, x: int) -> Dist:
    w = [ZERO] * (1 << n)
    w[x] = ONE
    return Dist(n, tuple(w))


def from_counts(n: int, counts: Sequence[int]) -> Dist:
    total = sum(counts)
    if total <= 0:
        raise ValueError("empty counts")
    return Dist(n, tuple(Fraction(c, total) for c in counts))


def flat(n: int, support: Iterable[int]) -> Dist:
    """Flat (uniform-on-support) source; min-entropy = log2(|support|)."""
    sup = sorted(set(support))
    if not sup:
        raise ValueError("empty support")
    q = Fraction(1, len(sup))
    w = [ZERO] * (1 << n)
    for x in sup:
        w[x] = q
    return Dist(n, tuple(w))


def stat_distance(p: Dist, q: Dist) -> Fraction:
    if p.n != q.n:
        raise ValueError("arity mismatch")
    return sum((abs(a - b) for a, b in zip(p.w, q.w)), ZERO) / 2


def stat_distance_maps(p: dict, q: dict) -> Fraction:
    """TV distance of two sparse weight maps (missing keys weigh 0)."""
    keys = set(p) | set(q)
    return sum((abs(p.get(k, ZERO) - q.get(k, ZERO)) for k in keys), ZERO) / 2


def min_entropy(p: Dist) -> float:
    top = max(p.w)
    return -_log2_fraction(top)


def avg_cond_min_entropy(joint: dict, x_index: int = 0) -> float:
    """Average conditional min-entropy H~(X | rest) of a sparse joint
    weight map keyed by tuples; coordinate x_index is X.

    Computed exactly as -log2( sum over side info of max_x P[x, w] ).
    """
    best: dict = {}
    for key, pr in joint.items():
        if pr <= 0:
            continue
        side = key[:x_index] + key[x_index + 1:]
        if pr > best.get(side, ZERO):
            best[side] = pr
    total = sum(best.values(), ZERO)
    return -_log2_fraction(total)


def pushforward(src: Dist, f: Callable[[int], int], n_out: int) -> Dist:
    w = [ZERO] * (1 << n_out)
    for x, p in enumerate(src.w):
        if p > 0:
            w[f(x)] += p
    return Dist(n_out, tuple(w))


def pushforward_map(weights: dict, f: Callable) -> dict:
    """Sparse pushforward: weights keyed by anything, f maps key -> key."""
    out: dict = {}
    for k, p in weights.items():
        if p > 0:
            kk = f(k)
            out[kk] = out.get(kk, ZERO) + p
    return out


def xor_bit_dists(dists: Sequence[Dist]) -> Dist:
    """Distribution of the XOR of independent 1-bit distributions."""
    p1 = ONE  # running Pr[xor = 0] via bias arithmetic
    # bias representation: Pr[0] - Pr[1]
    bias = ONE
    for d in dists:
        if d.n != 1:
            raise ValueError("xor law applies to 1-bit distributions")
        bias *= d.w[0] - d.w[1]
    p0 = (ONE + bias) / 2
    return Dist(1, (p0, ONE - p0))


def bit_error(d: Dist) -> Fraction:
    """Distance of a 1-bit distribution from uniform: |Pr[0] - 1/2|."""
    if d.n != 1:
        raise ValueError("1-bit distribution required")
    return abs(d.w[0] - Fraction(1, 2))


def twise_deviation(joint_bits: Dist, t: int) -> Fraction:
    """Max over index sets S (|S| <= t) and assignments v of
    |Pr[X_S = v] - 2^-|S||, treating the n-bit Dist as n single bits."""
    n = joint_bits.n
    worst = ZERO
    from itertools import combinations

    for size in range(1, min(t, n) + 1):
        target = Fraction(1, 1 << size)
        for idxs in combinations(range(n), size):
            marg = [ZERO] * (1 << size)
            for x, p in enumerate(joint_bits.w):
                if p > 0:
                    v = 0
                    for j, i in enumerate(idxs):
                        v = (v << 1) | ((x >> (n - 1 - i)) & 1)
                    marg[v] += p
            for pv in marg:
                dev = abs(pv - target)
                if dev > worst:
                    worst = dev
    return worst


def sample_flat_source(rng, n: int, k: int) -> Dist:
    """Random flat (n, k) source: uniform over 2^k sampled distinct points."""
    size = 1 << k
    if size > (1 << n):
        raise ValueError("k exceeds n")
    sup = rng.choice(1 << n, size=size, replace=False)
    return flat(n, (int(x) for x in sup))


def bitstring_of(x: int, n: int) -> BitString:
    return BitString(n, x)
