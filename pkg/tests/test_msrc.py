from fractions import Fraction

import numpy as np
import pytest

from extlab.bits import BitString
from extlab.msrc import (SyntheticGenerator, default_params,
                         exact_majority_prob_one, majority,
                         majority_bias_bound, make_generator, multi_ext,
                         reduce_bits)
from extlab.nipm import ParamError


def test_params_validation():
    default_params(11)
    with pytest.raises(ParamError):
        default_params(10)  # even arity
    with pytest.raises(ParamError):
        default_params(11, alpha=0.7)


def test_majority():
    assert majority([1, 1, 0]) == 1
    assert majority([0, 1, 0]) == 0
    with pytest.raises(ValueError):
        majority([0, 1])


def test_exact_majority_prob_one():
    assert exact_majority_prob_one(3, 0) == Fraction(1, 2)
    assert exact_majority_prob_one(3, 2) == 1  # majority already pinned
    # r=3, one pinned 1: need >= 1 of 2 free ones -> 3/4
    assert exact_majority_prob_one(3, 1) == Fraction(3, 4)
    assert exact_majority_prob_one(101, 101) == 1


def test_generator_is_deterministic_under_seed():
    p = default_params(5)
    gen = SyntheticGenerator(params=p, seed=7, bad_set=(2,))
    srcs = [BitString(16, v) for v in (0x1111, 0x2222, 0x3333)]
    a = gen.matrices(srcs)
    b = gen.matrices(srcs)
    assert all(x.rows == y.rows for x, y in zip(a, b))
    ones = BitString(p.m, (1 << p.m) - 1)
    assert a[2].rows == (ones,) * p.L  # bad index pinned to constant
    # different sources give different matrices
    c = gen.matrices([BitString(16, v) for v in (0x1111, 0x2222, 0x4444)])
    assert any(x.rows != y.rows for x, y in zip(a, c))


def test_make_generator_caps_bad_set():
    rng = np.random.Generator(np.random.Philox(61))
    p = default_params(9, alpha=0.25)  # max bad = ceil(9^0.25) = 2
    gen = make_generator(rng, p, n_bad=2)
    assert len(gen.bad_set) == 2
    with pytest.raises(ParamError):
        make_generator(rng, p, n_bad=3)


def test_reduce_and_multi_ext_roundtrip():
    rng = np.random.Generator(np.random.Philox(62))
    p = default_params(5)
    gen = make_generator(rng, p, n_bad=0)
    srcs = [BitString(16, int(rng.integers(1 << 16))) for _ in range(3)]
    weak = BitString(16, int(rng.integers(1 << 16)))
    bits = reduce_bits(gen.matrices(srcs), weak, p)
    assert len(bits) == 5 and set(bits) <= {0, 1}
    assert multi_ext(gen, srcs, weak) == majority(bits)


def test_good_bits_are_roughly_fair():
    rng = np.random.Generator(np.random.Philox(63))
    p = default_params(5)
    gen = make_generator(rng, p, n_bad=0)
    total = ones = 0
    for _ in range(400):
        srcs = [BitString(16, int(rng.integers(1 << 16)))
                for _ in range(3)]
        weak = BitString(16, int(rng.integers(1 << 16)))
        bits = reduce_bits(gen.matrices(srcs), weak, p)
        ones += sum(bits)
        total += len(bits)
    assert abs(ones / total - 0.5) < 0.05


def test_bias_bound_shrinks_with_arity():
    assert majority_bias_bound(default_params(101)) < \
        majority_bias_bound(default_params(11))
