import numpy as np
import pytest

from extlab.bits import BitString, matrix, slice_bits
from extlab.cbreak import adv_gen, flip_flop
from extlab.nipm import ParamError, recursive_nipm
from extlab.nmx import (desk_params, micro_params, nm_ext, plan_params,
                        t_nm_ext)
from extlab.sext import ext


def test_plan_params_desk_scale():
    p = desk_params()
    assert p.n == 1024 and p.d == 512 and p.m == 32
    assert p.adv.advice_len == p.nipm.L
    assert p.d2 <= p.ff.m_out
    assert p.nipm.d_min <= p.d2
    assert p.m == p.nipm.m_out
    nom = p.nominal
    assert nom.eps1 == pytest.approx(2 ** -8 / (2 * 4 * 1024))
    assert nom.L == 2 * 31  # 2 * ceil(log2(n/eps1)), eps1 ~ 2^-21


def test_plan_params_named_errors():
    with pytest.raises(ParamError) as e:
        plan_params(1024, 768, 512, 32, 2 ** -8, rescale="bogus")
    assert e.value.name == "rescale"
    with pytest.raises(ParamError) as e:
        # entropy budget too small for the flip-flop output
        plan_params(1024, 256, 512, 32, 2 ** -8)
    assert e.value.name == "k"


def test_log_rescale_gives_larger_eps1():
    lin = plan_params(1024, 768, 512, 32, 2 ** -8, rescale="linear")
    log = plan_params(1024, 768, 512, 32, 2 ** -8, rescale="log")
    assert log.nominal.eps1 > lin.nominal.eps1


def test_micro_params_shape():
    p = micro_params()
    assert (p.n, p.d, p.m) == (16, 16, 1)
    assert p.adv.advice_len == 10
    assert p.nipm.m_out == 1 and p.d2 == p.ff.m_out == 8


def test_nm_ext_matches_manual_pipeline():
    p = micro_params()
    rng = np.random.Generator(np.random.Philox(51))
    for _ in range(50):
        x = BitString(16, int(rng.integers(1 << 16)))
        y = BitString(16, int(rng.integers(1 << 16)))
        advice = adv_gen(x, y, p.adv)
        y1 = slice_bits(y, p.d1)
        rows = [flip_flop(x, y1, advice.bit(i), p.ff)
                for i in range(advice.n)]
        vbar1 = slice_bits(rows[0], p.d2)
        ybar = ext(p.scheme_ybar(), y, vbar1)
        ybar1 = slice_bits(ybar, p.d3)
        refresh = p.scheme_refresh()
        z = [ext(refresh, v, ybar1) for v in rows]
        want = recursive_nipm(matrix(z), ybar, p.nipm)
        assert nm_ext(x, y, p) == want


def test_bootstrapped_mode_agrees_with_basic():
    # compose_merger(lt_nipm) is the same computation as recursive_nipm
    basic = micro_params(merger_mode="basic")
    boot = micro_params(merger_mode="bootstrapped")
    rng = np.random.Generator(np.random.Philox(52))
    for _ in range(50):
        x = BitString(16, int(rng.integers(1 << 16)))
        y = BitString(16, int(rng.integers(1 << 16)))
        assert t_nm_ext(x, y, basic) == t_nm_ext(x, y, boot)


def test_nm_ext_width_checks():
    p = micro_params()
    with pytest.raises(ValueError):
        nm_ext(BitString(15, 0), BitString(16, 0), p)
    with pytest.raises(ValueError):
        nm_ext(BitString(16, 0), BitString(17, 0), p)


def test_output_is_seed_sensitive():
    # flipping one seed bit should change the output about half the time
    p = micro_params()
    rng = np.random.Generator(np.random.Philox(53))
    diff = 0
    trials = 3000
    for _ in range(trials):
        x = BitString(16, int(rng.integers(1 << 16)))
        y = BitString(16, int(rng.integers(1 << 16)))
        diff += nm_ext(x, y, p) != nm_ext(x, y ^ BitString(16, 1), p)
    assert 0.35 < diff / trials < 0.65
