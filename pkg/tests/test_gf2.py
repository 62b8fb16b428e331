import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extlab import gf2

# spot checks against well-known field facts
AES_POLY = 0x11B  # x^8 + x^4 + x^3 + x + 1, also the lex-least for b=8


def test_known_moduli():
    assert gf2.IRREDUCIBLE[1] == 0b11
    assert gf2.IRREDUCIBLE[2] == 0b111            # x^2 + x + 1
    assert gf2.IRREDUCIBLE[8] == AES_POLY
    assert gf2.IRREDUCIBLE[16] == 0x1002B
    assert set(gf2.IRREDUCIBLE) == set(range(1, 65))


def test_aes_multiplication_vector():
    # classic AES example: {53} * {CA} = {01}
    assert gf2.mul(0x53, 0xCA, 8) == 0x01
    assert gf2.mul_slow(0x53, 0xCA, 8) == 0x01


def test_mul_identity_and_zero():
    for b in (1, 2, 8, 16, 32):
        top = (1 << b) - 1
        assert gf2.mul(top, 1, b) == top
        assert gf2.mul(0, top, b) == 0


@given(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255))
@settings(max_examples=200)
def test_field_laws_b8(a, b, c):
    m = lambda x, y: gf2.mul(x, y, 8)
    assert m(a, b) == m(b, a)
    assert m(a, m(b, c)) == m(m(a, b), c)
    assert m(a, b ^ c) == m(a, b) ^ m(a, c)


@given(st.integers(1, (1 << 16) - 1))
@settings(max_examples=100)
def test_tables_agree_with_slow_mul(a):
    assert gf2.mul(a, 0x1234 % (1 << 16), 16) == \
        gf2.mul_slow(a, 0x1234, 16)


@given(st.integers(1, (1 << 16) - 1))
@settings(max_examples=50)
def test_inverse_via_pow(a):
    inv = gf2.pow_(a, (1 << 16) - 2, 16)
    assert gf2.mul(a, inv, 16) == 1


def test_poly_eval_horner():
    # p(x) = 3 x^2 + 1 over GF(2^4): p(2) = mul(3,4) ^ 1
    x2 = gf2.mul(2, 2, 4)
    assert gf2.poly_eval([3, 0, 1], 2, 4) == gf2.mul(3, x2, 4) ^ 1
    assert gf2.poly_eval([7], 9, 4) == 7  # constant polynomial


def test_rs_encode_is_poly_evaluation():
    msg = [1, 2, 3]
    cw = gf2.rs_encode(msg, 8, 4)
    assert len(cw) == 8
    assert cw == [gf2.poly_eval(msg, x, 4) for x in range(8)]
    with pytest.raises(ValueError):
        gf2.rs_encode(msg, 17, 4)


def test_rs_distance_on_small_code():
    # distinct degree-<2 messages agree on at most 1 of 4 points
    seen = {}
    for m0 in range(4):
        for m1 in range(4):
            cw = tuple(gf2.rs_encode([m0, m1], 4, 2))
            seen[(m0, m1)] = cw
    msgs = list(seen)
    for i in range(len(msgs)):
        for j in range(i + 1, len(msgs)):
            a, b = seen[msgs[i]], seen[msgs[j]]
            agree = sum(x == y for x, y in zip(a, b))
            assert agree <= 1


def test_np_tables_match_mul():
    import numpy as np

    log, exp = gf2.np_tables(8)
    a = np.arange(1, 256)
    b = np.full_like(a, 0x37)
    prod = exp[log[a] + log[b]]
    for ai, pi in zip(a, prod):
        assert gf2.mul(int(ai), 0x37, 8) == int(pi)
