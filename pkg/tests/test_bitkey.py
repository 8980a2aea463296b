import pytest
from hypothesis import given, strategies as st

from zpred.bitkey import (BitString, ContractError, lcp, lcp_len, msb, pack, pred_prefix,
                          slice, succ_prefix, trailing_zeros, two_fattest,
                          two_fattest_iterative, unpack)
from zpred.oracle import naive_lcp, naive_msb, naive_two_fattest

B = BitString.parse


def test_slice_examples():
    assert slice(BitString.key(0b0110, 4), 0, 3) == B("011")
    assert slice(B("0110"), 0, 0) == B("")
    assert slice(B("00100110100100"), 0, 8) == B("00100110")
    assert slice(B("0110"), 1, 3) == B("11")


@pytest.mark.parametrize("a,b", [(-1, 2), (3, 2), (0, 5)])
def test_slice_out_of_range(a, b):
    with pytest.raises(ContractError):
        slice(B("0110"), a, b)


def test_lcp_examples():
    assert lcp(B("0110"), B("0010")) == B("0")
    assert lcp(B("0100"), B("0111")) == B("01")
    assert lcp(B("0110"), B("0110")) == B("0110")
    assert lcp(B(""), B("1")) == B("")


def test_two_fattest_examples():
    assert two_fattest(7, 13) == 8
    assert two_fattest(5, 7) == 6
    for b in range(1, 300):
        assert two_fattest(0, b) == 1 << (b.bit_length() - 1)


@pytest.mark.parametrize("a,b", [(3, 3), (5, 2), (-1, 4)])
def test_two_fattest_rejects_empty(a, b):
    with pytest.raises(ContractError):
        two_fattest(a, b)


def test_two_fattest_exhaustive():
    for b in range(1, 257):
        for a in range(b):
            f = two_fattest(a, b)
            assert a < f <= b
            assert f == naive_two_fattest(a, b) == two_fattest_iterative(a, b)
            tz = trailing_zeros(f)
            assert all(trailing_zeros(v) < tz for v in range(a + 1, b + 1) if v != f)
            # both halves hold at most one multiple of 2**tz
            step = 1 << tz
            assert sum(1 for v in range(a + 1, f) if v % step == 0) <= 1
            assert sum(1 for v in range(f + 1, b + 1) if v % step == 0) <= 1


def test_prefix_arithmetic_examples():
    assert succ_prefix(B("0011")) == B("0100")
    assert succ_prefix(B("111")) is None
    assert pred_prefix(B("000")) is None
    assert pred_prefix(B("0100")) == B("0011")
    assert succ_prefix(B("")) is None


def test_msb_examples():
    assert msb(1) == 0
    assert msb(8) == 3
    assert msb(13) == 3
    with pytest.raises(ContractError):
        msb(0)


@given(st.integers(1, 1 << 64))
def test_msb_matches_shift_loop(z):
    assert msb(z) == naive_msb(z)


@given(st.integers(0, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
def test_succ_pred_inverse(p):
    s = BitString(p[1], p[0])
    up = succ_prefix(s)
    if up is not None:
        assert pred_prefix(up) == s
    down = pred_prefix(s)
    if down is not None:
        assert succ_prefix(down) == s


bitstrings = st.text("01", max_size=20).map(B)


@given(bitstrings, bitstrings)
def test_lcp_properties(u, v):
    c = lcp(u, v)
    assert c == lcp(v, u)
    assert lcp(c, c) == c
    assert str(c) == naive_lcp(str(u), str(v))
    # first differing position
    assert all(str(u)[i] == str(v)[i] for i in range(len(c)))
    if len(c) < min(len(u), len(v)):
        assert str(u)[len(c)] != str(v)[len(c)]


@given(st.integers(1, 64).flatmap(lambda w: st.tuples(st.just(w), st.integers(0, (1 << w) - 1),
                                                      st.integers(0, (1 << w) - 1))))
def test_lcp_len_on_keys(t):
    w, x, y = t
    assert lcp_len(x, y, w) == len(naive_lcp(format(x, "b").zfill(w), format(y, "b").zfill(w)))


@given(bitstrings)
def test_pack_roundtrip(s):
    assert unpack(pack(s.value, len(s))) == s


def test_bitstring_text():
    s = B("0010")
    assert str(s) == "0010" and len(s) == 4 and s.bit(2) == 1
    assert B("00").is_prefix_of(s) and B("00").is_proper_prefix_of(s)
    assert s.is_prefix_of(s) and not s.is_proper_prefix_of(s)
    with pytest.raises(ContractError):
        B("0a1")
