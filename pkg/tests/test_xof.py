"""Hash conformance: FIPS 202 vectors, an independent permutation oracle,
hashlib cross-checks, and batch-lane equality."""

import hashlib

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dilithium.xof import (BatchXof, HashlibShake, Shake, batch_shake,
                           keccak_permute, shake, shake_digest)

# squeeze of the all-zero state after one permutation, FIPS 202 reference
ZERO_STATE_LANE0 = 0xF1258F7940E1DDE7

SHAKE128_EMPTY = bytes.fromhex(
    "7f9c2ba4e88f827d616045507605853ed73b8093f6efbc88eb1a6eacfa66ef26")
SHAKE256_EMPTY = bytes.fromhex(
    "46b9dd2b0ba88d13233b3feb743eeb243fcd52ea62b81b82b50c27646ed5762f")


def _oracle_keccak(lanes):
    """Independent Keccak-f[1600] written over an (x, y) coordinate dict."""
    a = {(x, y): lanes[x + 5 * y] for x in range(5) for y in range(5)}
    rc_state = 1

    def rot(v, n):
        n %= 64
        return ((v << n) | (v >> (64 - n))) & (2 ** 64 - 1)

    def next_rc_bit():
        nonlocal rc_state
        bit = rc_state & 1
        rc_state <<= 1
        if rc_state & 0x100:
            rc_state ^= 0x171
            rc_state &= 0xFF
        return bit

    for _ in range(24):
        par = {x: a[x, 0] ^ a[x, 1] ^ a[x, 2] ^ a[x, 3] ^ a[x, 4]
               for x in range(5)}
        for x in range(5):
            d = par[(x - 1) % 5] ^ rot(par[(x + 1) % 5], 1)
            for y in range(5):
                a[x, y] ^= d
        # walk the rho/pi cycle explicitly
        b = {(0, 0): a[0, 0]}
        x, y = 1, 0
        for t in range(24):
            nx, ny = y, (2 * x + 3 * y) % 5
            b[nx, ny] = rot(a[x, y], (t + 1) * (t + 2) // 2)
            x, y = nx, ny
        for yy in range(5):
            for xx in range(5):
                a[xx, yy] = b[xx, yy] ^ (
                    (~b[(xx + 1) % 5, yy] & b[(xx + 2) % 5, yy])
                    & (2 ** 64 - 1))
        rc = 0
        for j in range(7):
            if next_rc_bit():
                rc ^= 1 << (2 ** j - 1)
        a[0, 0] ^= rc
    return [a[x, y] for y in range(5) for x in range(5)]


def test_permutation_against_oracle():
    state = list(range(25))
    assert keccak_permute(state) == _oracle_keccak(state)
    zero = keccak_permute([0] * 25)
    assert zero[0] == ZERO_STATE_LANE0
    assert zero == _oracle_keccak([0] * 25)


def test_fips_empty_vectors():
    for cls in (Shake, HashlibShake):
        assert cls(128).read(32) == SHAKE128_EMPTY
        assert cls(256).read(32) == SHAKE256_EMPTY


@given(st.binary(max_size=500), st.integers(1, 400))
@settings(max_examples=40, deadline=None)
def test_own_sponge_matches_hashlib(data, n):
    assert Shake(128, data).read(n) == hashlib.shake_128(data).digest(n)
    assert Shake(256, data).read(n) == hashlib.shake_256(data).digest(n)


@given(st.binary(max_size=300), st.lists(st.integers(1, 100), min_size=1,
                                         max_size=6))
@settings(max_examples=30, deadline=None)
def test_incremental_squeeze(data, chunks):
    total = sum(chunks)
    for make in (lambda: Shake(256, data), lambda: shake(256, data)):
        stream = make()
        pieces = b"".join(stream.read(c) for c in chunks)
        assert pieces == hashlib.shake_256(data).digest(total)


def test_incremental_absorb():
    a = Shake(128)
    a.absorb(b"hello ")
    a.absorb(b"world")
    assert a.read(64) == shake_digest(128, b"hello world", 64)


def test_absorb_after_squeeze_rejected():
    s = Shake(256, b"x")
    s.read(1)
    with pytest.raises(AssertionError):
        s.absorb(b"more")


@pytest.mark.parametrize("width", [4, 8])
@pytest.mark.parametrize("variant", [128, 256])
def test_batch_equals_sequential(width, variant, rng):
    inputs = [rng.bytes(i * 7 + 1) for i in range(width)]
    batch = batch_shake(variant, inputs)
    outs = batch.read(500)
    for data, got in zip(inputs, outs):
        assert got == shake_digest(variant, data, 500)
    # lockstep block reads continue each lane's stream
    more = batch.read_blocks(2)
    for data, got in zip(inputs, more):
        assert got == shake(variant, data).read(500 + 2 * batch.rate)[500:]


def test_batch_width_validation():
    with pytest.raises(ValueError):
        BatchXof(128, [b"a", b"b", b"c"])
