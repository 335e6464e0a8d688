"""Keccak-f[1600], incremental SHAKE-128/256 streams, and batched lanes.

Two interchangeable stream engines expose the same ``read`` interface:

* :class:`Shake`: sponge built on our own :func:`keccak_permute`
  (the from-scratch reference, validated against FIPS 202 vectors);
* :class:`HashlibShake`: thin wrapper over :mod:`hashlib`'s SHAKE.

:func:`shake` returns the hashlib-backed engine (both are bit-identical;
the cross-check lives in the test suite). :func:`batch_shake` drives N
independent lanes in lockstep.
"""

from __future__ import annotations

import hashlib

SHAKE128_RATE = 168
SHAKE256_RATE = 136
_DOMAIN = 0x1F  # SHAKE domain-separation byte

_MASK64 = (1 << 64) - 1

_ROUND_CONSTANTS = (
    0x0000000000000001, 0x0000000000008082, 0x800000000000808A, 0x8000000080008000,
    0x000000000000808B, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008A, 0x0000000000000088, 0x0000000080008009, 0x000000008000000A,
    0x000000008000808B, 0x800000000000008B, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800A, 0x800000008000000A,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
)

# rotation offsets indexed x + 5*y
_RHO = (0, 1, 62, 28, 27,
        36, 44, 6, 55, 20,
        3, 10, 43, 25, 39,
        41, 45, 15, 21, 8,
        18, 2, 61, 56, 14)


def _rotl(x: int, n: int) -> int:
    return ((x << n) | (x >> (64 - n))) & _MASK64


def keccak_permute(state: list[int]) -> list[int]:
    """24-round Keccak-f[1600] on 25 64-bit lanes (lane i = x + 5*y)."""
    a = list(state)
    for rc in _ROUND_CONSTANTS:
        # theta
        c = [a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20] for x in range(5)]
        d = [c[(x - 1) % 5] ^ _rotl(c[(x + 1) % 5], 1) for x in range(5)]
        for x in range(5):
            dx = d[x]
            for y in range(0, 25, 5):
                a[x + y] ^= dx
        # rho + pi
        b = [0] * 25
        for x in range(5):
            for y in range(5):
                b[y + 5 * ((2 * x + 3 * y) % 5)] = _rotl(a[x + 5 * y], _RHO[x + 5 * y])
        # chi
        for y in range(0, 25, 5):
            row = b[y:y + 5]
            for x in range(5):
                a[x + y] = row[x] ^ (~row[(x + 1) % 5] & row[(x + 2) % 5] & _MASK64)
        # iota
        a[0] ^= rc
    return a


class SpongeState:
    """Keccak sponge with incremental absorb/squeeze."""

    def __init__(self, rate: int):
        self.rate = rate
        self.lanes = [0] * 25
        self.pos = 0          # byte position within the current rate block
        self.squeezing = False

    def absorb(self, data: bytes) -> None:
        assert not self.squeezing, "absorb after squeeze"
        for byte in data:
            self.lanes[self.pos >> 3] ^= byte << (8 * (self.pos & 7))
            self.pos += 1
            if self.pos == self.rate:
                self.lanes = keccak_permute(self.lanes)
                self.pos = 0

    def finalize(self) -> None:
        self.lanes[self.pos >> 3] ^= _DOMAIN << (8 * (self.pos & 7))
        self.lanes[(self.rate - 1) >> 3] ^= 0x80 << (8 * ((self.rate - 1) & 7))
        self.lanes = keccak_permute(self.lanes)
        self.pos = 0
        self.squeezing = True

    def squeeze(self, n: int) -> bytes:
        assert self.squeezing
        out = bytearray()
        while len(out) < n:
            if self.pos == self.rate:
                self.lanes = keccak_permute(self.lanes)
                self.pos = 0
            lane = self.lanes[self.pos >> 3]
            out.append((lane >> (8 * (self.pos & 7))) & 0xFF)
            self.pos += 1
        return bytes(out)


class Shake:
    """Incremental SHAKE stream over our own sponge."""

    def __init__(self, variant: int, data: bytes = b""):
        if variant not in (128, 256):
            raise ValueError("variant must be 128 or 256")
        self.variant = variant
        self._sponge = SpongeState(SHAKE128_RATE if variant == 128 else SHAKE256_RATE)
        if data:
            self._sponge.absorb(data)

    def absorb(self, data: bytes) -> None:
        self._sponge.absorb(data)

    def read(self, n: int) -> bytes:
        if not self._sponge.squeezing:
            self._sponge.finalize()
        return self._sponge.squeeze(n)


class HashlibShake:
    """Same stream interface, backed by hashlib's SHAKE implementation."""

    def __init__(self, variant: int, data: bytes = b""):
        if variant not in (128, 256):
            raise ValueError("variant must be 128 or 256")
        self.variant = variant
        self._h = hashlib.shake_128() if variant == 128 else hashlib.shake_256()
        self._offset = 0
        if data:
            self._h.update(data)

    def absorb(self, data: bytes) -> None:
        assert self._offset == 0, "absorb after squeeze"
        self._h.update(data)

    def read(self, n: int) -> bytes:
        out = self._h.digest(self._offset + n)[self._offset:]
        self._offset += n
        return out


def shake(variant: int, data: bytes = b"") -> HashlibShake:
    """Unbounded SHAKE byte stream (incremental squeeze of any granularity)."""
    return HashlibShake(variant, data)


def shake_digest(variant: int, data: bytes, n: int) -> bytes:
    return shake(variant, data).read(n)


class BatchXof:
    """N SHAKE lanes squeezed in lockstep; lane i equals a standalone stream
    over inputs[i]."""

    def __init__(self, variant: int, inputs: list[bytes]):
        if len(inputs) not in (4, 8):
            raise ValueError("batch width must be 4 or 8")
        self.rate = SHAKE128_RATE if variant == 128 else SHAKE256_RATE
        self.lanes = [shake(variant, data) for data in inputs]

    def read(self, n: int) -> list[bytes]:
        return [lane.read(n) for lane in self.lanes]

    def read_blocks(self, nblocks: int = 1) -> list[bytes]:
        return self.read(nblocks * self.rate)


def batch_shake(variant: int, inputs: list[bytes]) -> BatchXof:
    return BatchXof(variant, inputs)
