"""Byte codecs for keys and signatures.

Coefficient packing is little-endian bit packing throughout: coefficient 0
occupies the lowest bits of byte 0. Signed ranges are shifted to
non-negative values before packing (eta - a, 2^{d-1} - a, gamma1 - a).
Decoders validate canonicity and raise :class:`DecodeError` on any
malformed input, including non-canonical hint encodings.
"""

from __future__ import annotations

import numpy as np

from .params import CTILDE_BYTES, D, SEED_BYTES, ParamSet


class DecodeError(ValueError):
    """Raised when a byte string is not a canonical encoding."""


def pack_bits(values: np.ndarray, bits: int) -> bytes:
    """Pack non-negative values of `bits` bits each, little-endian."""
    values = np.asarray(values, dtype=np.int64).reshape(-1)
    if np.any(values < 0) or np.any(values >> bits):
        raise ValueError(f"values out of range for {bits}-bit packing")
    shifts = np.arange(bits, dtype=np.int64)
    bitvals = ((values[:, None] >> shifts) & 1).astype(np.uint8)
    return np.packbits(bitvals.reshape(-1), bitorder="little").tobytes()


def unpack_bits(data: bytes, bits: int, count: int) -> np.ndarray:
    """Inverse of :func:`pack_bits` for `count` values."""
    need = (count * bits + 7) // 8
    if len(data) < need:
        raise DecodeError("truncated bit-packed field")
    bitvals = np.unpackbits(np.frombuffer(data[:need], dtype=np.uint8),
                            bitorder="little")[: count * bits]
    weights = np.int64(1) << np.arange(bits, dtype=np.int64)
    return bitvals.reshape(count, bits).astype(np.int64) @ weights


def pack_offset(values: np.ndarray, offset: int, bits: int) -> bytes:
    """Pack signed values a as offset - a."""
    return pack_bits(offset - np.asarray(values, dtype=np.int64), bits)


def unpack_offset(data: bytes, offset: int, bits: int, count: int) -> np.ndarray:
    return offset - unpack_bits(data, bits, count)


def pack_pk(rho: bytes, t1: np.ndarray, params: ParamSet) -> bytes:
    return rho + pack_bits(t1, 10)


def unpack_pk(pk: bytes, params: ParamSet) -> tuple[bytes, np.ndarray]:
    if len(pk) != params.pk_bytes:
        raise DecodeError(f"public key must be {params.pk_bytes} bytes")
    rho = pk[:SEED_BYTES]
    t1 = unpack_bits(pk[SEED_BYTES:], 10, params.k * 256).reshape(params.k, 256)
    return rho, t1


def pack_sk(rho: bytes, key: bytes, tr: bytes, s1: np.ndarray, s2: np.ndarray,
            t0: np.ndarray, params: ParamSet) -> bytes:
    eta, eb = params.eta, params.eta_bits
    return b"".join((
        rho, key, tr,
        pack_offset(s1, eta, eb),
        pack_offset(s2, eta, eb),
        pack_offset(t0, 1 << (D - 1), D),
    ))


def unpack_sk(sk: bytes, params: ParamSet):
    if len(sk) != params.sk_bytes:
        raise DecodeError(f"secret key must be {params.sk_bytes} bytes")
    eta, eb = params.eta, params.eta_bits
    pos = 0

    def take(n: int) -> bytes:
        nonlocal pos
        pos += n
        return sk[pos - n: pos]

    rho = take(SEED_BYTES)
    key = take(SEED_BYTES)
    tr = take(SEED_BYTES)
    s1 = unpack_offset(take(params.l * 256 * eb // 8), eta, eb,
                       params.l * 256).reshape(params.l, 256)
    s2 = unpack_offset(take(params.k * 256 * eb // 8), eta, eb,
                       params.k * 256).reshape(params.k, 256)
    t0 = unpack_offset(take(params.k * 256 * D // 8), 1 << (D - 1), D,
                       params.k * 256).reshape(params.k, 256)
    if np.any(np.abs(s1) > eta) or np.any(np.abs(s2) > eta):
        raise DecodeError("secret coefficients out of range")
    return rho, key, tr, s1, s2, t0


def pack_w1(w1: np.ndarray, params: ParamSet) -> bytes:
    return pack_bits(w1, params.w1_bits)


def pack_hints(h: np.ndarray, params: ParamSet) -> bytes:
    """omega position bytes (zero padded) plus k cumulative-count bytes."""
    h = np.asarray(h, dtype=np.int64).reshape(params.k, 256)
    positions = bytearray(params.omega + params.k)
    idx = 0
    for i in range(params.k):
        for j in np.nonzero(h[i])[0]:
            positions[idx] = int(j)
            idx += 1
        positions[params.omega + i] = idx
    return bytes(positions)


def unpack_hints(data: bytes, params: ParamSet) -> np.ndarray:
    """Strict inverse of :func:`pack_hints`; rejects non-canonical encodings."""
    if len(data) != params.omega + params.k:
        raise DecodeError("hint field has wrong length")
    h = np.zeros((params.k, 256), dtype=np.int64)
    prev_count = 0
    for i in range(params.k):
        count = data[params.omega + i]
        if count < prev_count or count > params.omega:
            raise DecodeError("hint counts not non-decreasing within omega")
        for idx in range(prev_count, count):
            if idx > prev_count and data[idx] <= data[idx - 1]:
                raise DecodeError("hint positions not strictly increasing")
            h[i, data[idx]] = 1
        prev_count = count
    if any(data[idx] != 0 for idx in range(prev_count, params.omega)):
        raise DecodeError("hint padding is not zero")
    return h


def pack_sig(c_tilde: bytes, z: np.ndarray, h: np.ndarray,
             params: ParamSet) -> bytes:
    return c_tilde + pack_offset(z, params.gamma1, params.z_bits) \
        + pack_hints(h, params)


def unpack_sig(sig: bytes, params: ParamSet):
    if len(sig) != params.sig_bytes:
        raise DecodeError(f"signature must be {params.sig_bytes} bytes")
    c_tilde = sig[:CTILDE_BYTES]
    zb = params.l * 256 * params.z_bits // 8
    z = unpack_offset(sig[CTILDE_BYTES: CTILDE_BYTES + zb], params.gamma1,
                      params.z_bits, params.l * 256).reshape(params.l, 256)
    h = unpack_hints(sig[CTILDE_BYTES + zb:], params)
    return c_tilde, z, h
