"""Rejection samplers and seed expansion.

All expansion is deterministic from a seed plus a 16-bit nonce, so matrix
rows, secret vectors, and mask vectors can be regenerated independently.
The candidate filters (`rej_uniform`, `rej_eta`) are exposed separately so
they can be exercised on raw byte streams.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .params import N, Q, ParamSet
from .xof import batch_shake, shake

_UNIFORM_CHUNK = 168 * 5   # five SHAKE-128 blocks per refill
_ETA_CHUNK = 136           # one SHAKE-256 block per refill


def rej_uniform(stream_bytes: bytes, need: int) -> tuple[np.ndarray, int]:
    """Filter 3-byte little-endian candidates (low 23 bits) to [0, q).

    Returns (accepted coefficients, bytes consumed). Consumption stops at
    the first candidate that completes the request.
    """
    raw = np.frombuffer(stream_bytes, dtype=np.uint8)
    ngroups = len(raw) // 3
    trip = raw[: 3 * ngroups].reshape(ngroups, 3).astype(np.int64)
    cand = trip[:, 0] | (trip[:, 1] << 8) | ((trip[:, 2] & 0x7F) << 16)
    ok = cand < Q
    accepted = kernels.lanes_compact(cand, ok)
    if len(accepted) >= need:
        # index of the candidate that fills the request
        last = int(np.nonzero(ok)[0][need - 1])
        return accepted[:need], 3 * (last + 1)
    return accepted, 3 * ngroups


def rej_eta(stream_bytes: bytes, eta: int, need: int) -> tuple[np.ndarray, int]:
    """Filter half-byte candidates (low nibble first) to [-eta, eta]."""
    raw = np.frombuffer(stream_bytes, dtype=np.uint8).astype(np.int64)
    cand = np.empty(2 * len(raw), dtype=np.int64)
    cand[0::2] = raw & 0x0F
    cand[1::2] = raw >> 4
    if eta == 2:
        ok = cand < 15
        vals = 2 - (cand % 5)
    elif eta == 4:
        ok = cand < 9
        vals = 4 - cand
    else:
        raise ValueError("eta must be 2 or 4")
    accepted = kernels.lanes_compact(vals, ok)
    if len(accepted) >= need:
        last = int(np.nonzero(ok)[0][need - 1])
        return accepted[:need], (last + 2) // 2
    return accepted, len(raw)


def _fill_rejection(xof, filt, need: int, chunk: int) -> np.ndarray:
    out = []
    got = 0
    while got < need:
        coeffs, _ = filt(xof.read(chunk), need - got)
        out.append(coeffs)
        got += len(coeffs)
    return np.concatenate(out) if len(out) > 1 else out[0]


def uniform_poly(seed: bytes, nonce: int) -> np.ndarray:
    """One uniform polynomial from SHAKE-128(seed || le16(nonce))."""
    xof = shake(128, seed + nonce.to_bytes(2, "little"))
    return _fill_rejection(xof, rej_uniform, N, _UNIFORM_CHUNK)


def eta_poly(seed: bytes, eta: int, nonce: int) -> np.ndarray:
    """One small polynomial from SHAKE-256(seed || le16(nonce))."""
    xof = shake(256, seed + nonce.to_bytes(2, "little"))
    return _fill_rejection(xof, lambda b, n: rej_eta(b, eta, n), N, _ETA_CHUNK)


def expand_a(rho: bytes, params: ParamSet) -> np.ndarray:
    """The k x l public matrix A-hat, entry (i, j) from nonce 256*i + j."""
    a = np.empty((params.k, params.l, N), dtype=np.int64)
    for i in range(params.k):
        for j in range(params.l):
            a[i, j] = uniform_poly(rho, (i << 8) | j)
    return a


def expand_s(rho_prime: bytes, params: ParamSet) -> tuple[np.ndarray, np.ndarray]:
    """Secret vectors (s1, s2) with coefficients in [-eta, eta]."""
    s1 = np.stack([eta_poly(rho_prime, params.eta, j) for j in range(params.l)])
    s2 = np.stack([eta_poly(rho_prime, params.eta, params.l + i)
                   for i in range(params.k)])
    return s1, s2


def expand_mask(rho_prime: bytes, kappa: int, params: ParamSet) -> np.ndarray:
    """Mask vector y with coefficients in [-(gamma1 - 1), gamma1]."""
    bits = params.z_bits
    total = N * bits // 8
    y = np.empty((params.l, N), dtype=np.int64)
    streams = [rho_prime + (kappa + j).to_bytes(2, "little") for j in range(params.l)]
    if len(streams) in (4, 8):
        chunks = batch_shake(256, streams).read(total)
    else:
        chunks = [shake(256, s).read(total) for s in streams]
    for j, chunk in enumerate(chunks):
        bitvals = np.unpackbits(np.frombuffer(chunk, dtype=np.uint8),
                                bitorder="little")
        weights = np.int64(1) << np.arange(bits, dtype=np.int64)
        cand = bitvals.reshape(N, bits).astype(np.int64) @ weights
        y[j] = params.gamma1 - cand
    return y


@dataclass(frozen=True)
class Challenge:
    """A tau-sparse ternary polynomial in dense and sparse forms.

    `signs[i]` is +1 or -1 for the coefficient at `positions[i]`; positions
    are strictly increasing.
    """

    poly: np.ndarray
    positions: tuple[int, ...]
    signs: tuple[int, ...]
    tau: int = field(default=0)

    def __post_init__(self):
        object.__setattr__(self, "tau", len(self.positions))


def sample_in_ball(c_tilde: bytes, tau: int) -> Challenge:
    """Challenge with tau coefficients in {-1, +1}, the rest zero."""
    xof = shake(256, c_tilde)
    sign_bits = int.from_bytes(xof.read(8), "little")
    c = np.zeros(N, dtype=np.int64)
    for i in range(N - tau, N):
        while True:
            j = xof.read(1)[0]
            if j <= i:
                break
        c[i] = c[j]
        c[j] = 1 - 2 * (sign_bits & 1)
        sign_bits >>= 1
    positions = np.nonzero(c)[0]
    return Challenge(poly=c,
                     positions=tuple(int(p) for p in positions),
                     signs=tuple(int(c[p]) for p in positions))
