"""Negacyclic NTT over Z_q[x]/(x^256 + 1) with CT/GS butterflies.

The forward transform supports three first-level variants:

* ``montgomery``: the usual Montgomery-multiplied butterfly (|coeff| < q);
* ``tailored``: the shift/multiply/subtract reduction, valid while the
  level-1 product stays within (-2^40, 2^40] (|coeff| <= 2^17);
* ``skip``: no reduction at all, for tiny inputs (|coeff| <= 2^8)
  whose level-1 products already fit in 32 bits.

Convention: forward output is the plain evaluation f(zeta^{2*brv8(i)+1})
in bit-reversed order, and ``ntt_inverse`` is its exact inverse (the
n^{-1} * 2^32 constant is folded into the final Montgomery pass), so the
forward/inverse roundtrip is the identity. ``poly_mul`` Montgomery-scales
one operand internally to cancel the 2^{-32} of the pointwise products.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .params import N, Q, ROOT_OF_UNITY
from .ring import MONT_SQ, montgomery_reduce, partial_reduce, tailored_reduce

FIRST_LEVEL_MODES = ("montgomery", "tailored", "skip")

_MODE_BOUND = {"montgomery": Q - 1, "tailored": 1 << 17, "skip": 1 << 8}


def _brv8(x: int) -> int:
    r = 0
    for _ in range(8):
        r = (r << 1) | (x & 1)
        x >>= 1
    return r


ZETAS_PLAIN = tuple(pow(ROOT_OF_UNITY, _brv8(k), Q) for k in range(N))
ZETAS_MONT = tuple((z << 32) % Q for z in ZETAS_PLAIN)

_ZETAS_PLAIN_ARR = np.array(ZETAS_PLAIN, dtype=np.int64)
_ZETAS_MONT_ARR = np.array(ZETAS_MONT, dtype=np.int64)

# final inverse-NTT scale: montgomery_reduce(F * x) == x / 256 (mod q)
_INV_SCALE = (pow(N, -1, Q) << 32) % Q


def _check_input(f: np.ndarray, mode: str) -> np.ndarray:
    if mode not in FIRST_LEVEL_MODES:
        raise ValueError(f"unknown first-level mode {mode!r}")
    f = np.asarray(f, dtype=np.int64)
    assert f.shape[-1] == N
    assert int(np.abs(f).max(initial=0)) <= _MODE_BOUND[mode], \
        f"input magnitude incompatible with {mode!r} first level"
    return f


def _ntt_scalar(coeffs, mode):
    a = list(coeffs)
    k = 1
    length = 128
    first = True
    while length >= 1:
        for start in range(0, N, 2 * length):
            zm = ZETAS_MONT[k]
            zp = ZETAS_PLAIN[k]
            k += 1
            for j in range(start, start + length):
                x = a[j + length]
                if first and mode == "skip":
                    t = zp * x
                elif first and mode == "tailored":
                    t = tailored_reduce(zp * x)
                else:
                    t = montgomery_reduce(zm * x)
                a[j + length] = a[j] - t
                a[j] = a[j] + t
        first = False
        length >>= 1
    return a


def _ntt_lanes(a, mode):
    a = a.copy()
    k = 1
    length = 128
    first = True
    while length >= 1:
        nblocks = N // (2 * length)
        v = a.reshape(a.shape[:-1] + (nblocks, 2, length))
        hi = v[..., 1, :]
        if first and mode != "montgomery":
            prod = _ZETAS_PLAIN_ARR[k:k + nblocks, None] * hi
            t = prod if mode == "skip" else kernels.lanes_tailored(prod)
        else:
            t = kernels.lanes_montgomery(_ZETAS_MONT_ARR[k:k + nblocks, None] * hi)
        k += nblocks
        lo = v[..., 0, :].copy()
        v[..., 0, :] = lo + t
        v[..., 1, :] = lo - t
        first = False
        length >>= 1
    return a


def ntt_forward(f: np.ndarray, first_level_mode: str = "montgomery") -> np.ndarray:
    """Forward NTT (bit-reversed output order); accepts shape (..., 256)."""
    f = _check_input(f, first_level_mode)
    if kernels.lanes_enabled():
        return _ntt_lanes(f, first_level_mode)
    flat = f.reshape(-1, N)
    out = np.array([_ntt_scalar(row.tolist(), first_level_mode) for row in flat],
                   dtype=np.int64)
    return out.reshape(f.shape)


def _intt_scalar(coeffs):
    a = [partial_reduce(x) for x in coeffs]
    k = N - 1
    length = 1
    while length <= 128:
        for start in range(0, N, 2 * length):
            zeta = -ZETAS_MONT[k]
            k -= 1
            for j in range(start, start + length):
                t = a[j]
                a[j] = t + a[j + length]
                a[j + length] = montgomery_reduce(zeta * (t - a[j + length]))
        length <<= 1
    return [montgomery_reduce(_INV_SCALE * x) for x in a]


def _intt_lanes(a):
    a = kernels.lanes_partial(a)
    k = N - 1
    length = 1
    while length <= 128:
        nblocks = N // (2 * length)
        zs = -_ZETAS_MONT_ARR[k - nblocks + 1:k + 1][::-1]
        k -= nblocks
        v = a.reshape(a.shape[:-1] + (nblocks, 2, length))
        lo = v[..., 0, :].copy()
        hi = v[..., 1, :].copy()
        v[..., 0, :] = lo + hi
        v[..., 1, :] = kernels.lanes_montgomery(zs[:, None] * (lo - hi))
        length <<= 1
    return kernels.lanes_montgomery(np.int64(_INV_SCALE) * a)


def ntt_inverse(fhat: np.ndarray) -> np.ndarray:
    """Inverse NTT; exact inverse of :func:`ntt_forward`, output |coeff| < q."""
    fhat = np.asarray(fhat, dtype=np.int64)
    assert fhat.shape[-1] == N
    if kernels.lanes_enabled():
        return _intt_lanes(fhat)
    flat = fhat.reshape(-1, N)
    out = np.array([_intt_scalar(row.tolist()) for row in flat], dtype=np.int64)
    return out.reshape(fhat.shape)


def pointwise_montgomery(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """out[i] = montgomery_reduce(a[i] * b[i]) lane-wise."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if kernels.lanes_enabled():
        return kernels.lanes_montgomery(a * b)
    prod = (a * b).reshape(-1)
    out = np.array([montgomery_reduce(int(z)) for z in prod], dtype=np.int64)
    return out.reshape(np.broadcast_shapes(a.shape, b.shape))


def to_montgomery(a: np.ndarray) -> np.ndarray:
    """Scale into the Montgomery domain: result = a * 2^32 mod q."""
    return pointwise_montgomery(a, np.int64(MONT_SQ))


def poly_mul(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Exact negacyclic product of canonical polynomials, canonical output."""
    fhat = ntt_forward(np.asarray(f, dtype=np.int64) % Q)
    ghat = to_montgomery(ntt_forward(np.asarray(g, dtype=np.int64) % Q))
    res = ntt_inverse(pointwise_montgomery(fhat, ghat))
    return res % Q
