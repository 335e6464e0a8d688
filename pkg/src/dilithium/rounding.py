"""Power2Round, Decompose/HighBits/LowBits, hints, and norm checks.

All functions accept either Python ints or numpy int64 arrays and use only
shift/multiply/compare arithmetic (no data-dependent branching).
"""

from __future__ import annotations

import numpy as np

from .params import D, Q

_GAMMA2_88 = (Q - 1) // 88
_GAMMA2_32 = (Q - 1) // 32


def power2round(r, d: int = D):
    """Split canonical r as r = r1*2^d + r0 with r0 in (-2^{d-1}, 2^{d-1}]."""
    r1 = (r + (1 << (d - 1)) - 1) >> d
    return r1, r - (r1 << d)


def decompose(r, gamma2: int):
    """Split canonical r as r = r1*(2*gamma2) + r0 mod q, r0 in (-gamma2, gamma2],
    with the wrap case r - r0 = q - 1 mapped to (0, r0 - 1)."""
    r1 = (r + 127) >> 7
    if gamma2 == _GAMMA2_32:
        r1 = (r1 * 1025 + (1 << 21)) >> 22
        r1 = r1 & 15
    elif gamma2 == _GAMMA2_88:
        r1 = (r1 * 11275 + (1 << 23)) >> 24
        r1 = r1 ^ (((43 - r1) >> 31) & r1)
    else:
        raise ValueError("gamma2 must be (q-1)/88 or (q-1)/32")
    r0 = r - r1 * 2 * gamma2
    r0 = r0 - ((((Q - 1) // 2 - r0) >> 31) & Q)
    return r1, r0


def highbits(r, gamma2: int):
    return decompose(r, gamma2)[0]


def lowbits(r, gamma2: int):
    return decompose(r, gamma2)[1]


def make_hint(z, r, gamma2: int):
    """1 where HighBits(r) != HighBits(r + z), elementwise."""
    changed = highbits(r, gamma2) != highbits((r + z) % Q, gamma2)
    if isinstance(changed, np.ndarray):
        return changed.astype(np.int64)
    return int(changed)


def use_hint(h, r, gamma2: int):
    """Recover HighBits(r + z) for the z that produced hint h."""
    m = (Q - 1) // (2 * gamma2)
    r1, r0 = decompose(r, gamma2)
    shifted = (r1 + np.where(np.asarray(r0) > 0, 1, -1)) % m
    out = np.where(np.asarray(h) != 0, shifted, r1)
    if out.ndim == 0:
        return int(out)
    return out.astype(np.int64)


def center_mod(v):
    """Centered representative mod± q."""
    t = np.asarray(v, dtype=np.int64) % Q
    t = t - ((t > (Q - 1) // 2) * Q)
    if t.ndim == 0:
        return int(t)
    return t


def norm_exceeds(v, bound: int) -> bool:
    """True iff any |coeff mod± q| >= bound."""
    return bool(np.any(np.abs(center_mod(v)) >= bound))


def infinity_norm(v) -> int:
    return int(np.abs(center_mod(v)).max())


def count_hints(h) -> int:
    return int(np.sum(np.asarray(h) != 0))
