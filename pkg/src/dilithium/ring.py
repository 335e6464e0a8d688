"""Scalar coefficient arithmetic modulo q = 2^23 - 2^13 + 1.

These are the reference (pure-integer) kernels; the numpy equivalents live
in :mod:`dilithium.kernels`. All four reductions are written branch-free in
the coefficient value.
"""

from __future__ import annotations

from .params import Q

QINV = pow(Q, -1, 1 << 32)  # q^{-1} mod 2^32, derived rather than hardcoded
MONT = (1 << 32) % Q        # 2^32 mod q (Montgomery one)
MONT_SQ = (MONT * MONT) % Q  # 2^64 mod q

# a wrong inverse would silently corrupt every reduction
assert (Q * QINV) & 0xFFFFFFFF == 1

_MONT_BOUND = Q << 31
_TAILORED_BOUND = 1 << 40


def montgomery_reduce(z: int) -> int:
    """Signed Montgomery reduction: result = z * 2^{-32} mod q, |result| < q."""
    assert -_MONT_BOUND <= z < _MONT_BOUND, "montgomery input out of range"
    m = ((z & 0xFFFFFFFF) * QINV) & 0xFFFFFFFF
    m -= (m >> 31) << 32  # reinterpret low product as signed 32-bit
    return (z - m * Q) >> 32


def tailored_reduce(z: int) -> int:
    """Shift/multiply/subtract reduction for the Dilithium prime.

    Valid on (-2^40, 2^40]; returns r = z - q*floor(z / 2^23), which is
    congruent to z mod q with |r| < 2^31.
    """
    assert -_TAILORED_BOUND < z <= _TAILORED_BOUND, "tailored input out of range"
    return z - Q * (z >> 23)


def partial_reduce(a: int) -> int:
    """Reduce |a| <= 2^31 - 2^22 to a congruent value with |result| <= 6283009."""
    t = (a + (1 << 22)) >> 23
    return a - t * Q


def normalize(a: int) -> int:
    """Map -q < a < q to the canonical representative in [0, q), branch-free."""
    return a + ((a >> 31) & Q)


def center(a: int) -> int:
    """Centered representative a mod± q in [-(q-1)/2, (q-1)/2]."""
    t = a % Q
    return t - (((Q >> 1) - t) >> 63 & Q)
