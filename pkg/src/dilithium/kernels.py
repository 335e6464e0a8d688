"""Lane-parallel (numpy) backend and the global scalar/lanes switch.

Every lane kernel is bit-equivalent to its scalar counterpart in
:mod:`dilithium.ring`; the switch only trades speed, never output bytes.
Set the environment variable ``DILITHIUM_FORCE_SCALAR=1`` (or call
:func:`set_backend`) to force the pure-Python reference path everywhere.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

import numpy as np

from .params import Q
from .ring import QINV

_MASK32 = np.int64(0xFFFFFFFF)
_Q = np.int64(Q)
_QINV = np.int64(QINV)

_BACKENDS = ("scalar", "lanes")
_backend = "scalar" if os.environ.get("DILITHIUM_FORCE_SCALAR") else "lanes"


def set_backend(name: str) -> None:
    if name not in _BACKENDS:
        raise ValueError(f"backend must be one of {_BACKENDS}")
    global _backend
    _backend = name


def get_backend() -> str:
    return _backend


def lanes_enabled() -> bool:
    return _backend == "lanes"


@contextmanager
def use_backend(name: str):
    prev = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


def lanes_montgomery(z: np.ndarray) -> np.ndarray:
    """Per-lane signed Montgomery reduction of int64 inputs."""
    z = np.asarray(z, dtype=np.int64)
    m = ((z & _MASK32) * _QINV) & _MASK32
    m = ((m + (1 << 31)) & _MASK32) - (1 << 31)  # signed low 32 bits
    return (z - m * _Q) >> 32


def lanes_tailored(z: np.ndarray) -> np.ndarray:
    """Per-lane tailored reduction r = z - q*floor(z / 2^23)."""
    z = np.asarray(z, dtype=np.int64)
    return z - _Q * (z >> 23)


def lanes_partial(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    return a - (((a + (1 << 22)) >> 23) * _Q)


def lanes_compact(values: np.ndarray, accept_mask: np.ndarray) -> np.ndarray:
    """Stable order-preserving compaction of accepted lanes."""
    values = np.asarray(values)
    return values[np.asarray(accept_mask, dtype=bool)]
