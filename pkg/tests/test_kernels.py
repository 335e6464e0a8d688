"""Lane kernels must agree bit for bit with the scalar reference."""

import os
import subprocess
import sys

import numpy as np
import pytest

from dilithium import kernels
from dilithium.params import Q
from dilithium.ring import montgomery_reduce, partial_reduce, tailored_reduce


def test_backend_switch_and_context():
    prev = kernels.get_backend()
    kernels.set_backend("scalar")
    assert not kernels.lanes_enabled()
    with kernels.use_backend("lanes"):
        assert kernels.lanes_enabled()
    assert kernels.get_backend() == "scalar"
    kernels.set_backend(prev)
    with pytest.raises(ValueError):
        kernels.set_backend("gpu")


def test_env_forces_scalar():
    code = "import dilithium.kernels as k; print(k.get_backend())"
    env = dict(os.environ, DILITHIUM_FORCE_SCALAR="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "scalar"


def test_lanes_montgomery_matches_scalar(rng):
    z = rng.integers(-(Q << 31), Q << 31, size=100000, dtype=np.int64)
    got = kernels.lanes_montgomery(z)
    for zi, gi in zip(z[:2000].tolist(), got[:2000].tolist()):
        assert gi == montgomery_reduce(zi)
    # congruence holds across the whole batch
    assert np.all((got.astype(object) << 32) % Q == z.astype(object) % Q)


def test_lanes_tailored_matches_scalar(rng):
    z = rng.integers(-(1 << 40) + 1, (1 << 40) + 1, size=100000, dtype=np.int64)
    got = kernels.lanes_tailored(z)
    for zi, gi in zip(z[:2000].tolist(), got[:2000].tolist()):
        assert gi == tailored_reduce(zi)


def test_lanes_partial_matches_scalar(rng):
    z = rng.integers(-(1 << 30), 1 << 30, size=100000, dtype=np.int64)
    got = kernels.lanes_partial(z)
    for zi, gi in zip(z[:2000].tolist(), got[:2000].tolist()):
        assert gi == partial_reduce(zi)


def test_compact_preserves_order(rng):
    values = rng.integers(0, 100, size=1000)
    mask = rng.integers(0, 2, size=1000).astype(bool)
    got = kernels.lanes_compact(values, mask)
    assert got.tolist() == values[mask].tolist()
