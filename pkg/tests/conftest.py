"""Shared oracles and fixtures for the test suite."""

import numpy as np
import pytest

from dilithium.params import N, Q


def schoolbook_negacyclic(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Reference negacyclic product in Z[x]/(x^n + 1), no reductions.

    Written with plain index arithmetic on exact Python-int coefficients so
    it shares no code with the transforms under test.
    """
    a = [int(x) for x in a]
    b = [int(x) for x in b]
    out = [0] * N
    for i in range(N):
        if a[i] == 0:
            continue
        for j in range(N):
            k = i + j
            if k < N:
                out[k] += a[i] * b[j]
            else:
                out[k - N] -= a[i] * b[j]
    return np.array([x % Q for x in out], dtype=np.int64)


def sparse_negacyclic(c: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact (unreduced) negacyclic product of a sparse ternary c with b.

    b may be a single polynomial (n,) or a stack (..., n); the product is
    taken along the last axis.
    """
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros(b.shape, dtype=np.int64)
    for i in np.nonzero(c)[0]:
        ci = int(c[i])
        if i:
            out[..., :i] -= ci * b[..., N - i:]
        out[..., i:] += ci * b[..., : N - i]
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_RESULTS = []


def record_acceptance(name: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS.append((name, ok, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.write_sep("-", "acceptance checks")
        for name, ok, detail in ACCEPTANCE_RESULTS:
            status = "PASS" if ok else "FAIL"
            terminalreporter.write_line(f"[{status}] {name}: {detail}")
