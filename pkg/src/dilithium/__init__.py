"""Dilithium lattice signatures with two interchangeable multiplication
engines: NTT-based challenge products and packed-table sparse multiplication
with early evaluation of the rejection checks.

Quick start::

    from dilithium import keygen, sign, verify
    pk, sk = keygen(level=2)
    sig = sign(sk, b"message", level=2, engine="pspm")
    assert verify(pk, b"message", sig, level=2)
"""

from .kernels import get_backend, set_backend, use_backend
from .params import LEVELS, ParameterError, get_params
from .scheme import (CHECK_ORDERS, ENGINES, SigningKey, SignResult, keygen,
                     sign, verify)
from .stats import analytic_model, measure_attempts

__version__ = "0.1.0"

__all__ = [
    "keygen", "sign", "verify", "SigningKey", "SignResult",
    "get_params", "LEVELS", "ENGINES", "CHECK_ORDERS", "ParameterError",
    "set_backend", "get_backend", "use_backend",
    "analytic_model", "measure_attempts",
    "__version__",
]
