"""Analytic and empirical rejection-rate figures for the signing loop.

The acceptance probabilities of the two infinity-norm checks factor over
coefficients because y and the low bits of w are uniform over their ranges:

    Pr[z ok]  = ((2*(gamma1 - beta) - 1) / (2*gamma1 - 1)) ** (256 * l)
    Pr[r0 ok] = ((2*(gamma2 - beta) - 1) / (2*gamma2)) ** (256 * k)

and the expected number of loop iterations is 1 / (Pr[z ok] * Pr[r0 ok]).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import N, ParamSet, get_params
from .scheme import SigningKey, keygen


@dataclass(frozen=True)
class RejectionModel:
    level: int
    p_z_ok: float
    p_r0_ok: float

    @property
    def p_accept(self) -> float:
        return self.p_z_ok * self.p_r0_ok

    @property
    def expected_attempts(self) -> float:
        return 1.0 / self.p_accept


def analytic_model(level: int) -> RejectionModel:
    p = get_params(level)
    p_z = ((2 * (p.gamma1 - p.beta) - 1) / (2 * p.gamma1 - 1)) ** (N * p.l)
    p_r0 = ((2 * (p.gamma2 - p.beta) - 1) / (2 * p.gamma2)) ** (N * p.k)
    return RejectionModel(level=level, p_z_ok=p_z, p_r0_ok=p_r0)


@dataclass
class EmpiricalCounts:
    level: int
    signatures: int
    attempts: int
    rejections: dict[str, int]

    @property
    def mean_attempts(self) -> float:
        return self.attempts / self.signatures


def measure_attempts(level: int, signatures: int, engine: str = "ntt",
                     seed: bytes = bytes(32)) -> EmpiricalCounts:
    """Sign `signatures` distinct messages and tally loop statistics."""
    _, sk = keygen(level, seed=seed)
    signer = SigningKey.from_bytes(sk, level)
    total = 0
    rejections: dict[str, int] = {}
    for i in range(signatures):
        res = signer.sign_with_info(i.to_bytes(8, "little"), engine=engine)
        total += res.attempts
        for reason, count in res.rejections.items():
            rejections[reason] = rejections.get(reason, 0) + count
    return EmpiricalCounts(level=level, signatures=signatures,
                           attempts=total, rejections=rejections)


def attempts_standard_error(model: RejectionModel, signatures: int) -> float:
    """Standard error of the sample mean of geometric attempt counts."""
    p = model.p_accept
    return float(np.sqrt((1 - p) / p ** 2 / signatures))
