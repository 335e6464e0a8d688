"""Scheme constants for the three security levels plus the packed-table
parameters used by the parallel small-polynomial multiplier.

All per-level numbers not fixed by the ring itself (k, l, eta, gamma1,
gamma2, omega) follow the round-3 Dilithium parameter sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

Q = 8380417  # 2^23 - 2^13 + 1
N = 256
D = 13
ROOT_OF_UNITY = 1753  # primitive 512-th root of unity mod q

SEED_BYTES = 32
CRH_BYTES = 64
CTILDE_BYTES = 32


class ParameterError(ValueError):
    """Unknown security level or PSPM target."""


@dataclass(frozen=True)
class ParamSet:
    level: int
    k: int
    l: int
    eta: int
    tau: int
    gamma1: int
    gamma2: int
    omega: int
    q: int = Q
    n: int = N
    d: int = D

    @property
    def beta(self) -> int:
        return self.tau * self.eta

    # bit widths of the packed encodings
    @property
    def eta_bits(self) -> int:
        return 3 if self.eta == 2 else 4

    @property
    def z_bits(self) -> int:
        return 18 if self.gamma1 == 1 << 17 else 20

    @property
    def w1_bits(self) -> int:
        # highbits range is [0, 43] for gamma2 = (q-1)/88, [0, 15] for (q-1)/32
        return 6 if self.gamma2 == (Q - 1) // 88 else 4

    @property
    def pk_bytes(self) -> int:
        return SEED_BYTES + self.k * (N * 10 // 8)

    @property
    def sk_bytes(self) -> int:
        poly_eta = N * self.eta_bits // 8
        poly_t0 = N * D // 8
        return 3 * SEED_BYTES + (self.l + self.k) * poly_eta + self.k * poly_t0

    @property
    def sig_bytes(self) -> int:
        return CTILDE_BYTES + self.l * (N * self.z_bits // 8) + self.omega + self.k


_LEVELS = {
    2: ParamSet(level=2, k=4, l=4, eta=2, tau=39,
                gamma1=1 << 17, gamma2=(Q - 1) // 88, omega=80),
    3: ParamSet(level=3, k=6, l=5, eta=4, tau=49,
                gamma1=1 << 19, gamma2=(Q - 1) // 32, omega=55),
    5: ParamSet(level=5, k=8, l=7, eta=2, tau=60,
                gamma1=1 << 19, gamma2=(Q - 1) // 32, omega=75),
}

LEVELS = tuple(sorted(_LEVELS))


def get_params(level: int) -> ParamSet:
    try:
        return _LEVELS[level]
    except KeyError:
        raise ParameterError(f"unknown security level {level!r}; expected one of {LEVELS}") from None


@dataclass(frozen=True)
class PspmParams:
    """Radix/bound/length constants for one packed multiplication table.

    Coefficients of ``r`` polynomials with magnitude at most ``u`` are packed
    per index as base-``m`` digits into ``words_per_index`` 32-bit words.
    ``group_sizes[w]`` is the number of digits carried by word ``w`` (word 0
    holds the most significant polynomials); ``gamma_words[w]`` is that
    word's subtraction-correction constant 2u*(m^d - 1)/(m - 1).
    """

    tau: int
    u: int
    m: int
    r: int

    def __post_init__(self):
        if 2 * self.tau * self.u >= self.m:
            raise ParameterError(
                f"digit overflow: 2*tau*u = {2 * self.tau * self.u} >= m = {self.m}")
        if self.m ** self.digits_per_word > 1 << 32:
            raise ParameterError("packed word exceeds 32 bits")

    @property
    def log2_m(self) -> int:
        return self.m.bit_length() - 1

    @property
    def digits_per_word(self) -> int:
        return 32 // self.log2_m

    @property
    def words_per_index(self) -> int:
        return -(-self.r // self.digits_per_word)

    @property
    def group_sizes(self) -> tuple[int, ...]:
        sizes = []
        rem = self.r
        while rem > 0:
            take = min(self.digits_per_word, rem)
            sizes.append(take)
            rem -= take
        return tuple(sizes)

    @property
    def gamma_words(self) -> tuple[int, ...]:
        return tuple(2 * self.u * (self.m ** d - 1) // (self.m - 1)
                     for d in self.group_sizes)


# (u, m) per multiplication target; the packed length r is l for c*s,
# k for c*e, and k for the c*t0 / c*t1 rows.
_PSPM_ROWS = {
    (2, "cs"): (2, 1 << 8),
    (2, "ce"): (2, 1 << 8),
    (2, "ct0"): (1 << 12, 1 << 19),
    (2, "ct1"): (1 << 10, 1 << 17),
    (3, "cs"): (4, 1 << 9),
    (3, "ce"): (4, 1 << 9),
    (3, "ct0"): (1 << 12, 1 << 19),
    (3, "ct1"): (1 << 10, 1 << 17),
    (5, "cs"): (2, 1 << 8),
    (5, "ce"): (2, 1 << 8),
    (5, "ct0"): (1 << 12, 1 << 19),
    (5, "ct1"): (1 << 10, 1 << 17),
}

PSPM_TARGETS = ("cs", "ce", "ct0", "ct1")


@lru_cache(maxsize=None)
def get_pspm_params(level: int, target: str) -> PspmParams:
    p = get_params(level)
    try:
        u, m = _PSPM_ROWS[(level, target)]
    except KeyError:
        raise ParameterError(f"unknown PSPM target {target!r}") from None
    r = p.l if target == "cs" else p.k
    return PspmParams(tau=p.tau, u=u, m=m, r=r)


@lru_cache(maxsize=None)
def get_pspm_combined_params(level: int) -> PspmParams:
    """Parameters for the single table holding s and e concatenated (level 2)."""
    p = get_params(level)
    row = get_pspm_params(level, "cs")
    return PspmParams(tau=p.tau, u=row.u, m=row.m, r=p.l + p.k)
