"""Key generation, signing with rejection sampling, and verification.

Signing supports two interchangeable multiplication engines:

* ``ntt``: challenge products via the number-theoretic transform, with
  the low-bits check run before the z check (swap with ``check_order``);
* ``pspm``: packed-table sparse multiplication with early evaluation
  (level 2 uses one joint s1/s2 table, levels 3 and 5 separate tables).

Both engines produce byte-identical signatures for the same inputs; they
only differ in how the rejection loop spends its time.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .encode import (DecodeError, pack_pk, pack_sig, pack_sk, pack_w1,
                     unpack_pk, unpack_sig, unpack_sk)
from .ntt import ntt_forward, ntt_inverse, pointwise_montgomery, to_montgomery
from .params import (CRH_BYTES, CTILDE_BYTES, D, Q, SEED_BYTES, ParamSet,
                     get_params, get_pspm_combined_params, get_pspm_params)
from .pspm import (PspmTable, build_table, pspm_multiply, pspm_tee_combined,
                   pspm_tee_r0, pspm_tee_z)
from .rounding import (count_hints, highbits, lowbits, make_hint, norm_exceeds,
                       power2round, use_hint)
from .sampling import expand_a, expand_mask, expand_s, sample_in_ball
from .xof import shake_digest

ENGINES = ("ntt", "pspm")
CHECK_ORDERS = ("r0_first", "z_first")

# verification folds the 2^d shift of t1 into the challenge side, so the
# pointwise product lands directly on c * t1 * 2^d
_CT1_SCALE = (1 << (64 + D)) % Q


def _mask_mode(params: ParamSet) -> str:
    return "tailored" if params.gamma1 == 1 << 17 else "montgomery"


def _matrix_pointwise(a_hat_mont: np.ndarray, v_hat: np.ndarray) -> np.ndarray:
    """(k, l, n) x (l, n) -> (k, n) accumulated pointwise products."""
    return pointwise_montgomery(a_hat_mont, v_hat[None, :, :]).sum(axis=1)


def keygen(level: int, seed: bytes | None = None) -> tuple[bytes, bytes]:
    """Generate (public key, secret key) bytes; 32-byte seed optional."""
    params = get_params(level)
    zeta = os.urandom(SEED_BYTES) if seed is None else seed
    if len(zeta) != SEED_BYTES:
        raise ValueError(f"seed must be {SEED_BYTES} bytes")
    buf = shake_digest(256, zeta, 2 * SEED_BYTES + CRH_BYTES)
    rho, rho_prime, key = buf[:32], buf[32:96], buf[96:]

    a_hat_mont = to_montgomery(expand_a(rho, params))
    s1, s2 = expand_s(rho_prime, params)
    t = (ntt_inverse(_matrix_pointwise(a_hat_mont, ntt_forward(s1, "skip")))
         + s2) % Q
    t1, t0 = power2round(t)
    pk = pack_pk(rho, t1, params)
    tr = shake_digest(256, pk, SEED_BYTES)
    sk = pack_sk(rho, key, tr, s1, s2, t0, params)
    return pk, sk


@dataclass
class SignResult:
    signature: bytes
    attempts: int
    rejections: dict[str, int] = field(default_factory=dict)


@dataclass
class SigningKey:
    """Expanded secret key with per-engine precomputation."""

    params: ParamSet
    rho: bytes
    key: bytes
    tr: bytes
    s1: np.ndarray
    s2: np.ndarray
    t0: np.ndarray
    a_hat_mont: np.ndarray = field(repr=False, default=None)
    s1_hat_mont: np.ndarray = field(repr=False, default=None)
    s2_hat_mont: np.ndarray = field(repr=False, default=None)
    t0_hat_mont: np.ndarray = field(repr=False, default=None)
    table_combined: PspmTable | None = field(repr=False, default=None)
    table_s1: PspmTable | None = field(repr=False, default=None)
    table_s2: PspmTable | None = field(repr=False, default=None)
    table_t0: PspmTable | None = field(repr=False, default=None)

    @classmethod
    def from_bytes(cls, sk: bytes, level: int) -> "SigningKey":
        params = get_params(level)
        rho, key, tr, s1, s2, t0 = unpack_sk(sk, params)
        sk_obj = cls(params=params, rho=rho, key=key, tr=tr, s1=s1, s2=s2, t0=t0)
        sk_obj.a_hat_mont = to_montgomery(expand_a(rho, params))
        sk_obj.s1_hat_mont = to_montgomery(ntt_forward(s1, "skip"))
        sk_obj.s2_hat_mont = to_montgomery(ntt_forward(s2, "skip"))
        sk_obj.t0_hat_mont = to_montgomery(ntt_forward(t0, "tailored"))
        if params.level == 2:
            sk_obj.table_combined = build_table(
                np.concatenate([s1, s2]), get_pspm_combined_params(2))
        else:
            sk_obj.table_s1 = build_table(s1, get_pspm_params(level, "cs"))
            sk_obj.table_s2 = build_table(s2, get_pspm_params(level, "ce"))
        sk_obj.table_t0 = build_table(t0, get_pspm_params(level, "ct0"))
        return sk_obj

    def sign(self, message: bytes, engine: str = "ntt",
             randomized: bool = False, rng=None,
             check_order: str = "r0_first") -> bytes:
        return self.sign_with_info(message, engine, randomized, rng,
                                   check_order).signature

    def sign_with_info(self, message: bytes, engine: str = "ntt",
                       randomized: bool = False, rng=None,
                       check_order: str = "r0_first") -> SignResult:
        if engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}")
        if check_order not in CHECK_ORDERS:
            raise ValueError(f"check_order must be one of {CHECK_ORDERS}")
        params = self.params
        gamma1, gamma2, beta = params.gamma1, params.gamma2, params.beta

        mu = shake_digest(256, self.tr + message, CRH_BYTES)
        if randomized:
            rho_prime = rng.bytes(CRH_BYTES) if rng is not None \
                else os.urandom(CRH_BYTES)
        else:
            rho_prime = shake_digest(256, self.key + mu, CRH_BYTES)

        rejections: dict[str, int] = {}

        def reject(reason: str) -> None:
            rejections[reason] = rejections.get(reason, 0) + 1

        kappa = 0
        attempts = 0
        while True:
            attempts += 1
            y = expand_mask(rho_prime, kappa, params)
            kappa += params.l
            y_hat = ntt_forward(y, _mask_mode(params))
            w = ntt_inverse(_matrix_pointwise(self.a_hat_mont, y_hat)) % Q
            w1 = highbits(w, gamma2)
            c_tilde = shake_digest(256, mu + pack_w1(w1, params), CTILDE_BYTES)
            chal = sample_in_ball(c_tilde, params.tau)

            if engine == "ntt":
                c_hat = ntt_forward(chal.poly, "skip")
                zr = self._ntt_checks(c_hat, y, w, check_order, reject)
            else:
                zr = self._pspm_checks(chal, y, w, reject)
            if zr is None:
                continue
            z, r_full = zr

            if engine == "ntt":
                ct0 = _center_exact(
                    ntt_inverse(pointwise_montgomery(c_hat, self.t0_hat_mont)))
            else:
                ct0 = pspm_multiply(chal, self.table_t0)
            if norm_exceeds(ct0, gamma2):
                reject("ct0")
                continue

            h = make_hint(-ct0, (r_full + ct0) % Q, gamma2)
            if count_hints(h) > params.omega:
                reject("hint_weight")
                continue
            sig = pack_sig(c_tilde, z, h, params)
            return SignResult(signature=sig, attempts=attempts,
                              rejections=rejections)

    def _ntt_checks(self, c_hat, y, w, check_order, reject):
        params = self.params

        def z_value():
            cs1 = _center_exact(
                ntt_inverse(pointwise_montgomery(c_hat, self.s1_hat_mont)))
            return y + cs1

        def r_value():
            cs2 = ntt_inverse(pointwise_montgomery(c_hat, self.s2_hat_mont))
            return (w - cs2) % Q

        if check_order == "r0_first":
            r_full = r_value()
            if norm_exceeds(lowbits(r_full, params.gamma2),
                            params.gamma2 - params.beta):
                reject("r0")
                return None
            z = z_value()
            if norm_exceeds(z, params.gamma1 - params.beta):
                reject("z")
                return None
        else:
            z = z_value()
            if norm_exceeds(z, params.gamma1 - params.beta):
                reject("z")
                return None
            r_full = r_value()
            if norm_exceeds(lowbits(r_full, params.gamma2),
                            params.gamma2 - params.beta):
                reject("r0")
                return None
        return z, r_full

    def _pspm_checks(self, chal, y, w, reject):
        params = self.params
        if params.level == 2:
            res = pspm_tee_combined(chal, self.table_combined, y, w, params)
            if res is None:
                reject("tee")
                return None
            return res
        r_full = pspm_tee_r0(chal, self.table_s2, w, params)
        if r_full is None:
            reject("r0")
            return None
        z = pspm_tee_z(chal, self.table_s1, y, params)
        if z is None:
            reject("z")
            return None
        return z, r_full


def _center_exact(v: np.ndarray) -> np.ndarray:
    """Centered representative mod q (exact for values of magnitude < q/2)."""
    t = np.asarray(v, dtype=np.int64) % Q
    return t - ((t > (Q - 1) // 2) * Q)


def sign(sk: bytes, message: bytes, level: int, engine: str = "ntt",
         randomized: bool = False, check_order: str = "r0_first") -> bytes:
    return SigningKey.from_bytes(sk, level).sign(
        message, engine=engine, randomized=randomized, check_order=check_order)


def verify(pk: bytes, message: bytes, sig: bytes, level: int,
           engine: str = "ntt") -> bool:
    """True iff sig is a valid signature on message under pk."""
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}")
    params = get_params(level)
    try:
        rho, t1 = unpack_pk(pk, params)
        c_tilde, z, h = unpack_sig(sig, params)
    except DecodeError:
        return False
    if norm_exceeds(z, params.gamma1 - params.beta):
        return False
    if count_hints(h) > params.omega:
        return False

    tr = shake_digest(256, pk, SEED_BYTES)
    mu = shake_digest(256, tr + message, CRH_BYTES)
    chal = sample_in_ball(c_tilde, params.tau)
    a_hat_mont = to_montgomery(expand_a(rho, params))
    az_hat = _matrix_pointwise(a_hat_mont, ntt_forward(z))

    if engine == "ntt":
        c_hat_scaled = pointwise_montgomery(
            ntt_forward(chal.poly, "skip"), np.int64(_CT1_SCALE))
        ct1_hat = pointwise_montgomery(c_hat_scaled[None, :],
                                       ntt_forward(t1, "tailored"))
        w_prime = ntt_inverse(az_hat - ct1_hat) % Q
    else:
        ct1 = pspm_multiply(chal, build_table(t1, get_pspm_params(params.level,
                                                                  "ct1")))
        w_prime = (ntt_inverse(az_hat) - (ct1 << D)) % Q

    w1_prime = use_hint(h, w_prime, params.gamma2)
    return shake_digest(256, mu + pack_w1(w1_prime, params),
                        CTILDE_BYTES) == c_tilde
