"""Sign/verify behaviour: roundtrips, engine parity, and rejection of bad input."""

import numpy as np
import pytest

from dilithium import kernels
from dilithium.encode import unpack_pk, unpack_sk
from dilithium.params import Q, get_params
from dilithium.rounding import infinity_norm, power2round
from dilithium.scheme import SigningKey, keygen, sign, verify

LEVELS = [2, 3, 5]


@pytest.mark.parametrize("level", LEVELS)
def test_keygen_shapes_and_equation(level):
    p = get_params(level)
    pk, sk = keygen(level, seed=bytes(range(32)))
    assert len(pk) == p.pk_bytes and len(sk) == p.sk_bytes
    rho, t1 = unpack_pk(pk, p)
    rho2, _, _, s1, s2, t0 = unpack_sk(sk, p)
    assert rho == rho2
    # t1, t0 recombine to A*s1 + s2
    from dilithium.ntt import ntt_forward, ntt_inverse, pointwise_montgomery, \
        to_montgomery
    from dilithium.sampling import expand_a
    a_hat = to_montgomery(expand_a(rho, p))
    t = (ntt_inverse(pointwise_montgomery(
        a_hat, ntt_forward(s1)[None, :, :]).sum(axis=1)) + s2) % Q
    assert np.array_equal((t1 * (1 << 13) + t0) % Q, t)
    r1, r0 = power2round(t)
    assert np.array_equal(t1, r1) and np.array_equal(t0, r0)


def test_keygen_seed_validation():
    with pytest.raises(ValueError):
        keygen(2, seed=b"short")


@pytest.mark.parametrize("level", LEVELS)
@pytest.mark.parametrize("engine", ["ntt", "pspm"])
def test_roundtrip(level, engine):
    pk, sk = keygen(level, seed=bytes(32))
    msg = b"attack at dawn"
    sig = sign(sk, msg, level, engine=engine)
    assert len(sig) == get_params(level).sig_bytes
    assert verify(pk, msg, sig, level, engine=engine)
    assert verify(pk, msg, sig, level,
                  engine="ntt" if engine == "pspm" else "pspm")
    assert not verify(pk, msg + b"?", sig, level, engine=engine)


@pytest.mark.parametrize("level", LEVELS)
def test_engines_agree(level):
    _, sk = keygen(level, seed=b"\x07" * 32)
    signer = SigningKey.from_bytes(sk, level)
    for i in range(5):
        msg = b"msg-%d" % i
        a = signer.sign_with_info(msg, engine="ntt")
        b = signer.sign_with_info(msg, engine="pspm")
        c = signer.sign_with_info(msg, engine="ntt", check_order="z_first")
        assert a.signature == b.signature == c.signature
        assert a.attempts == b.attempts == c.attempts >= 1


def test_deterministic_vs_randomized():
    pk, sk = keygen(2, seed=bytes(32))
    signer = SigningKey.from_bytes(sk, 2)
    msg = b"nonce handling"
    assert signer.sign(msg) == signer.sign(msg)
    r1 = signer.sign(msg, randomized=True, rng=np.random.default_rng(1))
    r2 = signer.sign(msg, randomized=True, rng=np.random.default_rng(2))
    assert r1 != r2
    assert verify(pk, msg, r1, 2) and verify(pk, msg, r2, 2)


def test_scalar_backend_same_bytes():
    pk, sk = keygen(2, seed=b"\x11" * 32)
    signer = SigningKey.from_bytes(sk, 2)
    msg = b"backend parity"
    with kernels.use_backend("lanes"):
        a = signer.sign(msg, engine="pspm")
        b = signer.sign(msg, engine="ntt")
    with kernels.use_backend("scalar"):
        c = signer.sign(msg, engine="pspm")
        d = signer.sign(msg, engine="ntt")
        assert verify(pk, msg, a, 2)
    assert a == b == c == d


@pytest.mark.parametrize("level", LEVELS)
def test_mutations_reject(level, rng):
    pk, sk = keygen(level, seed=bytes(32))
    msg = b"immutable"
    sig = sign(sk, msg, level)
    for _ in range(20):
        bad = bytearray(sig)
        bit = int(rng.integers(0, 8 * len(bad)))
        bad[bit // 8] ^= 1 << (bit % 8)
        assert not verify(pk, msg, bytes(bad), level)
    bad_pk = bytearray(pk)
    bad_pk[100] ^= 4
    assert not verify(bytes(bad_pk), msg, sig, level)
    assert not verify(pk, msg, sig[:-1], level)
    assert not verify(pk, msg, b"", level)


def test_z_norm_enforced():
    p = get_params(2)
    pk, sk = keygen(2, seed=bytes(32))
    msg = b"bound"
    sig = sign(sk, msg, 2)
    from dilithium.encode import pack_sig, unpack_sig
    c_tilde, z, h = unpack_sig(sig, p)
    assert infinity_norm(z) < p.gamma1 - p.beta
    z[0, 0] = p.gamma1 - p.beta
    assert not verify(pk, msg, pack_sig(c_tilde, z, h, p), 2)


def test_invalid_arguments():
    _, sk = keygen(2, seed=bytes(32))
    signer = SigningKey.from_bytes(sk, 2)
    with pytest.raises(ValueError):
        signer.sign(b"x", engine="fft")
    with pytest.raises(ValueError):
        signer.sign(b"x", check_order="sideways")
    with pytest.raises(ValueError):
        verify(b"", b"", b"", 2, engine="fft")


def test_sign_with_info_reports_rejections():
    _, sk = keygen(2, seed=bytes(32))
    signer = SigningKey.from_bytes(sk, 2)
    total_attempts = 0
    total_rejects = 0
    for i in range(20):
        res = signer.sign_with_info(b"stats-%d" % i)
        assert res.attempts >= 1
        total_attempts += res.attempts
        total_rejects += sum(res.rejections.values())
        assert sum(res.rejections.values()) == res.attempts - 1
    assert total_attempts > 20  # some rejections must occur at level 2
