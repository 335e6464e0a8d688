"""Command-line front end: keygen, sign, verify, kat, bench, probs."""

from __future__ import annotations

import argparse
import hashlib
import sys
import time

import numpy as np

from . import kernels
from .params import LEVELS, SEED_BYTES
from .scheme import CHECK_ORDERS, ENGINES, SigningKey, keygen, sign, verify
from .stats import analytic_model, attempts_standard_error, measure_attempts
from .xof import shake_digest


def _add_level(p: argparse.ArgumentParser) -> None:
    p.add_argument("--level", type=int, default=2, choices=LEVELS,
                   help="security level (default 2)")


def _add_backend(p: argparse.ArgumentParser) -> None:
    p.add_argument("--backend", choices=("scalar", "lanes"), default=None,
                   help="force a compute backend (default: current setting)")


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def cmd_keygen(args) -> int:
    seed = bytes.fromhex(args.seed) if args.seed else None
    pk, sk = keygen(args.level, seed=seed)
    _write(args.pk, pk)
    _write(args.sk, sk)
    print(f"wrote {len(pk)}-byte public key to {args.pk}, "
          f"{len(sk)}-byte secret key to {args.sk}", file=sys.stderr)
    return 0


def cmd_sign(args) -> int:
    sk = _read(args.sk)
    message = _read(args.message)
    sig = sign(sk, message, args.level, engine=args.engine,
               randomized=args.randomized, check_order=args.check_order)
    _write(args.out, sig)
    print(f"wrote {len(sig)}-byte signature to {args.out}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    ok = verify(_read(args.pk), _read(args.message), _read(args.sig),
                args.level, engine=args.engine)
    print("ok" if ok else "fail")
    return 0 if ok else 1


def cmd_kat(args) -> int:
    """Deterministic known-answer chain; lines are stable across runs."""
    base = bytes.fromhex(args.seed) if args.seed else bytes(SEED_BYTES)
    for i in range(args.count):
        seed = shake_digest(256, base + i.to_bytes(4, "little"), SEED_BYTES)
        pk, sk = keygen(args.level, seed=seed)
        message = shake_digest(256, b"msg" + seed, 33 + i)
        sig = sign(sk, message, args.level, engine=args.engine)
        ok = verify(pk, message, sig, args.level)
        print(f"{i} pk={hashlib.sha256(pk).hexdigest()} "
              f"sk={hashlib.sha256(sk).hexdigest()} "
              f"sig={hashlib.sha256(sig).hexdigest()} verify={'ok' if ok else 'FAIL'}")
        if not ok:
            return 1
    return 0


def _time_ns(fn, iters: int) -> list[int]:
    samples = []
    for _ in range(iters):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    return samples


def cmd_bench(args) -> int:
    """Emit CSV rows: level,engine,op,iters,median_ns,mean_ns."""
    rng = np.random.default_rng(0)
    if not args.no_header:
        print("level,engine,op,iters,median_ns,mean_ns")
    engines = [args.engine] if args.engine else list(ENGINES)
    for engine in engines:
        pk, sk = keygen(args.level, seed=bytes(SEED_BYTES))
        signer = SigningKey.from_bytes(sk, args.level)
        messages = [rng.bytes(59) for _ in range(args.iters)]
        sigs = [signer.sign(m, engine=engine,
                            check_order=args.check_order) for m in messages]
        for op in (args.op.split(",") if args.op else ("keygen", "sign", "verify")):
            if op == "keygen" and engine != engines[0]:
                continue  # keygen has no engine choice; report it once
            it = iter(zip(messages, sigs))

            def run(op=op, it=it):
                m, s = next(it)
                if op == "sign":
                    signer.sign(m, engine=engine, check_order=args.check_order)
                elif op == "verify":
                    verify(pk, m, s, args.level, engine=engine)
                else:
                    keygen(args.level)

            samples = _time_ns(run, args.iters)
            print(f"{args.level},{engine},{op},{args.iters},"
                  f"{int(np.median(samples))},{int(np.mean(samples))}")
    return 0


def cmd_probs(args) -> int:
    model = analytic_model(args.level)
    print(f"level {args.level} analytic: "
          f"Pr[z ok]={model.p_z_ok:.6f} Pr[r0 ok]={model.p_r0_ok:.6f} "
          f"expected attempts={model.expected_attempts:.4f}")
    if args.signatures > 0:
        counts = measure_attempts(args.level, args.signatures,
                                  engine=args.engine)
        se = attempts_standard_error(model, args.signatures)
        print(f"level {args.level} empirical over {counts.signatures} "
              f"signatures: mean attempts={counts.mean_attempts:.4f} "
              f"(model {model.expected_attempts:.4f} +- {se:.4f}) "
              f"rejections={counts.rejections}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dilithium",
        description="Lattice signatures with NTT and packed-table "
                    "sparse multiplication engines.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair")
    _add_level(p)
    p.add_argument("--seed", help="32-byte hex seed for deterministic keys")
    p.add_argument("--pk", default="pk.bin")
    p.add_argument("--sk", default="sk.bin")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("sign", help="sign a message file")
    _add_level(p)
    p.add_argument("--sk", required=True)
    p.add_argument("--message", required=True, help="message file ('-' for stdin)")
    p.add_argument("--out", default="sig.bin")
    p.add_argument("--engine", choices=ENGINES, default="ntt")
    p.add_argument("--randomized", action="store_true")
    p.add_argument("--check-order", choices=CHECK_ORDERS, default="r0_first",
                   help="order of the two norm checks in the ntt engine")
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("verify", help="verify a signature")
    _add_level(p)
    p.add_argument("--pk", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--engine", choices=ENGINES, default="ntt")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kat", help="print a deterministic known-answer chain")
    _add_level(p)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", help="hex seed for the chain (default zeros)")
    p.add_argument("--engine", choices=ENGINES, default="ntt")
    p.set_defaults(func=cmd_kat)

    p = sub.add_parser("bench", help="time keygen/sign/verify, CSV on stdout")
    _add_level(p)
    _add_backend(p)
    p.add_argument("--engine", choices=ENGINES, help="default: both engines")
    p.add_argument("--op", help="comma-separated subset of keygen,sign,verify")
    p.add_argument("--iters", type=int, default=50)
    p.add_argument("--check-order", choices=CHECK_ORDERS, default="r0_first")
    p.add_argument("--no-header", action="store_true",
                   help="omit the CSV header row")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("probs", help="analytic and measured rejection rates")
    _add_level(p)
    p.add_argument("--signatures", type=int, default=200,
                   help="empirical sample size (0 for analytic only)")
    p.add_argument("--engine", choices=ENGINES, default="ntt")
    p.set_defaults(func=cmd_probs)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "backend", None):
        kernels.set_backend(args.backend)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
