"""Command-line front end: key lifecycle, KAT generation/verification,
benchmarking, profiling, and accelerator cost-model reports.

Exit codes: 0 success, 1 KAT verification failure, 2 usage/format error,
3 I/O error, 4 cryptographic rejection.
"""

from __future__ import annotations

import argparse
import os
import statistics
import sys
import time

from . import costmodel, kem
from .params import hqc128
from .sampling import DOMAIN_COINS, DOMAIN_KAT_CHAIN, Xof

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_REJECT = 4


class UsageError(Exception):
    pass


def _parse_hex(text: str, expect_len: int, what: str) -> bytes:
    try:
        raw = bytes.fromhex(text)
    except ValueError as exc:
        raise UsageError(f"{what}: invalid hex: {exc}") from exc
    if len(raw) != expect_len:
        raise UsageError(f"{what}: expected {expect_len} bytes, got {len(raw)}")
    return raw


def _read_file(path: str, hex_mode: bool) -> bytes:
    with open(path, "rb") as fh:
        data = fh.read()
    if hex_mode:
        try:
            return bytes.fromhex(data.decode("ascii").strip())
        except (UnicodeDecodeError, ValueError) as exc:
            raise UsageError(f"{path}: invalid hex content: {exc}") from exc
    return data


def _write_file(path: str, data: bytes, hex_mode: bool) -> None:
    with open(path, "wb") as fh:
        fh.write(data.hex().encode("ascii") + b"\n" if hex_mode else data)


def _seed_or_entropy(hex_seed: str | None, what: str) -> bytes:
    p = hqc128()
    if hex_seed is None:
        return os.urandom(p.seed_bytes)
    return _parse_hex(hex_seed, p.seed_bytes, what)


# ---------------------------------------------------------------------------
# Commands


def cmd_keygen(args) -> int:
    seed = _seed_or_entropy(args.seed, "--seed")
    pk, sk = kem.keygen(seed)
    pk_bytes = kem.serialize_pk(pk)
    sk_bytes = kem.serialize_sk(sk)
    _write_file(args.out_pk, pk_bytes, args.hex)
    _write_file(args.out_sk, sk_bytes, args.hex)
    print(f"pk: {len(pk_bytes)} bytes -> {args.out_pk}")
    print(f"sk: {len(sk_bytes)} bytes -> {args.out_sk}")
    return EXIT_OK


def cmd_encaps(args) -> int:
    coins = _seed_or_entropy(args.coins, "--coins")
    pk = kem.deserialize_pk(_read_file(args.pk, args.hex))
    ct, ss = kem.encaps(pk, coins)
    ct_bytes = kem.serialize_ct(ct)
    _write_file(args.out_ct, ct_bytes, args.hex)
    _write_file(args.out_ss, ss, args.hex)
    print(f"ct: {len(ct_bytes)} bytes -> {args.out_ct}")
    print(f"ss: {len(ss)} bytes -> {args.out_ss}")
    return EXIT_OK


def cmd_decaps(args) -> int:
    sk = kem.deserialize_sk(_read_file(args.sk, args.hex))
    ct = kem.deserialize_ct(_read_file(args.ct, args.hex))
    ss = kem.decaps(sk, ct)
    _write_file(args.out_ss, ss, args.hex)
    print(f"ss: {len(ss)} bytes -> {args.out_ss}")
    return EXIT_OK


def _kat_record(rec_seed: bytes) -> dict[str, bytes]:
    p = hqc128()
    pk, sk = kem.keygen(rec_seed)
    coins = Xof(rec_seed, DOMAIN_COINS).squeeze(p.seed_bytes)
    ct, ss = kem.encaps(pk, coins)
    return {
        "seed": rec_seed,
        "pk": kem.serialize_pk(pk),
        "sk": kem.serialize_sk(sk),
        "ct": kem.serialize_ct(ct),
        "ss": ss,
    }


def cmd_kat(args) -> int:
    if args.count <= 0:
        raise UsageError("--count must be positive")
    p = hqc128()
    master_seed = _parse_hex(args.seed, p.seed_bytes, "--seed")
    chain = Xof(master_seed, DOMAIN_KAT_CHAIN)
    with open(args.out, "w", encoding="ascii") as fh:
        fh.write(f"# hqc128 known-answer records ({args.count})\n\n")
        for i in range(args.count):
            record = _kat_record(chain.squeeze(p.seed_bytes))
            fh.write(f"count = {i}\n")
            for name in ("seed", "pk", "sk", "ct", "ss"):
                fh.write(f"{name} = {record[name].hex()}\n")
            fh.write("\n")
    print(f"wrote {args.count} records -> {args.out}")
    return EXIT_OK


def _parse_kat(path: str) -> list[dict[str, str]]:
    records: list[dict[str, str]] = []
    current: dict[str, str] = {}
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                if current:
                    records.append(current)
                    current = {}
                continue
            if "=" not in line:
                raise UsageError(f"{path}: malformed line {line!r}")
            name, _, value = line.partition("=")
            current[name.strip()] = value.strip()
    if current:
        records.append(current)
    return records


def cmd_kat_verify(args) -> int:
    failures = 0
    records = _parse_kat(getattr(args, "in"))
    if not records:
        raise UsageError("no records found")
    for record in records:
        count = record.get("count", "?")
        try:
            rec_seed = bytes.fromhex(record["seed"])
            expect = {name: bytes.fromhex(record[name]) for name in ("pk", "sk", "ct", "ss")}
        except (KeyError, ValueError) as exc:
            raise UsageError(f"record {count}: malformed: {exc}") from exc
        regenerated = _kat_record(rec_seed)
        ok = all(regenerated[name] == expect[name] for name in ("pk", "sk", "ct", "ss"))
        if ok:
            sk = kem.deserialize_sk(expect["sk"])
            ct = kem.deserialize_ct(expect["ct"])
            try:
                ok = kem.decaps(sk, ct) == expect["ss"]
            except kem.DecapsulationFailure:
                ok = False
        print(f"count {count}: {'PASS' if ok else 'FAIL'}")
        failures += not ok
    return EXIT_VERIFY_FAIL if failures else EXIT_OK


def cmd_bench(args) -> int:
    if args.iters <= 0:
        raise UsageError("--iters must be positive")
    p = hqc128()
    times: dict[str, list[float]] = {ph: [] for ph in costmodel.PHASES}
    chain = Xof(b"\x00" * p.seed_bytes, DOMAIN_KAT_CHAIN)
    for _ in range(args.iters):
        seed = chain.squeeze(p.seed_bytes)
        coins = Xof(seed, DOMAIN_COINS).squeeze(p.seed_bytes)
        t0 = time.perf_counter()
        pk, sk = kem.keygen(seed)
        t1 = time.perf_counter()
        ct, ss = kem.encaps(pk, coins)
        t2 = time.perf_counter()
        assert kem.decaps(sk, ct) == ss
        t3 = time.perf_counter()
        times["keygen"].append(t1 - t0)
        times["encaps"].append(t2 - t1)
        times["decaps"].append(t3 - t2)
    print(f"{'phase':<8}{'mean_ms':>10}{'median_ms':>12}  ({args.iters} iterations)")
    for phase, samples in times.items():
        mean = statistics.fmean(samples) * 1e3
        median = statistics.median(samples) * 1e3
        print(f"{phase:<8}{mean:>10.3f}{median:>12.3f}")
        print(f"{phase}.mean_ms={mean:.6f}")
        print(f"{phase}.median_ms={median:.6f}")
    return EXIT_OK


def _profile_seed(args) -> bytes:
    p = hqc128()
    if getattr(args, "seed", None) is None:
        return bytes(p.seed_bytes)
    return _parse_hex(args.seed, p.seed_bytes, "--seed")


def cmd_profile(args) -> int:
    seed = _profile_seed(args)
    phases = costmodel.PHASES if args.phase == "all" else (args.phase,)
    profiles = [costmodel.profile(ph, seed) for ph in phases]
    print(costmodel.render_profile_report(profiles))
    return EXIT_OK


def cmd_costmodel(args) -> int:
    seed = _profile_seed(args)
    if args.all:
        cfg = costmodel.AcceleratorConfig.all()
    else:
        cfg = costmodel.AcceleratorConfig(
            dma=args.dma,
            r_unit=args.r_unit,
            sampling_unit=args.sampling_unit,
            rm_decoder=args.rm_decoder,
            gf_insn=args.gf_insn,
        )
    estimates = [
        costmodel.estimate_cycles(cfg, costmodel.profile(ph, seed))
        for ph in costmodel.PHASES
    ]
    print(costmodel.render_costmodel_report(cfg, estimates))
    return EXIT_OK


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hqc128",
        description="HQC-128 KEM with profiling and accelerator cost model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    kg = sub.add_parser("keygen", help="generate a key pair")
    kg.add_argument("--seed", help="40-byte hex seed (default: OS entropy)")
    kg.add_argument("--out-pk", required=True)
    kg.add_argument("--out-sk", required=True)
    kg.add_argument("--hex", action="store_true", help="hex file I/O")
    kg.set_defaults(func=cmd_keygen)

    enc = sub.add_parser("encaps", help="encapsulate a shared secret")
    enc.add_argument("--pk", required=True)
    enc.add_argument("--coins", help="40-byte hex coins (default: OS entropy)")
    enc.add_argument("--out-ct", required=True)
    enc.add_argument("--out-ss", required=True)
    enc.add_argument("--hex", action="store_true")
    enc.set_defaults(func=cmd_encaps)

    dec = sub.add_parser("decaps", help="decapsulate a ciphertext")
    dec.add_argument("--sk", required=True)
    dec.add_argument("--ct", required=True)
    dec.add_argument("--out-ss", required=True)
    dec.add_argument("--hex", action="store_true")
    dec.set_defaults(func=cmd_decaps)

    kat = sub.add_parser("kat", help="generate known-answer records")
    kat.add_argument("--count", type=int, required=True)
    kat.add_argument("--seed", required=True, help="40-byte hex master seed")
    kat.add_argument("--out", required=True)
    kat.set_defaults(func=cmd_kat)

    kvr = sub.add_parser("kat-verify", help="re-run and check a KAT file")
    kvr.add_argument("--in", required=True)
    kvr.set_defaults(func=cmd_kat_verify)

    ben = sub.add_parser("bench", help="wall-time benchmark per phase")
    ben.add_argument("--iters", type=int, default=20)
    ben.set_defaults(func=cmd_bench)

    pro = sub.add_parser("profile", help="primitive-invocation profile")
    pro.add_argument("--phase", choices=(*costmodel.PHASES, "all"), default="all")
    pro.add_argument("--seed", help="40-byte hex seed (default: zero seed)")
    pro.set_defaults(func=cmd_profile)

    cst = sub.add_parser("costmodel", help="accelerator cycle estimates")
    cst.add_argument("--dma", action="store_true")
    cst.add_argument("--r-unit", action="store_true")
    cst.add_argument("--sampling-unit", action="store_true")
    cst.add_argument("--rm-decoder", action="store_true")
    cst.add_argument("--gf-insn", action="store_true")
    cst.add_argument("--all", action="store_true", help="enable every unit")
    cst.add_argument("--seed", help="40-byte hex profiling seed")
    cst.set_defaults(func=cmd_costmodel)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except kem.FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except kem.DecapsulationFailure:
        print("decapsulation rejected the ciphertext", file=sys.stderr)
        return EXIT_REJECT
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
