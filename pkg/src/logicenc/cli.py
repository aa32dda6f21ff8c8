"""Command-line driver: encrypt / verify / attack / stats / map.

Exit codes: 0 success, 2 verification failure (or inequivalence), 3 parse
error, 4 configuration error. All reports are JSON. The default output
directory comes from --out, falling back to $LOGICENC_OUT, then the cwd.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path
from typing import List, Optional

from .attack import scope_baseline, scope_resynth, worst_case_split
from .encrypt import forced_cipher
from .bench import BenchError, parse_bench, write_bench
from .corrector import KeyVector
from .integrator import FinalCircuit, lower_fc
from .nandnor import map_to_nand_nor
from .netlist import (
    Netlist,
    NetlistError,
    from_json_dict,
    stats,
    to_json_dict,
)
from .optimize import OptEffort, propagate_constants
from .pipeline import Overrides, VerificationError, run_encryption, run_matrix
from .verify import EquivBudget, check_equiv

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_PARSE = 3
EXIT_CONFIG = 4


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load_bench(path: str) -> Netlist:
    text = Path(path).read_text()
    return parse_bench(text, name=Path(path).stem)


def _out_dir(args) -> Path:
    out = args.out or os.environ.get("LOGICENC_OUT") or "."
    p = Path(out)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _fc_json_dict(fc: FinalCircuit) -> dict:
    return {
        "netlist": to_json_dict(fc.netlist),
        "key_map": [list(e) for e in fc.key_map],
    }


def _fc_from_json(d: dict) -> FinalCircuit:
    return FinalCircuit(
        from_json_dict(d["netlist"]),
        tuple(tuple(e) for e in d["key_map"]),
    )


def _bits(s: Optional[str]):
    if s is None:
        return None
    if set(s) - {"0", "1"}:
        raise ValueError(f"expected a bit string, got {s!r}")
    return tuple(int(b) for b in s)


def _parse_runs(spec: str):
    try:
        n, m = spec.lower().split("x")
        n, m = int(n), int(m)
    except ValueError:
        raise ValueError(f"--runs must look like NxM, got {spec!r}")
    if n < 1 or m < 1:
        raise ValueError("--runs counts must be >= 1")
    return n, m


def _budget(args) -> EquivBudget:
    return EquivBudget(exhaustive_threshold=args.exhaustive_threshold)


def cmd_encrypt(args) -> int:
    try:
        oc = _load_bench(args.input)
    except (OSError, BenchError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    try:
        effort = OptEffort.from_spec(args.effort)
        runs_n, runs_m = _parse_runs(args.runs)
        if args.exhaustive_threshold > 24:
            raise ValueError("--exhaustive-threshold must be <= 24")
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    forced = any(
        (args.force_cipher, args.force_k_cc, args.force_k_ec, args.force_k_mux)
    )
    if forced and (runs_n, runs_m) != (1, 1):
        print("error: --force-* flags require --runs 1x1", file=sys.stderr)
        return EXIT_CONFIG
    seed = args.seed if args.seed is not None else random.SystemRandom().getrandbits(64)
    out = _out_dir(args)
    try:
        if forced:
            ov = Overrides(
                cipher=forced_cipher(args.force_cipher) if args.force_cipher else None,
                k_cc=_bits(args.force_k_cc),
                k_ec=_bits(args.force_k_ec),
                k_mux=_bits(args.force_k_mux),
            )
            r = run_encryption(
                oc, random.Random(seed), effort, _budget(args), ov
            )
            results = [(0, 0, r)]
        else:
            results = run_matrix(oc, seed, runs_n, runs_m, effort, _budget(args))
    except VerificationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except (ValueError, NetlistError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    single = runs_n == 1 and runs_m == 1
    run_reports = []
    for i, j, r in results:
        d = out if single else out / f"run_{i}_{j}"
        d.mkdir(parents=True, exist_ok=True)
        (d / "fc.bench").write_text(write_bench(lower_fc(r.fc)))
        (d / "fc.json").write_text(_json_text(_fc_json_dict(r.fc)))
        (d / "key.json").write_text(_json_text(r.key_file_dict()))
        (d / "trace.json").write_text(_json_text(r.trace.to_json_dict()))
        (d / "report.json").write_text(_json_text(r.report))
        if args.emit_components:
            (d / "ec_final.json").write_text(_json_text(to_json_dict(r.ec_final)))
            (d / "cc.json").write_text(_json_text(to_json_dict(r.cc)))
        run_reports.append({"run": [i, j], **r.report})
    summary = {
        "benchmark": oc.name,
        "seed": seed,
        "runs": [runs_n, runs_m],
        "effort": args.effort,
        "mean_flip_rate": sum(r["flip_rate"] for r in run_reports)
        / len(run_reports),
        "all_verified": all(
            r["verification"]["result"] == "equivalent" for r in run_reports
        ),
        "runs_detail": run_reports,
    }
    (out / "summary.json").write_text(_json_text(summary))
    print(
        f"{oc.name}: {len(run_reports)} run(s), seed {seed}, "
        f"{run_reports[0]['key_bits']} key bits, all verified"
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        fc = _fc_from_json(json.loads(Path(args.fc).read_text()))
        key = json.loads(Path(args.key).read_text())
        oc = _load_bench(args.oc)
    except (OSError, BenchError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    k_fc = key.get("k_fc", "")
    if len(k_fc) != len(fc.key_map) or set(k_fc) - {"0", "1"}:
        print(
            f"error: key has {len(k_fc)} bits, circuit has "
            f"{len(fc.key_map)} key ports",
            file=sys.stderr,
        )
        return EXIT_CONFIG
    bindings = fc.key_bindings([int(b) for b in k_fc])
    restored = propagate_constants(fc.netlist, bindings)
    verdict = check_equiv(restored, oc, _budget(args))
    print(_json_text(verdict.to_json_dict()), end="")
    return EXIT_OK if verdict.result == "equivalent" else EXIT_VERIFY


def cmd_attack(args) -> int:
    try:
        fc = _fc_from_json(json.loads(Path(args.fc).read_text()))
        key = (
            json.loads(Path(args.key).read_text()) if args.key else None
        )
    except (OSError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    mode = args.mode
    try:
        if mode == "baseline":
            if key:
                print("note: key file used for final scoring only", file=sys.stderr)
                fc = fc.with_final_key(
                    KeyVector.from_bitstring(key["k_fc"], "K_FC")
                )
            report = scope_baseline(fc)
        elif mode == "resynthesis":
            recipes = [OptEffort.from_spec(r) for r in args.recipes.split(",") if r]
            if key:
                print("note: key file used for final scoring only", file=sys.stderr)
                fc = fc.with_final_key(
                    KeyVector.from_bitstring(key["k_fc"], "K_FC")
                )
            report = scope_resynth(fc, recipes)
        else:  # worst_case_ec / worst_case_cc
            if not args.component or not key:
                print(
                    "error: worst-case modes need --component and --key",
                    file=sys.stderr,
                )
                return EXIT_CONFIG
            comp = from_json_dict(
                json.loads(Path(args.component).read_text())
            )
            role = "K_EC" if mode == "worst_case_ec" else "K_CC"
            truth = KeyVector.from_bitstring(
                key[role.lower()], role
            )
            print("note: key file used for final scoring only", file=sys.stderr)
            report = worst_case_split(comp, truth, mode)
    except (ValueError, NetlistError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    text = _json_text(report.to_json_dict())
    if args.out:
        out = _out_dir(args)
        (out / "attack_report.json").write_text(text)
    print(text, end="")
    return EXIT_OK


def cmd_stats(args) -> int:
    try:
        before = _load_bench(args.before)
        after = _load_bench(args.after)
    except (OSError, BenchError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    sb, sa = stats(before), stats(after)
    report = {
        "before": {"gates": sb.gate_count, "depth": sb.depth},
        "after": {"gates": sa.gate_count, "depth": sa.depth},
        "gate_overhead_pct": 100.0 * (sa.gate_count - sb.gate_count) / sb.gate_count,
        "depth_overhead_pct": (
            100.0 * (sa.depth - sb.depth) / sb.depth if sb.depth else 0.0
        ),
    }
    print(_json_text(report), end="")
    return EXIT_OK


def cmd_map(args) -> int:
    try:
        n = _load_bench(args.input)
        mapped = map_to_nand_nor(n)
    except (OSError, BenchError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except NetlistError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    text = write_bench(mapped.netlist)
    if args.out:
        Path(args.out).write_text(text)
        print(
            f"{n.name}: {mapped.gate_count} NAND/NOR gates "
            f"({mapped.duplicated_input_count} duplicated-input)"
        )
    else:
        print(text, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="logicenc",
        description="Gate-level logic encryption toolchain",
    )
    sub = p.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encrypt", help="run the full encryption pipeline")
    enc.add_argument("input", help="BENCH netlist to protect")
    enc.add_argument("--seed", type=int, default=None)
    enc.add_argument("--effort", default="standard")
    enc.add_argument("--exhaustive-threshold", type=int, default=20)
    enc.add_argument(
        "--runs",
        default="1x1",
        help="NxM: N encryption runs, M end-to-end runs each (experiments use 10x4)",
    )
    enc.add_argument("--out", default=None)
    enc.add_argument(
        "--emit-components",
        action="store_true",
        help="also write ec_final.json and cc.json (worst-case attack inputs)",
    )
    # deterministic-injection flags for reproducing worked examples
    enc.add_argument("--force-cipher", default=None, metavar="BITS")
    enc.add_argument("--force-k-cc", default=None, metavar="BITS")
    enc.add_argument("--force-k-ec", default=None, metavar="BITS")
    enc.add_argument("--force-k-mux", default=None, metavar="BITS")
    enc.set_defaults(func=cmd_encrypt)

    ver = sub.add_parser("verify", help="check FC==OC under a key")
    ver.add_argument("fc", help="fc.json from encrypt")
    ver.add_argument("key", help="key.json from encrypt")
    ver.add_argument("oc", help="original BENCH netlist")
    ver.add_argument("--exhaustive-threshold", type=int, default=20)
    ver.set_defaults(func=cmd_verify)

    att = sub.add_parser("attack", help="oracle-less key-guessing evaluation")
    att.add_argument("fc", help="fc.json (or component via --component)")
    att.add_argument(
        "--mode",
        default="baseline",
        choices=["baseline", "resynthesis", "worst_case_ec", "worst_case_cc"],
    )
    att.add_argument(
        "--recipes",
        default="standard,heavy:seed=1",
        help="comma-separated resynthesis efforts",
    )
    att.add_argument("--key", default=None, help="key.json, scoring only")
    att.add_argument(
        "--component", default=None, help="ec/cc netlist JSON for worst-case modes"
    )
    att.add_argument("--out", default=None)
    att.set_defaults(func=cmd_attack)

    st = sub.add_parser("stats", help="gate/depth overhead of one netlist vs another")
    st.add_argument("before")
    st.add_argument("after")
    st.set_defaults(func=cmd_stats)

    mp = sub.add_parser("map", help="NAND/NOR mapping only")
    mp.add_argument("input")
    mp.add_argument("--out", default=None)
    mp.set_defaults(func=cmd_map)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
