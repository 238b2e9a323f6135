"""Command-line front end.

Subcommands:

* ``build`` (implicit when only flags are given): build a table from a
  template spec (or load a table file), solve it, recover the starter, and
  write the verified starter JSON.
* ``keys``: report the admissible key set of a template base.
* ``verify``: classify a starter file or validate a table file.
* ``batch``: sample random tables, solve each, and keep a resumable
  line-delimited log plus an aggregate summary.

Exit codes: 0 success/valid, 2 unsatisfiable, 3 budget exhausted,
4 invalid input, 5 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .errors import (
    BudgetExceeded,
    InternalVerificationFailure,
    TriplicationError,
)
from .msp import compile_instance, random_tt, solution_to_json, solve
from .pairings import Pairing, classify, pairing_from_json
from .recovery import recover_starter, starter_from_json, starter_to_json
from .scenarios import Scenario
from .tables import render_table, table_from_json, table_to_json, validate
from .templates import admissible_keys, build_template, template_base_from_spec

EXIT_OK = 0
EXIT_UNSAT = 2
EXIT_ABORTED = 3
EXIT_INVALID = 4
EXIT_INTERNAL = 5

SUBCOMMANDS = ("build", "keys", "verify", "batch")


def parse_pair_list(text: str, m: int) -> Pairing:
    """Parse the command-line pairing literal ``"x,y;x,y;..."``."""
    pairs = []
    for chunk in text.split(";"):
        x, y = chunk.split(",")
        pairs.append((int(x.strip()) % m, int(y.strip()) % m))
    return Pairing(m, tuple(pairs))


def _spec_from_args(args) -> dict:
    if args.spec:
        with open(args.spec) as fh:
            return json.load(fh)
    if args.mode is None or args.m is None:
        raise SystemExit("either --spec or --mode/--m must be given")
    spec = {"mode": args.mode, "m": args.m}
    for name in ("T0", "T1", "T2"):
        text = getattr(args, name)
        if text is not None:
            spec[name] = [list(p) for p in parse_pair_list(text, args.m).pairs]
    if args.mu is not None:
        spec["mu"] = args.mu
    return spec


def _outdir(args) -> str:
    out = getattr(args, "outdir", None) or os.environ.get("TRIPLICATE_OUTDIR") or "."
    os.makedirs(out, exist_ok=True)
    return out


def cmd_build(args) -> int:
    scenario_kind = args.scenario
    if args.tt:
        with open(args.tt) as fh:
            tt = table_from_json(json.load(fh))
        provenance_spec = {"table_file": args.tt}
    else:
        spec = _spec_from_args(args)
        base = template_base_from_spec(spec)
        key = args.key if args.key is not None else spec.get("key")
        if key is None:
            raise SystemExit("a key is required (--key or spec file)")
        key = int(key)
        keys = admissible_keys(*base)
        if key not in keys:
            print(f"key {key} is not admissible; K = {sorted(keys)}")
            return EXIT_INVALID
        tt = validate(build_template(*base, key), base[0].modulus)
        provenance_spec = {"template": spec, "key": key}
    sc = Scenario(scenario_kind, tt.m)
    inst = compile_instance(tt, sc)
    outcome = solve(inst, mode="first", budget=args.budget, seed=args.seed)
    print(render_table(tt))
    print(
        f"solver: {outcome.status} "
        f"(nodes={outcome.stats.nodes}, backtracks={outcome.stats.backtracks}, "
        f"elapsed={outcome.stats.elapsed:.3f}s)"
    )
    if outcome.status == "unsat":
        return EXIT_UNSAT
    if outcome.status == "aborted":
        return EXIT_ABORTED
    ct = outcome.tables[0]
    starter = recover_starter(tt, ct, sc)
    doc = starter_to_json(
        starter,
        ordered=True,
        provenance={
            "tt": table_to_json(tt),
            "scenario": solution_to_json(ct),
            "solution_index": 0,
            **provenance_spec,
        },
    )
    path = args.output or os.path.join(
        _outdir(args), f"starter_order{starter.modulus}_key{tt.key}_{sc.kind}.json"
    )
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
    print(f"strong starter of order {starter.modulus}: {list(starter.pairs)}")
    print(f"written to {path}")
    return EXIT_OK


def cmd_keys(args) -> int:
    spec = _spec_from_args(args)
    base = template_base_from_spec(spec)
    keys = admissible_keys(*base)
    m = base[0].modulus
    print(f"K = {sorted(keys)}  (|K| = {len(keys)})")
    if args.json:
        doc = {
            "m": m,
            "mode": spec["mode"],
            "admissible": sorted(keys),
            "per_key": {str(t): (t in keys) for t in range(1, m)},
        }
        with open(args.json, "w") as fh:
            json.dump(doc, fh, indent=2)
        print(f"written to {args.json}")
    return EXIT_OK


def cmd_verify(args) -> int:
    with open(args.file) as fh:
        data = json.load(fh)
    if "rows" in data and "m" in data:
        tt = table_from_json(data)  # raises on violation
        print(f"valid triplication table of order {tt.m}, key {tt.key}")
        return EXIT_OK
    if "pairs" in data:
        p = starter_from_json(data) if "order" in data else pairing_from_json(data)
        outcome = classify(p)
        print(f"order {p.modulus}: {outcome.kind.name}")
        if outcome.witness:
            print(f"first violation: {outcome.witness}")
        return EXIT_OK if outcome.kind.name == "STRONG_STARTER" else EXIT_INVALID
    raise SystemExit(f"{args.file}: not a starter or table JSON file")


def _batch_job(job: tuple) -> dict:
    kind, m, index, seed, scenario_kind, budget, tt_json = job
    t0 = time.perf_counter()
    record = {"m": m, "index": index, "seed": seed, "scenario": scenario_kind}
    if kind == "fixed":
        tt = table_from_json(tt_json)
    else:
        tt = random_tt(m, seed=seed)
        record["tt"] = table_to_json(tt)
    sc = Scenario(scenario_kind, tt.m)
    outcome = solve(compile_instance(tt, sc), mode="first", budget=budget)
    record.update(
        outcome=outcome.status,
        nodes=outcome.stats.nodes,
        backtracks=outcome.stats.backtracks,
        elapsed=round(time.perf_counter() - t0, 6),
    )
    if outcome.status == "solution":
        starter = recover_starter(tt, outcome.tables[0], sc)
        record["order"] = starter.modulus
        record["starter"] = [list(p) for p in starter.pairs]
    return record


def cmd_batch(args) -> int:
    orders = [int(x) for x in args.orders.split(",")] if args.orders else []
    if args.samples < 1 and not args.fixed_tt:
        raise SystemExit("sample count must be >= 1")
    if args.budget is not None and args.budget <= 0:
        raise SystemExit("budget must be positive")
    outdir = _outdir(args)
    log_path = os.path.join(outdir, "batch_log.jsonl")

    done = set()
    if os.path.exists(log_path):
        with open(log_path) as fh:
            for line in fh:
                rec = json.loads(line)
                done.add((rec["m"], rec["index"]))

    jobs = []
    for m in orders:
        for index in range(args.samples):
            if (m, index) in done:
                continue
            job_seed = args.seed * 1_000_003 + m * 1009 + index
            jobs.append(
                ("random", m, index, job_seed, args.scenario, args.budget, None)
            )
    for path in args.fixed_tt or []:
        with open(path) as fh:
            tt_json = json.load(fh)
        index = f"fixed:{os.path.basename(path)}"
        if (tt_json["m"], index) in done:
            continue
        jobs.append(
            ("fixed", tt_json["m"], index, args.seed, args.scenario,
             args.budget, tt_json)
        )

    with open(log_path, "a") as log:
        if args.workers > 1 and jobs:
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                for record in pool.map(_batch_job, jobs):
                    log.write(json.dumps(record) + "\n")
                    log.flush()
        else:
            for job in jobs:
                record = _batch_job(job)
                log.write(json.dumps(record) + "\n")
                log.flush()

    # Aggregate the full log (including earlier runs being resumed).
    summary: dict[str, dict] = {}
    with open(log_path) as fh:
        for line in fh:
            rec = json.loads(line)
            bucket = summary.setdefault(
                str(rec["m"]), {"N": 0, "N_unsat": 0, "N_aborted": 0}
            )
            bucket["N"] += 1
            if rec["outcome"] == "unsat":
                bucket["N_unsat"] += 1
            elif rec["outcome"] == "aborted":
                bucket["N_aborted"] += 1
    summary_path = os.path.join(outdir, "batch_summary.json")
    with open(summary_path, "w") as fh:
        json.dump(summary, fh, indent=2)
    for m, bucket in sorted(summary.items(), key=lambda kv: int(kv[0])):
        print(
            f"m={m}: N={bucket['N']} unsat={bucket['N_unsat']} "
            f"aborted={bucket['N_aborted']}"
        )
    print(f"log: {log_path}\nsummary: {summary_path}")
    return EXIT_OK


def _add_template_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", help="template spec JSON file")
    p.add_argument("--mode", choices=["one-starter", "three-starter", "epicycloidal"])
    p.add_argument("--m", type=int, help="base order m")
    p.add_argument("--T0", help='pair list "x,y;x,y;..."')
    p.add_argument("--T1", help="pair list (three-starter mode)")
    p.add_argument("--T2", help="pair list (three-starter mode)")
    p.add_argument("--mu", type=int, help="multiplier (epicycloidal mode)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triplicate",
        description="Construct strong starters of order 3m from base order m.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a table, solve it, recover a starter")
    _add_template_flags(p)
    p.add_argument("--key", type=int, help="template key t")
    p.add_argument("--tt", help="skip templating: solve this table JSON file")
    p.add_argument("--scenario", choices=["mod", "carry"], default="carry")
    p.add_argument("--budget", type=int, help="solver node budget")
    p.add_argument("--seed", type=int, help="value-order seed")
    p.add_argument("--output", "-o", help="starter JSON output path")
    p.add_argument("--outdir", help="output directory (default $TRIPLICATE_OUTDIR or .)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("keys", help="report admissible keys of a template base")
    _add_template_flags(p)
    p.add_argument("--json", help="write machine-readable report here")
    p.set_defaults(func=cmd_keys)

    p = sub.add_parser("verify", help="classify a starter file / validate a table file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("batch", help="sample random tables and solve each")
    p.add_argument("--orders", help="comma-separated base orders, e.g. 7,9,11")
    p.add_argument("--samples", type=int, default=100, help="tables per order")
    p.add_argument("--scenario", choices=["mod", "carry"], default="carry")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--fixed-tt", action="append", help="also solve this table file")
    p.add_argument("--outdir", help="output directory (default $TRIPLICATE_OUTDIR or .)")
    p.set_defaults(func=cmd_batch)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] not in SUBCOMMANDS and argv[0].startswith("-") \
            and argv[0] not in ("-h", "--help"):
        argv.insert(0, "build")  # bare-flags invocation means build
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_ABORTED
    except InternalVerificationFailure as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (TriplicationError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
