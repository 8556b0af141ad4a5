"""Command-line front end.

Subcommands: generate, equidist, relations (verify|discover), test run,
report, replay.  Every run that writes files also writes a manifest.json
capturing the resolved arguments, so `mtkit replay <manifest>` reproduces
the outputs (timestamps and durations excluded).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import struct
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .params import MT19937
from .streams import CLI_CONVERSIONS, SampleStream, StreamConfig
from .equidist import kv_table
from .relations import (KNOWN_RELATIONS, LinearRelation, discover, fold,
                        perturbations, verify)
from .stattests import PRESETS, run_test
from . import refvalues

_CLI_NAMES = tuple(CLI_CONVERSIONS)
_BATTERY_PAPER = ("bigcrush14", "bigcrush5", "bigcrush6", "smallcrush8",
                  "crush86")


def _atomic_write(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _parse_lags(text: str | None):
    if not text:
        return None
    try:
        lags = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise SystemExit(2)
    return lags


def _parse_seeds(text: str):
    # a bare count N means seeds 1..N; a comma list is taken verbatim
    parts = text.split(",")
    if len(parts) == 1:
        return tuple(range(1, int(parts[0]) + 1))
    return tuple(int(x) for x in parts)


def _manifest(args, config: dict, outputs: list[str], t0: float) -> None:
    if not outputs:
        return
    out_dir = os.path.dirname(outputs[0]) or "."
    doc = {
        "command": args._argv,
        "config": config,
        "seeds": config.get("seeds", []),
        "version": __version__,
        "duration_s": round(time.time() - t0, 3),
        "outputs": [os.path.basename(p) for p in outputs],
    }
    _atomic_write(os.path.join(out_dir, "manifest.json"),
                  json.dumps(doc, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------- generate

def cmd_generate(args) -> int:
    conversion = CLI_CONVERSIONS[args.conversion]
    cfg = StreamConfig(conversion=conversion, lag_set=_parse_lags(args.lags),
                       tau=args.tau)
    stream = SampleStream(args.seed, cfg)
    width = cfg.width

    rows = []
    for i, sample in enumerate(stream.samples()):
        if i >= args.count:
            break
        if args.format == "dec":
            if conversion == "res53" and args.tau == 0:
                rows.append(repr(sample.as_float()))
            else:
                rows.append(str(sample.source_bits))
        elif args.format == "hex":
            rows.append(f"{sample.source_bits:0{(width + 3) // 4}x}")
        else:
            fmt = "<I" if width <= 32 else "<Q"
            rows.append(struct.pack(fmt, sample.source_bits))

    if args.format == "bytes":
        payload = b"".join(rows)
        if args.out:
            with open(args.out, "wb") as fh:
                fh.write(payload)
        else:
            sys.stdout.buffer.write(payload)
        return 0
    text = "\n".join(rows) + "\n"
    if args.out:
        t0 = time.time()
        _atomic_write(args.out, text)
        _manifest(args, {"conversion": args.conversion, "seed": args.seed,
                         "count": args.count, "tau": args.tau,
                         "lags": args.lags, "format": args.format},
                  [args.out], t0)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------- equidist

def cmd_equidist(args) -> int:
    t0 = time.time()
    conversion = CLI_CONVERSIONS[args.conversion]

    def progress(v, k):
        print(f"  k({v}) = {k}", file=sys.stderr)

    report = kv_table(conversion, vmax=args.vmax,
                      use_cache=not args.no_cache, progress=progress)
    ref = {
        "raw32": refvalues.KV_RAW32,
        "concat64_low_first": refvalues.KV_CONCAT64_LO,
        "concat64_high_first": refvalues.KV_CONCAT64_HI,
        "res53": refvalues.KV_RES53,
    }.get(conversion, {})
    doc = report.to_dict()
    doc["reference"] = {str(v): ref[v] for v in sorted(ref) if v in report.k}
    doc["matches_reference"] = all(
        report.k[v] == ref[v] for v in ref if v in report.k) if ref else None
    text = json.dumps(doc, indent=2) + "\n"
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        path = os.path.join(args.out_dir, f"equidist-{args.conversion}.json")
        _atomic_write(path, text)
        _manifest(args, {"conversion": args.conversion, "vmax": args.vmax},
                  [path], t0)
        print(path)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------- relations

def _relation_from_args(args) -> list[tuple[str, LinearRelation]]:
    if args.terms:
        terms = frozenset(
            (int(lag), int(bit))
            for lag, bit in (t.split(":") for t in args.terms.split(",")))
        return [("custom", LinearRelation(terms, args.stream))]
    if args.relation:
        return [(args.relation, KNOWN_RELATIONS[args.relation])]
    return list(KNOWN_RELATIONS.items())


def cmd_relations_verify(args) -> int:
    seeds = _parse_seeds(args.seeds)
    results = []
    for name, rel in _relation_from_args(args):
        verdict = verify(rel, rel.stream, trials=args.trials, seeds=seeds)
        entry = {"relation": name, "terms": rel.to_json(),
                 "stream": rel.stream, "weight": rel.weight,
                 "holds": verdict.holds}
        if not verdict.holds:
            entry["fail_index"] = verdict.fail_index
            entry["fail_seed"] = verdict.fail_seed
        if args.perturb:
            broken = [verify(p, rel.stream, trials=10 ** 3, seeds=seeds[:1])
                      for p in perturbations(rel)]
            entry["perturbations_all_fail"] = all(not b.holds for b in broken)
        results.append(entry)
    sys.stdout.write(json.dumps(results, indent=2) + "\n")
    return 0


def cmd_relations_discover(args) -> int:
    conversion = CLI_CONVERSIONS[args.conversion]
    if args.window:
        first, width = (int(x) for x in args.window.split(":"))
    else:
        first, width = 0, args.v
    found = discover(conversion, args.v, args.k, (first, width),
                     max_kernel_dim=args.max_kernel_dim)
    out = []
    for rel in found:
        entry = {"terms": rel.to_json(), "weight": rel.weight,
                 "stream": rel.stream}
        if conversion in ("raw32", "reversed32"):
            folded = fold(rel, 2)
            entry["folded_lags"] = sorted({lag for lag, _ in folded.terms})
        out.append(entry)
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return 0


# ---------------------------------------------------------------- test run

def cmd_test_run(args) -> int:
    t0 = time.time()
    presets = list(args.preset) if args.preset else []
    if args.battery == "paper":
        presets = [p for p in _BATTERY_PAPER if p not in presets] + presets
    if not presets:
        print("choose --preset or --battery", file=sys.stderr)
        return 2
    conversion = CLI_CONVERSIONS[args.conversion]
    lags = _parse_lags(args.lags)
    seeds = _parse_seeds(args.seeds)
    workers = int(os.environ.get("MTKIT_THREADS", "1"))

    tasks = [(p, s) for p in presets for s in seeds]

    def one(task):
        preset, seed = task
        res = run_test(PRESETS[preset], conversion, lags, seed,
                       use_cache=not args.no_cache)
        print(f"  {preset} seed={seed} p={res.p_value:.3g} "
              f"log10p={res.log10_p:.2f}", file=sys.stderr)
        doc = res.to_dict()
        doc["preset"] = preset
        return doc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(one, tasks))
    else:
        records = [one(t) for t in tasks]

    text = json.dumps(records, indent=2) + "\n"
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        path = os.path.join(args.out_dir, "results.json")
        if os.path.exists(path) and not args.overwrite:
            with open(path, encoding="utf-8") as fh:
                records = json.load(fh) + records
            text = json.dumps(records, indent=2) + "\n"
        _atomic_write(path, text)
        _manifest(args, {"presets": presets, "conversion": args.conversion,
                         "lags": args.lags, "seeds": list(seeds)},
                  [path], t0)
        print(path)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------- report

_TABLE_TESTS = {
    "table2": [("bigcrush14", "birthday")],
    "table3": [("bigcrush5", "overlap_collision_t5"),
               ("bigcrush6", "overlap_collision_t6")],
    "table4": [("smallcrush8", "matrix_rank")],
    "table5": [("crush86", "hamming_indep")],
}


def _report_table1(args) -> int:
    k64 = kv_table("concat64_low_first", vmax=32).k
    k32 = kv_table("raw32", vmax=32).k
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["v", "k64", "k32", "ref_k64", "ref_k32", "source"])
    for v in range(1, 33):
        writer.writerow([v, k64[v], k32[v], refvalues.KV_CONCAT64_LO[v],
                         refvalues.KV_RAW32[v], "reference-table"])
    return _emit_report(args, buf.getvalue(), {
        "v": list(range(1, 33)),
        "k64": [k64[v] for v in range(1, 33)],
        "k32": [k32[v] for v in range(1, 33)],
        "ref_k64": [refvalues.KV_CONCAT64_LO[v] for v in range(1, 33)],
        "ref_k32": [refvalues.KV_RAW32[v] for v in range(1, 33)],
    })


def _emit_report(args, csv_text: str, json_doc: dict) -> int:
    text = (json.dumps(json_doc, indent=2) + "\n"
            if args.format == "json" else csv_text)
    if args.out:
        _atomic_write(args.out, text)
        print(args.out)
    else:
        sys.stdout.write(text)
    return 0


def cmd_report(args) -> int:
    if args.table == "table1":
        return _report_table1(args)
    wanted = _TABLE_TESTS[args.table]
    path = os.path.join(args.run_dir, "results.json")
    if not os.path.exists(path):
        print(f"no results at {path}; run `mtkit test run` first",
              file=sys.stderr)
        return 1
    with open(path, encoding="utf-8") as fh:
        records = json.load(fh)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    seeds = sorted({r.get("seed") for r in records})
    writer.writerow(["test", "conversion", "source"]
                    + [f"seed{s}" for s in seeds])
    doc = {"table": args.table, "rows": []}
    missing = False
    for preset, label in wanted:
        for conversion in ("raw32", "concat64_low_first"):
            cells = {}
            for r in records:
                if r.get("preset") == preset and \
                        r.get("conversion") == conversion:
                    cells[r.get("seed")] = r["p_value"]
            row = [label, conversion, "computed"] + [
                f"{cells[s]:.3g}" if s in cells else "" for s in seeds]
            if len(cells) < len(seeds):
                missing = True
            writer.writerow(row)
            doc["rows"].append({"test": label, "conversion": conversion,
                                "source": "computed", "p_values": cells})
            ref = refvalues.P_VALUES.get((label, conversion))
            if ref:
                writer.writerow([label, conversion, "reference-table"]
                                + [f"{p:.3g}" for p in ref[: len(seeds)]])
                doc["rows"].append({"test": label, "conversion": conversion,
                                    "source": "reference-table",
                                    "p_values": list(ref)})
    if missing:
        print("warning: some (preset, conversion, seed) cells are missing; "
              "run `mtkit test run` for both conversions", file=sys.stderr)
    return _emit_report(args, buf.getvalue(), doc)


# ---------------------------------------------------------------- replay

def cmd_replay(args) -> int:
    try:
        with open(args.manifest, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        print(f"cannot read manifest: {exc}", file=sys.stderr)
        return 1
    return main(doc["command"])


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="mtkit")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("generate", help="emit converted output values")
    g.add_argument("--conversion", choices=_CLI_NAMES, default="raw32")
    g.add_argument("--seed", type=int, default=5489)
    g.add_argument("--count", type=int, default=10)
    g.add_argument("--lags", default=None)
    g.add_argument("--tau", type=int, default=0)
    g.add_argument("--format", choices=("dec", "hex", "bytes"), default="dec")
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_generate)

    e = sub.add_parser("equidist", help="dimension-of-equidistribution table")
    e.add_argument("--conversion", choices=_CLI_NAMES, default="raw32")
    e.add_argument("--vmax", type=int, default=None)
    e.add_argument("--no-cache", action="store_true")
    e.add_argument("--out-dir", default=None)
    e.set_defaults(func=cmd_equidist)

    r = sub.add_parser("relations", help="verify or discover linear relations")
    rsub = r.add_subparsers(dest="rcmd", required=True)
    rv = rsub.add_parser("verify")
    rv.add_argument("--relation", choices=sorted(KNOWN_RELATIONS))
    rv.add_argument("--terms", default=None,
                    help="custom relation as lag:bit,lag:bit,...")
    rv.add_argument("--stream", choices=("raw32", "reversed32"),
                    default="raw32")
    rv.add_argument("--trials", type=int, default=10 ** 6)
    rv.add_argument("--seeds", default="5")
    rv.add_argument("--perturb", action="store_true",
                    help="also check single-term perturbations all fail")
    rv.set_defaults(func=cmd_relations_verify)
    rd = rsub.add_parser("discover")
    rd.add_argument("--conversion", choices=_CLI_NAMES, default="raw32")
    rd.add_argument("--v", type=int, required=True)
    rd.add_argument("--k", type=int, required=True)
    rd.add_argument("--window", default=None, help="first:width bit window")
    rd.add_argument("--max-kernel-dim", type=int, default=20)
    rd.set_defaults(func=cmd_relations_discover)

    t = sub.add_parser("test", help="statistical test batteries")
    tsub = t.add_subparsers(dest="tcmd", required=True)
    tr = tsub.add_parser("run")
    tr.add_argument("--preset", action="append",
                    choices=sorted(PRESETS))
    tr.add_argument("--battery", choices=("paper",), default=None)
    tr.add_argument("--conversion", choices=_CLI_NAMES, required=True)
    tr.add_argument("--lags", default="0,396,623")
    tr.add_argument("--seeds", default="5")
    tr.add_argument("--no-cache", action="store_true")
    tr.add_argument("--out-dir", default=None)
    tr.add_argument("--overwrite", action="store_true",
                    help="replace results.json instead of appending")
    tr.set_defaults(func=cmd_test_run)

    p = sub.add_parser("report", help="tabulate computed vs reference values")
    p.add_argument("table", choices=("table1", "table2", "table3", "table4",
                                     "table5"))
    p.add_argument("--run-dir", default="runs/test")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_report)

    rp = sub.add_parser("replay", help="re-run a recorded manifest")
    rp.add_argument("manifest")
    rp.set_defaults(func=cmd_replay)
    return top


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = argv
    try:
        return args.func(args)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
