"""Command-line entry point: ``rrlab <command> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .instances import GOLDEN_VALUES, InstanceError, InstanceSpec, golden_instances, load_instance
from .report import (EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, Report, batch_generate,
                     golden_comparison, run_instance)

log = logging.getLogger("rrlab")

STAGE_SETS = {
    "run": None,
    "hilbert": set(),
    "rr": {"reduction", "superficial", "ratliff_rush", "behaves_well"},
    "reduce": {"reduction", "superficial", "depth"},
}

SLOW_GOLDEN = ("d4",)
_SEVERITY = {0: 0, 5: 1, 1: 2, 3: 3, 4: 4}


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", default=None, help="coefficient field: Q or fp:<p>")
    p.add_argument("--seed", type=int, default=None, help="random seed")
    p.add_argument("--horizon", type=int, default=None, help="Hilbert function horizon")
    p.add_argument("--jobs", type=int, default=1, help="parallel instances")
    p.add_argument("--json", dest="json_out", default=None, help="write the JSON report here")
    p.add_argument("--verbose", "-v", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="rrlab", parents=[common],
                                     description="Hilbert coefficients and Ratliff-Rush laboratory")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("run", "full pipeline with verdicts"),
                       ("hilbert", "Hilbert data only"),
                       ("rr", "reduction and Ratliff-Rush tables"),
                       ("reduce", "minimal reduction, superficial element and depth bound")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file", help="instance file (.toml or .json)")
    b = sub.add_parser("batch", parents=[common], help="seeded random monomial instances")
    b.add_argument("params", nargs="?", default="",
                   help="comma separated key=value pairs (variables, max_degree, count, closure)")
    b.add_argument("--variables", type=int, default=None)
    b.add_argument("--max-degree", type=int, default=None)
    b.add_argument("--count", type=int, default=None)
    b.add_argument("--closure", dest="closure", action="store_true", default=None)
    b.add_argument("--no-closure", dest="closure", action="store_false")
    b.add_argument("--skip", default="", help="comma separated stages to skip")
    v = sub.add_parser("verify-paper", parents=[common], help="run the pinned golden suite")
    v.add_argument("--only", default="", help="comma separated golden instance names")
    v.add_argument("--include-slow", action="store_true", help="also run the d = 4 instance")
    return parser


def _parse_params(text: str) -> dict:
    out = {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        if "=" not in item:
            raise ValueError(f"batch parameter {item!r} is not key=value")
        k, v = item.split("=", 1)
        k = k.strip().replace("-", "_")
        if k not in ("variables", "max_degree", "count", "closure"):
            raise ValueError(f"unknown batch parameter {k!r}")
        out[k] = v.strip().lower() in ("1", "true", "yes", "on") if k == "closure" else int(v)
    return out


def _run_one(args: tuple) -> dict:
    spec_dict, kw = args
    spec = InstanceSpec.from_dict(spec_dict)
    return run_instance(spec, **kw).to_dict()


def _run_many(specs: list, kw: dict, jobs: int) -> list:
    work = [(s.to_dict(), kw) for s in specs]
    if jobs <= 1 or len(work) <= 1:
        return [_run_one(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_one, work))


def _write_json(path: str | None, payload) -> None:
    if path is None:
        return
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path == "-":
        sys.stdout.write(text + "\n")
    else:
        Path(path).write_text(text + "\n", encoding="utf-8")


def _summary(report: Report, verbose: bool) -> str:
    lines = [f"instance {report.instance['name']}: {report.status}"]
    h = report.hilbert
    if h:
        lines.append(f"  h = {h['h_poly']}  e = {h['e']}  eta = {h['eta']}")
    if "r" in report.reduction:
        lines.append(f"  r_J = {report.reduction['r']}  J = {report.reduction['generators']}")
    if "depth" in report.reduction:
        lines.append(f"  depth G(I) >= {report.reduction['depth']['value']}")
    bw = report.ratliff_rush.get("behaves_well")
    if bw is not None:
        lines.append(f"  b_I = {bw['b_I']}  s_I = {bw['s_I']}  "
                     f"behaves well: {bw['verdict']}")
    for name, f in report.failures.items():
        lines.append(f"  stage {name} failed ({f['kind']}): {f['message']}")
    for v in report.verdicts:
        if verbose or v.is_finding or v.is_unverified_violation:
            lines.append("  " + v.line())
    return "\n".join(lines)


def _worst(codes) -> int:
    codes = list(codes) or [EXIT_OK]
    return max(codes, key=lambda c: _SEVERITY.get(c, 0))


def _cmd_single(args, stages) -> int:
    spec = load_instance(args.file)
    kw = {"field_override": args.field, "seed": args.seed, "horizon": args.horizon,
          "stages": stages}
    report = run_instance(spec, **kw)
    print(_summary(report, args.verbose or args.command != "run"))
    _write_json(args.json_out, report.to_dict())
    return report.exit_code


def _cmd_batch(args) -> int:
    params = _parse_params(args.params)
    for key in ("variables", "max_degree", "count", "closure"):
        v = getattr(args, key)
        if v is not None:
            params[key] = v
    seed = 0 if args.seed is None else args.seed
    specs = batch_generate(params, seed)
    skip = [s for s in args.skip.split(",") if s]
    if skip:
        specs = [InstanceSpec.from_dict({**s.to_dict(), "skip": skip}) for s in specs]
    kw = {"field_override": args.field, "horizon": args.horizon}
    reports = [Report.from_dict(d) for d in _run_many(specs, kw, args.jobs)]
    counts: dict = {}
    for r in reports:
        counts[r.status] = counts.get(r.status, 0) + 1
        if r.status != "clean" or args.verbose:
            print(_summary(r, args.verbose))
    print(f"batch seed {seed}: {len(reports)} instances, " +
          ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))
    _write_json(args.json_out, {"params": params, "seed": seed,
                                "reports": [r.to_dict() for r in reports]})
    return _worst(r.exit_code for r in reports)


def _cmd_verify(args) -> int:
    gold = golden_instances()
    names = [n for n in args.only.split(",") if n] or \
        [n for n in GOLDEN_VALUES if args.include_slow or n not in SLOW_GOLDEN]
    unknown = [n for n in names if n not in gold]
    if unknown:
        raise ValueError(f"unknown golden instances {unknown}")
    kw = {"field_override": args.field, "horizon": args.horizon}
    reports = [Report.from_dict(d) for d in _run_many([gold[n] for n in names], kw, args.jobs)]
    mismatches = 0
    print(f"{'instance':<10} {'key':<13} {'expected':<28} {'observed':<28} ok")
    for name, rep in zip(names, reports):
        for key, want, got, ok in golden_comparison(name, rep):
            mismatches += not ok
            print(f"{name:<10} {key:<13} {str(want):<28} {str(got):<28} {'yes' if ok else 'NO'}")
        if args.verbose:
            print(_summary(rep, True))
    _write_json(args.json_out, {"reports": [r.to_dict() for r in reports]})
    if mismatches:
        print(f"{mismatches} golden values differ")
        return EXIT_INTERNAL
    return _worst(r.exit_code for r in reports)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command in STAGE_SETS:
            return _cmd_single(args, STAGE_SETS[args.command])
        if args.command == "batch":
            return _cmd_batch(args)
        return _cmd_verify(args)
    except (InstanceError, ValueError, OSError) as exc:
        print(f"rrlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
