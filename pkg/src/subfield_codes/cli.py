"""
Command line: construct, verify, sweep, reproduce-paper.

Exit status is 0 on success, 1 when a prediction or fixture fails, 2 for
invalid configuration (bad flags, failed construction preconditions, caps).
Without ``--output`` results go to stdout, or to a file under
``$SUBFIELD_CODES_OUTPUT_DIR`` when that variable is set.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .bounds import BoundViolation
from .defining_sets import PreconditionError
from .engine import MAX_MESSAGES, MAX_WORK, CapExceeded
from . import report

OUTPUT_ENV = "SUBFIELD_CODES_OUTPUT_DIR"
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


def _positive(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return v


def _family_args(p, ranges=False):
    p.add_argument("--family", required=True, choices=["1", "1s", "2", "3", "4"])
    kind = str if ranges else int
    p.add_argument("--q", type=kind, required=True)
    p.add_argument("--m", type=kind, required=True)
    p.add_argument("--r", type=str, help="subfield degree(s); comma list for family 1")
    p.add_argument("--k", type=str)
    p.add_argument("--s", type=str)
    p.add_argument("--h", type=str, help="number of cosets when thetas are defaulted")
    if not ranges:
        p.add_argument("--thetas", type=str,
                       help="comma list: 1, a, a^j, #index or '+'-sums of those")


def _common(p, formats):
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--output", type=str)
    p.add_argument("--max-messages", type=_positive, default=MAX_MESSAGES)
    p.add_argument("--max-work", type=_positive, default=MAX_WORK)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="subfield-codes",
                                 description="Trace codes from defining sets.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, text in (("construct", "build one code and report everything"),
                       ("verify", "check one code against its closed-form prediction")):
        p = sub.add_parser(name, help=text)
        _family_args(p)
        _common(p, ["json", "text", "csv"])
    p = sub.add_parser("sweep", help="CSV over parameter ranges (6..12 or 1,2,3)")
    _family_args(p, ranges=True)
    _common(p, ["csv", "json"])
    p.add_argument("--invalid", type=str, help="file for rejected tuples (default stderr)")
    p = sub.add_parser("reproduce-paper", help="run the bundled example fixtures")
    _common(p, ["json", "text"])
    p.add_argument("--only", action="append", help="fixture id or group; repeatable")
    p.add_argument("--fixtures", type=str, help="alternate fixture file")
    return ap


def _int_or_none(text):
    return None if text in (None, "") else int(text)


def family_params(args) -> dict:
    fam = args.family
    params = {"q": args.q, "m": args.m}
    if fam == "1":
        if not args.r:
            raise ConfigError("family 1 needs --r")
        params["r"] = [int(x) for x in args.r.split(",")]
    elif fam in ("2", "3"):
        if args.r is None:
            raise ConfigError(f"family {fam} needs --r")
        params["r"] = int(args.r)
        if args.thetas:
            params["thetas"] = [t.strip() for t in args.thetas.split(",")]
        elif args.h:
            params["h"] = int(args.h)
        else:
            raise ConfigError(f"family {fam} needs --thetas or --h")
    elif fam == "4":
        for name in ("k", "r", "s"):
            if getattr(args, name) is None:
                raise ConfigError(f"family 4 needs --{name}")
            params[name] = int(getattr(args, name))
    return params


def _destination(args, default_name):
    if args.output:
        return Path(args.output)
    env = os.environ.get(OUTPUT_ENV)
    if env:
        return Path(env) / default_name
    return None


def _emit(text, dest):
    if dest is None:
        sys.stdout.write(text)
    else:
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_text(text)


def _construct_csv(result):
    c, v, s = result["code"], result["verdict"], result["structure"]
    row = {"family": result["family"], **{k: v_ for k, v_ in result["params"].items()}}
    row.update({"n": c["n"], "dim": c["k"], "d": c["d"], "enumerator": c["enumerator"],
                "label": v["label"], "self_orthogonal": s["self_orthogonal"],
                "minimal": s["minimal"], "prediction": "pass" if result["passed"] else "fail"})
    cols = list(row)
    vals = ['"%s"' % " ".join(map(str, x)) if isinstance(x, list) else str(x) for x in row.values()]
    return ",".join(cols) + "\n" + ",".join(vals) + "\n"


def cmd_construct(args, verify_only=False) -> int:
    params = family_params(args)
    result = report.construct(args.family, params, workers=args.workers,
                              max_messages=args.max_messages, max_work=args.max_work)
    if verify_only:
        payload = {"params": params, "family": args.family,
                   "verification": result["verification"], "passed": result["passed"]}
        text = report.dumps(payload) if args.format == "json" else "\n".join(
            f"{c['status']:<11} {c['name']}" for c in result["verification"]["checks"]) + "\n"
    elif args.format == "json":
        text = report.dumps(result)
    elif args.format == "text":
        text = report.construct_text(result)
    else:
        text = _construct_csv(result)
    _emit(text, _destination(args, f"{args.command}-family{args.family}.{args.format}"))
    return EXIT_OK if result["passed"] else EXIT_FAIL


def cmd_sweep(args) -> int:
    qs, ms = report.parse_range(args.q), report.parse_range(args.m)
    tuples = list(report.sweep_tuples(
        args.family, qs, ms, rs=report.parse_range(args.r), hs=report.parse_range(args.h),
        ks=report.parse_range(args.k), ss=report.parse_range(args.s)))
    rows, invalid = report.sweep(args.family, tuples, workers=args.workers,
                                 max_messages=args.max_messages, max_work=args.max_work)
    if args.format == "csv":
        text = report.sweep_csv(rows)
    else:
        text = report.dumps({"rows": rows, "invalid": [
            {"params": p, "precondition": n, "message": msg} for p, n, msg in invalid]})
    _emit(text, _destination(args, f"sweep-family{args.family}.{args.format}"))
    side = "".join(f"invalid {p}: [{n}] {msg}\n" for p, n, msg in invalid)
    if args.invalid:
        Path(args.invalid).write_text(side)
    elif side and args.format == "csv":
        sys.stderr.write(side)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    manifest = report.reproduce_paper(workers=args.workers, only=args.only,
                                      fixtures_path=args.fixtures)
    if args.only and manifest["total"] == 0:
        raise ConfigError(f"no fixture matches {args.only}")
    lines = "\n".join(report.manifest_lines(manifest)) + "\n"
    if args.format == "json":
        dest = _destination(args, "manifest.json")
        _emit(report.dumps(manifest), dest)
        if dest is not None:
            sys.stdout.write(lines)
    else:
        _emit(lines, _destination(args, "manifest.txt"))
    return EXIT_OK if manifest["all_passed"] else EXIT_FAIL


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.command == "construct":
            return cmd_construct(args)
        if args.command == "verify":
            return cmd_construct(args, verify_only=True)
        if args.command == "sweep":
            return cmd_sweep(args)
        return cmd_reproduce(args)
    except PreconditionError as exc:
        sys.stderr.write(f"error: precondition {exc.name} failed: {exc.detail}\n")
    except (ConfigError, CapExceeded, BoundViolation, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
    return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
