"""Command line front end: compute, classify, verify, table.

Results are printed as one JSON document per command (exact values as
decimal strings). ``verify`` prints one log line per sweep and can write a
JSON summary with ``--report``. Sweep ranges can be preset in a key = value
file named by the STIRPADIC_CONFIG environment variable; flags win.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import minzero, oracle
from .padic import INFINITE, check_prime, nu_or_inf, val_unit
from .sequences import Kind, bernoulli_number, bernoulli_poly, coefficient_valuations, stirling1, stirling2, triangle

SCHEMA_VERSION = 1
CONFIG_ENV = "STIRPADIC_CONFIG"
DEFAULT_P = 2

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_CONJECTURE = 3

RANGE_FLAGS = {
    # flag -> range key; the lower end comes from the claim defaults
    "nmax": "n",
    "kmax": "k",
    "hmax": "h",
    "lmax": "l",
    "cmax": "c",
    "bmax": "b",
    "tmax": "t",
}
CONFIG_KEYS = {"p", "primes", "profile", "workers", *RANGE_FLAGS}


def load_config(path: Optional[str]) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment."""
    if not path:
        return {}
    config = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            config[key] = value
    return config


def _exact(value) -> str:
    return str(value)


def _nu_json(v):
    return None if v is INFINITE else v


def _record(command: str, inputs: dict, results: dict, verdicts: Optional[dict] = None) -> dict:
    record = {"schema_version": SCHEMA_VERSION, "command": command, "inputs": inputs, "results": results}
    if verdicts is not None:
        record["verdicts"] = verdicts
    return record


def _emit(record: dict, out) -> None:
    json.dump(record, out, indent=2)
    out.write("\n")


def _padic_fields(value: Fraction, p: int) -> dict:
    vu = val_unit(value, p)
    return {"p": p, "nu": _nu_json(vu.valuation), "eps_residue": vu.unit_residue}


def cmd_compute(args, config, out) -> int:
    p = args.p if args.p is not None else (int(config["p"]) if "p" in config else None)
    if p is not None:
        check_prime(p)
    a, b = args.args
    inputs = {"kind": args.kind, "args": [a, b]}
    if args.kind in ("s1", "s2"):
        if a < 0 or b < 0:
            raise ValueError("n and k must be non-negative")
        value = stirling1(a, b) if args.kind == "s1" else stirling2(a, b)
        results = {"value": _exact(value)}
        if p is not None:
            results.update(_padic_fields(value, p))
    elif args.kind == "bern":
        if a < 0:
            raise ValueError("n must be non-negative")
        value = bernoulli_number(a, b)
        results = {"value": _exact(value)}
        if p is not None:
            results.update(_padic_fields(value, p))
    else:
        if a < 0:
            raise ValueError("n must be non-negative")
        poly = bernoulli_poly(a, b)
        results = {"coefficients": [_exact(c) for c in poly.coefficients]}
        if p is not None:
            results["p"] = p
            results["codegree_nu"] = [_nu_json(v) for _, v in coefficient_valuations(a, b, p)]
    if p is not None:
        inputs["p"] = p
    _emit(_record("compute", inputs, results), out)
    return EXIT_OK


def cmd_classify(args, config, out) -> int:
    p = _p(args, config)
    kind = Kind.FIRST if args.kind == "first" else Kind.SECOND
    report = minzero.classify(kind, args.n, args.k, p, witness=args.witness)
    inputs = {"kind": args.kind, "n": args.n, "k": args.k, "p": p, "witness": args.witness}
    _emit(_record("classify", inputs, report.to_dict(), {"min_zero": report.is_min_zero}), out)
    return EXIT_OK


def _p(args, config) -> int:
    if args.p is not None:
        return check_prime(args.p)
    return check_prime(int(config.get("p", DEFAULT_P)))


def _parse_primes(text: str) -> tuple[int, ...]:
    return tuple(check_prime(int(x)) for x in text.split(",") if x.strip())


def _ranges(args, config, claim: oracle.Claim) -> dict:
    ranges = {}
    for flag, key in RANGE_FLAGS.items():
        value = getattr(args, flag)
        if value is None and flag in config:
            value = int(config[flag])
        if value is None:
            continue
        if key == "l":
            ranges[key] = (-value, value)
        else:
            lo = claim.defaults.get(key, (0, 0))[0]
            ranges[key] = (lo, value)
    return ranges


def cmd_verify(args, config, out) -> int:
    workers = args.workers if args.workers is not None else int(config.get("workers", 1))
    profile = args.profile or (config.get("profile") if not args.claim else None)
    if args.claim:
        claim = oracle.CLAIMS[args.claim]
        if args.primes:
            primes = _parse_primes(args.primes)
        elif args.p is not None:
            primes = (check_prime(args.p),)
        elif "primes" in config:
            primes = _parse_primes(config["primes"])
        elif "p" in config:
            primes = (check_prime(int(config["p"])),)
        else:
            primes = claim.primes or oracle.MAIN_PRIMES
        spec = oracle.SweepSpec(args.claim, primes, _ranges(args, config, claim))
        reports = [oracle.run_sweep(spec)]
        command = {"claim": args.claim}
    else:
        reports = oracle.run_all(profile or "quick", workers=workers)
        command = {"profile": profile or "quick"}
    for rep in reports:
        print(rep.log_line(), file=out)
        for inputs, expected, observed in rep.failures[:5]:
            print(f"  failure inputs={inputs} expected={expected} observed={observed}", file=out)
    failed = [r for r in reports if r.failures and not r.conjecture_flag]
    conjecture = [r for r in reports if r.failures and r.conjecture_flag]
    status = EXIT_FAILURE if failed else EXIT_CONJECTURE if conjecture else EXIT_OK
    verdict = "FAIL" if failed else "CONJECTURE VIOLATION" if conjecture else "PASS"
    print(f"overall verdict={verdict.replace(' ', '_')} sweeps={len(reports)}", file=out)
    if args.report:
        doc = _record("verify", command, [r.to_dict() for r in reports], {"overall": verdict})
        if args.report == "-":
            _emit(doc, out)
        else:
            with open(args.report, "w", encoding="utf-8") as fh:
                _emit(doc, fh)
    return status


TABLE_KINDS = ("s1", "s2", "s1-nu", "s2-nu")


def table_rows(kind: str, n_max: int, p: int) -> list[list]:
    """Rows 0..n_max of a Stirling triangle, or of its p-adic valuations."""
    tri = triangle(Kind.FIRST if kind.startswith("s1") else Kind.SECOND)
    rows = []
    for n in range(n_max + 1):
        row = tri.row(n)
        if kind.endswith("-nu"):
            rows.append([_nu_json(nu_or_inf(v, p)) for v in row])
        else:
            rows.append(list(row))
    return rows


def cmd_table(args, config, out) -> int:
    p = _p(args, config)
    n_max = args.nmax if args.nmax is not None else int(config.get("nmax", 0))
    if n_max < 1:
        raise ValueError("--nmax must be at least 1")
    rows = table_rows(args.kind, n_max, p)
    is_nu = args.kind.endswith("-nu")
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "k", "nu" if is_nu else "value"])
        for n, row in enumerate(rows):
            for k, v in enumerate(row):
                writer.writerow([n, k, "" if v is None else v])
        text = buf.getvalue()
    else:
        results = rows if is_nu else [[_exact(v) for v in row] for row in rows]
        inputs = {"kind": args.kind, "nmax": n_max}
        if is_nu:
            inputs["p"] = p
        buf = io.StringIO()
        json.dump(_record("table", inputs, results), buf)
        buf.write("\n")
        text = buf.getvalue()
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=None, help=f"prime (default {DEFAULT_P})")

    parser = argparse.ArgumentParser(prog="stirpadic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="exact Stirling or Bernoulli values")
    c.add_argument("kind", choices=("s1", "s2", "bern", "bernpoly"))
    c.add_argument("args", type=int, nargs=2, metavar="INT", help="n k for s1/s2, n l for bern/bernpoly")
    c.set_defaults(func=cmd_compute)

    c = sub.add_parser("classify", parents=[common], help="minimum zero classification")
    c.add_argument("kind", choices=("first", "second"))
    c.add_argument("n", type=int)
    c.add_argument("k", type=int)
    c.add_argument("--witness", action="store_true", help="check against the exact Stirling number")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("verify", parents=[common], help="brute-force verification sweeps")
    group = c.add_mutually_exclusive_group()
    group.add_argument("--claim", choices=list(oracle.CLAIMS))
    group.add_argument("--profile", choices=("quick", "full"))
    c.add_argument("--primes", help="comma separated primes, overrides --p")
    for flag in RANGE_FLAGS:
        c.add_argument(f"--{flag}", type=int, default=None)
    c.add_argument("--workers", type=int, default=None)
    c.add_argument("--report", help="write the JSON summary here ('-' for stdout)")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("table", parents=[common], help="export a Stirling triangle")
    c.add_argument("kind", choices=TABLE_KINDS)
    c.add_argument("--nmax", type=int, default=None)
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.add_argument("--output", help="file to write (default stdout)")
    c.set_defaults(func=cmd_table)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(os.environ.get(CONFIG_ENV))
        return args.func(args, config, out)
    except (ValueError, OSError) as exc:
        print(f"stirpadic {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE if isinstance(exc, ValueError) else EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
