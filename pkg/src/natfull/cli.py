"""Command line interface.

    natfull validate FILE
    natfull analyze scalars --morphism FILE [--id ID] [--family FILE]
    natfull analyze bimodule --bimodule FILE [--id ID]
    natfull analyze coring --coring FILE [--id ID]
    natfull analyze coring-morphism --input FILE [--id ID]
    natfull fixtures list
    natfull fixtures emit KEY [--p P] [--of KEY] [-o FILE]
    natfull suite run [--seed N] [--count K] [--p P] [--maxdim D] [--json FILE]

Exit status: 0 on success, 1 on validation errors or suite violations,
2 on unreadable input, 3 when an analyzer trips an internal consistency check.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import fixtures as fx
from . import instance_io as io
from . import report as rp
from .errors import InconsistentCriteria, NatfullError, NotProjective, ParseError, ValidationError, WitnessViolation
from .modrep import forget_right

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_INTERNAL = 0, 1, 2, 3


def _family(path: Optional[str], algebra):
    if not path:
        return None
    inst = io.load(path)
    fam = [(k, forget_right(m)) for k, m in inst.bimodules.items() if m.left == algebra]
    if not fam:
        raise ParseError(f"{path}: no module over the requested algebra")
    return fam


def _emit(report: dict, args) -> None:
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(rp.to_json(report))
    sys.stdout.write(rp.to_json(report) if args.format == "json" else rp.to_text(report))


def cmd_validate(args) -> int:
    inst = io.load(args.file)
    counts = ", ".join(f"{len(getattr(inst, s))} {s}" for s in io.SECTIONS if getattr(inst, s))
    print(f"VALID {args.file}: p = {inst.p}; {counts or 'empty'}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    if args.kind == "scalars":
        inst = io.load(args.morphism)
        phi = inst.only("morphisms", args.id)
        fam = _family(args.family, phi.source)
        rfam = _family(args.family, phi.target) if args.family else None
        report = rp.scalars_report(phi, args.id or args.morphism, fam, rfam)
    elif args.kind == "bimodule":
        inst = io.load(args.bimodule)
        report = rp.bimodule_report(inst.only("bimodules", args.id), args.id or args.bimodule)
    elif args.kind == "coring":
        inst = io.load(args.coring)
        report = rp.coring_report(inst.only("corings", args.id), args.id or args.coring)
    else:
        inst = io.load(args.input)
        report = rp.coring_morphism_report(inst.only("coring_morphisms", args.id), args.id or args.input)
    _emit(report, args)
    return EXIT_OK


def cmd_fixtures(args) -> int:
    if args.action == "list":
        for f in fx.catalog():
            print(f"{f.key:9s} {f.summary}")
        return EXIT_OK
    if not args.key:
        raise ParseError("fixtures emit needs a fixture key")
    text = io.dumps(fx.build(args.key, args.p, args.of))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_suite(args) -> int:
    from .oracle import equivalence_suite

    seed = int(os.environ.get("NATFULL_SEED", args.seed))
    rep = equivalence_suite(seed, args.count, args.p, args.maxdim)
    text = json.dumps(rep, sort_keys=True, indent=1) + "\n"
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    for kind, c in sorted(rep["counters"].items()):
        print(f"{kind:16s} instances {c['instances']:4d}  naturally full {c['naturally_full']:4d}  "
              f"witnesses verified {c['witnesses_verified']:4d}  violations {c['violations']}")
    for v in rep["violations"]:
        print(f"VIOLATION {v['id']}: {v['message']}")
    print(f"seed {seed}: {rep['violation_count']} violation(s)")
    return EXIT_OK if rep["violation_count"] == 0 else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="natfull", description="Natural fullness of module and comodule functors over F_p-algebras")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="load and validate an instance file")
    v.add_argument("file")
    v.set_defaults(fn=cmd_validate)

    a = sub.add_parser("analyze", help="run an analyzer on an instance")
    asub = a.add_subparsers(dest="kind", required=True)
    specs = [("scalars", "--morphism"), ("bimodule", "--bimodule"), ("coring", "--coring"), ("coring-morphism", "--input")]
    for kind, flag in specs:
        k = asub.add_parser(kind)
        k.add_argument(flag, required=True, metavar="FILE")
        k.add_argument("--id", help="object id when the file holds several")
        if kind == "scalars":
            k.add_argument("--family", metavar="FILE", help="instance file whose bimodules form the test family")
        k.add_argument("--format", choices=["text", "json"], default="text")
        k.add_argument("--json", metavar="FILE", help="also write the JSON report here")
        k.set_defaults(fn=cmd_analyze)

    f = sub.add_parser("fixtures", help="list or emit the shipped fixtures")
    f.add_argument("action", choices=["list", "emit"])
    f.add_argument("key", nargs="?")
    f.add_argument("--p", type=int, default=2)
    f.add_argument("--of", help="argument fixture for FIX-SWE and FIX-TRIV")
    f.add_argument("-o", "--output")
    f.set_defaults(fn=cmd_fixtures)

    s = sub.add_parser("suite", help="seeded random equivalence suite")
    s.add_argument("action", choices=["run"])
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--count", type=int, default=50)
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--maxdim", type=int, default=3)
    s.add_argument("--json", metavar="FILE")
    s.set_defaults(fn=cmd_suite)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as exc:
        print(f"INVALID: {exc}", file=sys.stderr)
        for key, msgs in sorted(exc.violations.items()):
            for msg in msgs:
                print(f"  {key}: {msg}", file=sys.stderr)
        return EXIT_INVALID
    except (ParseError, KeyError, ValueError) as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InconsistentCriteria, WitnessViolation) as exc:
        print(f"INTERNAL: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except NotProjective as exc:
        print(f"NOT APPLICABLE: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NatfullError as exc:
        print(f"ERROR: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
