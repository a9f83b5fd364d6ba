"""Command-line interface: `fibcalc run`, `fibcalc catalog`, `fibcalc report`."""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize
from .errors import FibcalcError, ScriptError
from .invariants import default_hom_budget, group_catalog_names
from .mcg import CurveSpec, catalog_names, curated_payload
from .script import (DEFAULT_REPORT_GROUPS, build_report, execute, parse_script,
                     reports_to_json)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true",
                        help="emit the canonical machine-readable report form")
    parser.add_argument("--hom-budget", type=int, default=None, metavar="N",
                        help="cap on |G|^generators for homomorphism counting "
                             "(default: FIBCALC_HOM_BUDGET or %d)" % default_hom_budget())
    parser.add_argument("--workers", type=int, default=1, metavar="N",
                        help="partition count for homomorphism enumeration "
                             "(results are independent of it)")


def _emit(reports, as_json: bool) -> None:
    if as_json:
        print(reports_to_json(reports))
    else:
        for report in reports:
            print(report.text())
            print()


def _cmd_run(args) -> int:
    try:
        source = sys.stdin.read() if args.script == "-" else open(args.script).read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        script = parse_script(source)
        reports = execute(script, DEFAULT_REPORT_GROUPS, args.hom_budget, args.workers)
    except ScriptError as exc:
        _emit(getattr(exc, "reports", []), args.json)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FibcalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(reports, args.json)
    return 0


def _cmd_catalog(args) -> int:
    print("monodromies and knots:")
    for name in catalog_names():
        entry = curated_payload(name)
        if isinstance(entry, CurveSpec):
            continue
        print(f"  {name} (genus {entry.genus})")
    print("curves:")
    for name in catalog_names():
        entry = curated_payload(name)
        if isinstance(entry, CurveSpec):
            print(f"  {name} (genus {entry.genus}, class {list(entry.homology_class)})")
    print("finite groups:")
    print("  " + " ".join(group_catalog_names()))
    return 0


def _cmd_report(args) -> int:
    try:
        with open(args.object) as fh:
            data = json.load(fh)
        obj = serialize.deserialize(data)
        report = build_report(obj, DEFAULT_REPORT_GROUPS, args.hom_budget, args.workers)
    except (OSError, json.JSONDecodeError, FibcalcError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit([report], args.json)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="fibcalc",
        description="monodromy calculator for fibered knots, ribbon disks and 2-knots")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a surgery script")
    run.add_argument("script", help="script path, or - for stdin")
    _add_common(run)
    run.set_defaults(func=_cmd_run)

    cat = sub.add_parser("catalog", help="list catalog entries")
    cat.set_defaults(func=_cmd_catalog)

    rep = sub.add_parser("report", help="report on a serialized object")
    rep.add_argument("object", help="path to an object JSON file")
    _add_common(rep)
    rep.set_defaults(func=_cmd_report)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
