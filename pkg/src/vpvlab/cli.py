"""Command-line front end: expand products, verify the catalog, emit grids."""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys

from . import binary as binary_mod
from . import catalog as catalog_mod
from . import determinants
from .closedform import build_closed_form
from .lattice import PartitionGrid, ProductSpec, product_series
from .series import APPROX, Caps, EXACT, Series, SeriesError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


def _parse_caps(text: str):
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as err:
        raise SeriesError(f"bad caps {text!r}") from err


def _default_jobs(args) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    env = os.environ.get("VPV_LAB_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise SeriesError(f"bad VPV_LAB_JOBS value {env!r}")
    return 1


def _verify_one(entry_id: str, caps, tolerance):
    entry = catalog_mod.get_entry(entry_id)
    report = catalog_mod.verify_identity(entry, caps=caps, tolerance=tolerance)
    return report.to_json()


def _reports_csv(reports) -> str:
    header = "id,caps,mode,verdict,expected,wall_time_s,lhs_terms,rhs_terms"
    lines = [header]
    for r in reports:
        caps = ";".join(str(c) for c in r["caps"])
        lines.append(",".join([r["id"], caps, r["mode"], r["verdict"],
                               r["expected"], f"{r['wall_time_s']:.6f}",
                               str(r["lhs_terms"]), str(r["rhs_terms"])]))
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    entries = catalog_mod.catalog()
    custom = None
    if args.custom:
        with open(args.custom, "r", encoding="utf-8") as handle:
            custom = catalog_mod.entry_from_json(json.load(handle))
        selected = [custom]
    elif args.all:
        selected = [e for e in entries if e.expected == "pass"]
        if args.mode:
            selected = [e for e in selected if e.mode == args.mode]
    else:
        if not args.id:
            print("error: verify needs --id, --all or --custom", file=sys.stderr)
            return EXIT_CONFIG
        known = {e.id: e for e in entries}
        missing = [i for i in args.id if i not in known]
        if missing:
            print(f"error: unknown entry {', '.join(missing)}", file=sys.stderr)
            return EXIT_CONFIG
        selected = [known[i] for i in args.id]
    if not selected:
        print("error: no entries selected", file=sys.stderr)
        return EXIT_CONFIG
    caps = _parse_caps(args.caps) if args.caps else None
    if caps is not None:
        wrong = [e.id for e in selected if len(e.caps) != len(caps)]
        if wrong:
            print(f"error: caps arity does not fit entries {', '.join(wrong)}",
                  file=sys.stderr)
            return EXIT_CONFIG
    jobs = _default_jobs(args)
    if custom is not None:
        report = catalog_mod.verify_identity(custom, caps=caps,
                                             tolerance=args.tolerance)
        reports = [report.to_json()]
    else:
        ids = [e.id for e in selected]
        if jobs > 1 and len(ids) > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
                futures = {i: pool.submit(_verify_one, i, caps, args.tolerance)
                           for i in ids}
                reports = [futures[i].result() for i in ids]
        else:
            reports = [_verify_one(i, caps, args.tolerance) for i in ids]
    reports.sort(key=lambda r: r["id"])
    if args.format == "csv":
        payload = _reports_csv(reports)
    else:
        payload = "\n".join(json.dumps(r, sort_keys=True) for r in reports) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)
    bad = [r for r in reports
           if r["verdict"] != "pass" and r["expected"] == "pass"]
    if args.format == "text":
        for r in reports:
            flag = "PASS" if r["verdict"] == "pass" else "FAIL"
            print(f"{r['id']:16s} {flag} ({r['wall_time_s']:.3f}s)",
                  file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


_GRID_BUILDERS = {}


def _register_grids():
    if _GRID_BUILDERS:
        return

    def spade2(caps):
        return determinants.exact_parts_series(2, 2, caps, ("y", "z"))

    def club2(caps):
        return determinants.exact_parts_series(3, 2, caps, ("y", "z"))

    def beta2(caps):
        return binary_mod.beta2_product_series(caps)

    def binary_b2(caps):
        return binary_mod.unrestricted_b2_series(caps)

    def weighted_814(caps):
        entry = catalog_mod.get_entry("8.14.03")
        return entry.build_lhs(caps)

    _GRID_BUILDERS.update({
        "spade2": spade2, "club2": club2, "beta2": beta2,
        "binary-B2": binary_b2, "weighted-8.14": weighted_814,
    })
    for order in (2, 3, 4, 5):
        key = {2: "8.08", 3: "8.09.03", 4: "8.10.03", 5: "8.12.02"}[order]
        _GRID_BUILDERS[f"vpv-upper-distinct-{order}"] = \
            (lambda caps, key=key: catalog_mod.get_entry(key).build_lhs(caps))


def cmd_grid(args) -> int:
    _register_grids()
    caps = Caps.of(_parse_caps(args.caps)) if args.caps else None
    if args.spec:
        with open(args.spec, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
        spec = ProductSpec.from_json(doc)
        if caps is None:
            print("error: --caps required for a custom spec", file=sys.stderr)
            return EXIT_CONFIG
        series = product_series(spec, caps, args.mode or EXACT)
    else:
        builder = _GRID_BUILDERS.get(args.name or "")
        if builder is None:
            known = ", ".join(sorted(_GRID_BUILDERS))
            print(f"error: unknown grid {args.name!r} (known: {known})",
                  file=sys.stderr)
            return EXIT_CONFIG
        if caps is None:
            caps = Caps.of((8, 8))
        series = builder(caps)
    if len(series.names) > 3:
        print("error: grids support arity <= 3", file=sys.stderr)
        return EXIT_CONFIG
    g = PartitionGrid.from_series(series, caps)
    if args.format == "json":
        payload = json.dumps(g.to_json(), sort_keys=True, indent=2) + "\n"
    else:
        payload = g.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)
    return EXIT_OK


def cmd_expand(args) -> int:
    caps = Caps.of(_parse_caps(args.caps)) if args.caps else None
    mode = args.mode or EXACT
    if args.entry:
        try:
            entry = catalog_mod.get_entry(args.entry)
        except KeyError:
            print(f"error: unknown entry {args.entry!r}", file=sys.stderr)
            return EXIT_CONFIG
        cap_obj = caps or Caps.of(entry.caps)
        series = entry.build_rhs(cap_obj) if args.side == "rhs" \
            else entry.build_lhs(cap_obj)
    elif args.spec:
        with open(args.spec, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
        if caps is None and "caps" in doc:
            caps = Caps.of(doc["caps"])
        if caps is None:
            print("error: no caps given", file=sys.stderr)
            return EXIT_CONFIG
        if "region" in doc.get("lhs", doc):
            spec = ProductSpec.from_json(doc.get("lhs", doc))
            series = product_series(spec, caps, mode)
        else:
            names = tuple(doc["vars"])
            series = build_closed_form(doc["rhs"] if "rhs" in doc else doc,
                                       names, caps, mode)
    else:
        print("error: expand needs --entry or --spec", file=sys.stderr)
        return EXIT_CONFIG
    payload = series.dumps(indent=2 if args.format != "csv" else None) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vpvlab",
        description="Exact-arithmetic vector-partition identity laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="verify catalog identities")
    p_verify.add_argument("--id", action="append", help="entry id (repeatable)")
    p_verify.add_argument("--all", action="store_true",
                          help="verify every gating entry")
    p_verify.add_argument("--custom", help="custom identity JSON document")
    p_verify.add_argument("--caps", help="override caps, e.g. 6,6")
    p_verify.add_argument("--mode", choices=[EXACT, APPROX])
    p_verify.add_argument("--format", choices=["json", "csv", "text"],
                          default="json")
    p_verify.add_argument("--out", help="write reports to a file")
    p_verify.add_argument("--jobs", type=int, default=None)
    p_verify.add_argument("--tolerance", type=float, default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_grid = sub.add_parser("grid", help="emit a partition grid")
    p_grid.add_argument("name", nargs="?", help="built-in grid name")
    p_grid.add_argument("--spec", help="custom ProductSpec JSON file")
    p_grid.add_argument("--caps", help="caps, e.g. 8,8")
    p_grid.add_argument("--mode", choices=[EXACT, APPROX])
    p_grid.add_argument("--format", choices=["json", "csv", "text"],
                        default="csv")
    p_grid.add_argument("--out")
    p_grid.add_argument("--jobs", type=int, default=None)
    p_grid.set_defaults(func=cmd_grid)

    p_expand = sub.add_parser("expand", help="expand a product or closed form")
    p_expand.add_argument("--entry", help="catalog entry id")
    p_expand.add_argument("--side", choices=["lhs", "rhs"], default="lhs")
    p_expand.add_argument("--spec", help="JSON document to expand")
    p_expand.add_argument("--caps")
    p_expand.add_argument("--mode", choices=[EXACT, APPROX])
    p_expand.add_argument("--format", choices=["json", "csv", "text"],
                          default="json")
    p_expand.add_argument("--out")
    p_expand.add_argument("--jobs", type=int, default=None)
    p_expand.set_defaults(func=cmd_expand)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SeriesError, OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
