"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .catalog import Catalog, CatalogError, GroupSpec, builtin_catalog, parse_catalog, parse_recipe
from .census import census, classify_small
from .constructors import ConstructionError, resolve_group
from .group import DEFAULT_MAX_ORDER, GroupTooLarge
from .lattice import DEFAULT_MAX_SUBGROUPS, LatticeTooLarge
from .structure import center, derived_length, nilpotency_class
from .verify import FAMILY_CASES, family_csv, frobenius_family, parse_grid, run_checks

__all__ = ["main", "TABLE_FIELDS"]

TABLE_FIELDS = (
    "name",
    "order",
    "d",
    "subgroup_classes",
    "subgroups",
    "derived_length",
    "nilpotency_class",
    "center_order",
    "bucket",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # raise instead of exiting so main() owns the exit code
        raise UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="selfnorm", description="Census of non-self-normalizing subgroup classes.")
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER, help="cap on group order")
    p.add_argument("--max-subgroups", type=int, default=DEFAULT_MAX_SUBGROUPS, help="cap on subgroup count")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("census", help="census of one group")
    c.add_argument("ref", nargs="*", help="preset/short name (A5, C2xD4) or recipe tokens")
    c.add_argument("--file", help="catalog file")
    c.add_argument("--name", help="group name inside --file")

    v = sub.add_parser("verify", help="run verification checks")
    v.add_argument("--catalog", help="catalog file (default: builtin)")
    v.add_argument("--checks", default="all", help="comma-separated check ids or 'all'")
    v.add_argument("--format", choices=("csv", "json"), default="csv")

    f = sub.add_parser("family", help="closed-form Frobenius counts against brute force")
    f.add_argument("lemma", choices=("frob1", *FAMILY_CASES))
    f.add_argument("--grid", default="p=2..13,q=2..7", help="e.g. p=5..13,q=2..5,n=1..3,m=1..2")

    t = sub.add_parser("table", help="census table of a catalog")
    t.add_argument("--catalog", help="catalog file (default: builtin)")
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    return p


def _load_catalog(path: str | None) -> Catalog:
    if path is None:
        return builtin_catalog()
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_catalog(text, provenance=path)


def _resolve_ref(args) -> tuple[str, GroupSpec | None]:
    if args.file is not None:
        if args.ref:
            raise UsageError("census: give either a group reference or --file/--name, not both")
        if args.name is None:
            raise UsageError("census: --file needs --name")
        cat = _load_catalog(args.file)
        try:
            return args.name, cat.get(args.name)
        except KeyError:
            raise UsageError(f"census: no group named {args.name!r} in {args.file}") from None
    if not args.ref:
        raise UsageError("census: missing group reference")
    if len(args.ref) == 1 and "=" not in args.ref[0]:
        return args.ref[0], None
    recipe, params = parse_recipe(list(args.ref))
    label = " ".join(args.ref)
    return label, GroupSpec(name="cli", recipe=recipe, params=params)


def _cmd_census(args, out, err) -> int:
    label, spec = _resolve_ref(args)
    G = spec.build(args.max_order) if spec is not None else resolve_group(label, args.max_order)
    rep = census(G, args.max_subgroups)
    out.write(f"order {G.order}, D = {rep.d_value}\n")
    out.write("order class_size normalizer_order\n")
    for r in rep.class_records:
        out.write(f"{r.order} {r.class_size} {r.normalizer_order}\n")
    return 0


def _cmd_verify(args, out, err) -> int:
    cat = _load_catalog(args.catalog)
    try:
        report = run_checks(cat, args.checks, args.max_order, args.max_subgroups)
    except KeyError as exc:
        raise UsageError(f"verify: {exc.args[0]}") from None
    out.write(report.to_csv() if args.format == "csv" else report.to_json())
    print(f"{report.passed} passed, {report.failed} failed", file=err)
    return 0 if report.failed == 0 else 1


def _cmd_family(args, out, err) -> int:
    try:
        grid = parse_grid(args.grid)
    except ValueError as exc:
        raise UsageError(f"family: bad grid: {exc}") from None
    rows = frobenius_family(args.lemma, grid, args.max_order, args.max_subgroups)
    out.write(family_csv(rows))
    return 0 if all(r.status == "pass" for r in rows) else 1


def table_rows(cat: Catalog, max_order: int = DEFAULT_MAX_ORDER, max_subgroups: int = DEFAULT_MAX_SUBGROUPS) -> list[dict]:
    rows = []
    for spec in cat:
        G = spec.build(max_order)
        rep = census(G, max_subgroups)
        rows.append(
            {
                "name": spec.name,
                "order": G.order,
                "d": rep.d_value,
                "subgroup_classes": rep.total_subgroup_classes,
                "subgroups": rep.total_subgroups,
                "derived_length": derived_length(G),
                "nilpotency_class": nilpotency_class(G),
                "center_order": center(G).order,
                "bucket": classify_small(G).bucket,
            }
        )
    return rows


def _cmd_table(args, out, err) -> int:
    rows = table_rows(_load_catalog(args.catalog), args.max_order, args.max_subgroups)
    if args.format == "json":
        out.write(json.dumps({"fields": list(TABLE_FIELDS), "rows": rows}, indent=2) + "\n")
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=TABLE_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: "" if v is None else v for k, v in r.items()})
        out.write(buf.getvalue())
    return 0


COMMANDS = {"census": _cmd_census, "verify": _cmd_verify, "family": _cmd_family, "table": _cmd_table}


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out, err)
    except UsageError as exc:
        print(exc, file=err)
        return 2
    except CatalogError as exc:
        print(f"catalog error: {exc}", file=err)
        return 2
    except (ConstructionError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (GroupTooLarge, LatticeTooLarge) as exc:
        print(f"cap exceeded: {exc}", file=err)
        return 2


if __name__ == "__main__":
    sys.exit(main())
