"""Command line entry point.

Exit codes: 0 success or verified, 1 verification/certification failure,
2 usage, parse or unsupported-input error.
"""

from __future__ import annotations

import argparse
import sys
from collections import defaultdict
from pathlib import Path
from typing import Optional, Sequence

from .algebra import td_build
from .catalog import catalog_build, catalog_get, catalog_list
from .construct import SHIPPED_RECIPES, StepResult, parse_recipe, run_recipe
from .errata import errata_rows, render_errata
from .errors import DesignError, StepVerificationFailed
from .model import AnyDesign, file_order, parse_design_file, write_design_file
from .trades import BoundCertificate, generic_bound, orbit_trade_scan, validate_certificate
from .verify import full_report

OK, FAILED, USAGE = 0, 1, 2


def _write(path: str, data: bytes) -> None:
    Path(path).write_bytes(data)


def _read_design(path: str) -> AnyDesign:
    return parse_design_file(Path(path).read_bytes())


# --- catalog -------------------------------------------------------------------


def cmd_catalog(args) -> int:
    if args.action == "list":
        print(f"{'id':<14} {'kind':<10} {'v':>4} {'type':<6} {'blocks':>6} {'bound':>5}")
        for e in catalog_list():
            gt = str(e.group_type) if e.group_type else "-"
            bound = "-" if e.claimed_bound is None else e.claimed_bound
            print(f"{e.id:<14} {e.kind:<10} {e.v:>4} {gt:<6} {e.claimed_blocks:>6} {bound:>5}")
        return OK
    if not args.id:
        print(f"catalog {args.action} needs an id", file=sys.stderr)
        return USAGE
    e = catalog_get(args.id)
    if args.action == "show":
        for key, val in e.summary().items():
            print(f"{key}: {val}")
        if e.group_rule:
            print(f"groups: {e.group_rule}")
        for ci, col in enumerate(e.columns):
            note = e.claimed_trade_layout[ci] if ci < len(e.claimed_trade_layout) else ""
            print(f"column {ci}: {' '.join(str(b) for b in col)}" + (f"  [{note}]" if note else ""))
        return OK
    if not args.output:
        print("catalog build needs -o <path>", file=sys.stderr)
        return USAGE
    data = write_design_file(catalog_build(e), comments=[f"{e.id}: {e.provenance}"])
    _write(args.output, data)
    print(f"wrote {args.output}: {e.claimed_blocks} blocks")
    return OK


# --- verify --------------------------------------------------------------------


def cmd_verify(args) -> int:
    d = _read_design(args.path)
    rep = full_report(d, args.kind, label=args.path)
    sys.stdout.write(rep.render_text())
    if args.report:
        _write(args.report, ("\n".join(rep.render_comments()) + "\n").encode())
    return OK if rep.passed else FAILED


# --- trades --------------------------------------------------------------------


def _file_order_certificate(d: AnyDesign, entry_id: str) -> BoundCertificate:
    """Orbit certificate of a catalog entry, renumbered to the file's block order."""
    entry = catalog_get(entry_id)
    developed = catalog_build(entry).blocks
    slots = defaultdict(list)
    for i, b in enumerate(d.blocks):
        slots[b].append(i)
    mapping = []
    for b in developed:
        if not slots[b]:
            raise DesignError(f"file does not contain the blocks of {entry_id}")
        mapping.append(slots[b].pop(0))
    if len(developed) != len(d.blocks):
        raise DesignError(f"file has {len(d.blocks)} blocks, {entry_id} has {len(developed)}")
    cert = orbit_trade_scan(entry).relabel(mapping)
    return BoundCertificate(cert.edges, cert.cycles, len(d.blocks))


def cmd_trades(args) -> int:
    d = _read_design(args.path)
    cert = _file_order_certificate(d, args.catalog_id) if args.catalog_id else generic_bound(d)
    bound = validate_certificate(d, cert)
    n = len(d.blocks)
    half = (n + 1) // 2
    print(f"bound {bound} of {n} blocks; half is {half}")
    print(f"edges {len(cert.edges)}, cycles {len(cert.cycles)}")
    if args.cert_out:
        _write(args.cert_out, ("\n".join(cert.to_lines()) + "\n").encode())
    if args.check_half:
        ok = bound >= half
        print("d >= 1/2 certified" if ok else "d >= 1/2 NOT certified")
        return OK if ok else FAILED
    return OK


# --- construct -----------------------------------------------------------------


def _print_step(res: StepResult) -> None:
    print(res.trail_line())
    for c in res.report.checks:
        print(f"    {c.line()}")


def cmd_construct(args) -> int:
    if args.recipe in SHIPPED_RECIPES and not Path(args.recipe).exists():
        recipe = parse_recipe(SHIPPED_RECIPES[args.recipe])
        label = args.recipe
    else:
        path = Path(args.recipe)
        recipe = parse_recipe(path.read_text(), base_dir=path.parent)
        label = path.name
    try:
        result = run_recipe(recipe, on_step=_print_step, with_certificate=True)
    except StepVerificationFailed as exc:
        print(f"step {exc.step} failed verification; no output written", file=sys.stderr)
        return FAILED
    comments = [f"recipe {label}"] + result.provenance()
    cert = result.certificate
    if cert is not None:
        comments += cert.relabel(file_order(result.output.blocks)).to_lines()
    _write(args.output, write_design_file(result.output, comments=comments))
    print(f"wrote {args.output}: {len(result.output)} blocks")
    return OK


# --- td / errata ---------------------------------------------------------------


def cmd_td(args) -> int:
    g = td_build(args.k, args.n)
    rep = full_report(g, "td", label=f"TD({args.k},{args.n})")
    sys.stdout.write(rep.render_text())
    if not rep.passed:
        return FAILED
    _write(args.output, write_design_file(g))
    return OK


def cmd_errata(args) -> int:
    sys.stdout.write(render_errata(errata_rows(repairs=not args.no_repairs)))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="supersimple", description="Super-simple directed design toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", help="list, show or build the built-in base-block tables")
    c.add_argument("action", choices=["list", "show", "build"])
    c.add_argument("id", nargs="?")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_catalog)

    v = sub.add_parser("verify", help="check a design file")
    v.add_argument("path")
    v.add_argument("--kind", choices=["dd", "dgdd", "td"], required=True)
    v.add_argument("--report", help="write the machine-readable report here")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("trades", help="defining-set lower bound from volume-2 trades")
    t.add_argument("path")
    t.add_argument("--catalog-id", help="use the cyclic structure of this catalog entry")
    t.add_argument("--cert-out")
    t.add_argument("--check-half", action="store_true")
    t.set_defaults(func=cmd_trades)

    r = sub.add_parser("construct", help="run a recipe file or a shipped recipe")
    r.add_argument("recipe")
    r.add_argument("-o", "--output", required=True)
    r.set_defaults(func=cmd_construct)

    d = sub.add_parser("td", help="build a transversal design TD(k, n)")
    d.add_argument("k", type=int)
    d.add_argument("n", type=int)
    d.add_argument("-o", "--output", required=True)
    d.set_defaults(func=cmd_td)

    e = sub.add_parser("errata", help="verify every table and report misprints")
    e.add_argument("--no-repairs", action="store_true")
    e.set_defaults(func=cmd_errata)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (DesignError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
