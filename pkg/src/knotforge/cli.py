"""Command-line entry point: ``knotforge <subcommand> ...``.

Exit codes: 0 success, 1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .bracket import jones, kauffman_bracket
from .diagram import (
    BraidWord,
    DiagramError,
    PlanarDiagram,
    braid_closure,
    diagram_from_record,
    load_table,
    torus_braid,
    validate,
)
from .geomknots import (
    BilliardSpec,
    GeometryError,
    LissajousSpec,
    billiard_prism_diagram,
    lissajous_diagram,
    spec_from_json,
    write_svg,
)
from .kbsm import annulus_bracket, torus_solid_formula
from .periodicity import CRITERIA, period_report
from .polyring import PolyError
from .skein import alexander, alexander_det, dubrovnik_Fstar, homflypt, jones_from_homflypt, kauffman_F

POLYS = ("jones", "bracket", "homflypt", "kauffman", "dubrovnik", "alexander")


class UsageError(Exception):
    pass


def compute_poly(d: PlanarDiagram, kind: str):
    if kind == "jones":
        # large diagrams go through HOMFLYPT, which prunes by Reidemeister moves
        return jones(d) if d.n <= 16 else jones_from_homflypt(homflypt(d, limit=max(16, d.n)))
    if kind == "bracket":
        return kauffman_bracket(d)
    if kind == "homflypt":
        return homflypt(d)
    if kind == "kauffman":
        return kauffman_F(d)[1]
    if kind == "dubrovnik":
        return dubrovnik_Fstar(d)
    if kind == "alexander":
        return alexander_det(d) if d.num_components == 1 else alexander(d)
    raise UsageError(f"unknown polynomial {kind!r}")


def resolve_knot(spec: str, table_path: str | None = None) -> PlanarDiagram:
    """A knot-table name, or a file holding one JSON record / PD list."""
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
        try:
            obj = json.loads(text)
        except json.JSONDecodeError:
            lines = [ln for ln in text.splitlines() if ln.strip()]
            if len(lines) != 1:
                raise DiagramError(f"{spec}: expected one JSON record") from None
            obj = json.loads(lines[0])
        if isinstance(obj, list):
            obj = {"pd": obj}
        if not isinstance(obj, dict):
            raise DiagramError(f"{spec}: expected a JSON object or PD list")
        return diagram_from_record(obj)
    table = load_table(table_path)
    if spec not in table:
        raise DiagramError(f"unknown knot {spec!r}")
    return diagram_from_record(table[spec])


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


# subcommands ---------------------------------------------------------------------

def cmd_invariant(args) -> int:
    d = resolve_knot(args.knot, args.table)
    p = compute_poly(d, args.poly)
    print(p.dumps() if args.json else str(p))
    return 0


def cmd_period_check(args) -> int:
    d = resolve_knot(args.knot, args.table)
    crit = "all" if args.criteria == "all" else args.criteria.split(",")
    rows = period_report(d, args.rmax, crit)
    if args.json:
        print(json.dumps([row.to_json() for row in rows], indent=1))
        return 0
    print(f"{'r':>3}  {'criterion':<16} {'k':>3}  {'verdict':<11} notes")
    for row in rows:
        k = "" if row.k is None else str(row.k)
        notes = "; ".join(row.notes)
        print(f"{row.r:>3}  {row.criterion:<16} {k:>3}  {row.verdict:<11} {notes}")
    excluded = sorted({row.r for row in rows if row.excluded})
    print("excluded periods: " + (", ".join(map(str, excluded)) if excluded else "none"))
    return 0


def _diagram_output(d: PlanarDiagram, spec_json: dict | None, args) -> int:
    rec = {"pd": d.to_pd(), "crossings": d.n, "components": d.num_components}
    if d.n == 0:
        rec["loops"] = d.loops
    if spec_json is not None:
        rec["spec"] = spec_json
    _emit(json.dumps(rec), args.out)
    return 0


def cmd_generate(args) -> int:
    if args.kind == "torus":
        if args.p is None or args.q is None:
            raise UsageError("torus needs --p and --q")
        d = braid_closure(torus_braid(args.p, args.q))
        return _diagram_output(d, {"type": "torus", "p": args.p, "q": args.q}, args)
    if args.spec:
        with open(args.spec, encoding="utf-8") as fh:
            spec = spec_from_json(json.load(fh))
    elif args.kind == "lissajous":
        if None in (args.nx, args.ny, args.nz):
            raise UsageError("lissajous needs --nx --ny --nz")
        spec = LissajousSpec(args.nx, args.ny, args.nz, Fraction(args.phix), Fraction(args.phiy),
                             Fraction(args.phiz))
    else:
        if args.ngon is None:
            raise UsageError("billiard needs --ngon")
        start = (args.start_edge, args.start_frac) if args.heading is not None else None
        spec = BilliardSpec(args.ngon, args.stride, args.extrema, Fraction(args.phase), start,
                            args.heading)
    d = lissajous_diagram(spec) if isinstance(spec, LissajousSpec) else billiard_prism_diagram(spec)
    if args.svg:
        write_svg(spec, args.svg)
    return _diagram_output(d, spec.to_json(), args)


def _parse_word(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise UsageError(f"bad braid word {text!r}") from None


def cmd_kbsm(args) -> int:
    if args.kind == "torus":
        if args.r is None or args.k is None:
            raise UsageError("kbsm torus needs --r and --k")
        if args.formula:
            elem = torus_solid_formula(args.r, args.k)
        else:
            elem = annulus_bracket(_solid_torus_braid(args.r, args.k))
    else:
        if args.word is None or args.strands is None:
            raise UsageError("kbsm braid needs --word and --strands")
        elem = annulus_bracket(BraidWord(args.strands, _parse_word(args.word)))
    if args.json:
        print(json.dumps(elem.to_json(args.basis)))
    else:
        print(elem.e_text() if args.basis == "e" else str(elem))
    return 0


def _solid_torus_braid(r: int, k: int) -> BraidWord:
    # T(r, k) in the solid torus winds k times around the core
    if k == 1:
        return BraidWord(1, ())
    return torus_braid(k, r)


def _table_row(job):
    rec, kind = job
    name = rec.get("name", "?")
    try:
        d = diagram_from_record(rec)
        p = compute_poly(d, kind)
        return {"name": name, "poly": kind, "value": str(p), "json": p.to_json()}
    except (DiagramError, PolyError, ValueError) as exc:
        return {"name": name, "poly": kind, "error": str(exc)}


def cmd_table(args) -> int:
    records = list(load_table(args.input).values())
    jobs = [(rec, args.poly) for rec in records]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            rows = list(pool.map(_table_row, jobs))
    else:
        rows = [_table_row(j) for j in jobs]
    text = "\n".join(json.dumps(row, sort_keys=True, separators=(",", ":")) for row in rows)
    _emit(text, args.out)
    return 1 if any("error" in row for row in rows) else 0


def cmd_validate(args) -> int:
    if args.pd:
        with open(args.pd, encoding="utf-8") as fh:
            obj = json.load(fh)
        pd = obj["pd"] if isinstance(obj, dict) else obj
        report = validate(pd)
    else:
        report = validate(resolve_knot(args.knot, args.table))
    print(json.dumps(report))
    return 0 if report.get("ok") else 1


# parser ----------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="knotforge", description="Knot polynomials, periodicity criteria, geometric knots.")
    p.add_argument("--table", help="knot table (JSON Lines); default $KNOTFORGE_TABLE or the bundled one")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    inv = sub.add_parser("invariant", help="compute a polynomial invariant")
    inv.add_argument("--knot", required=True, help="table name or JSON file")
    inv.add_argument("--poly", required=True, choices=POLYS)
    inv.add_argument("--json", action="store_true")
    inv.set_defaults(func=cmd_invariant)

    per = sub.add_parser("period-check", help="run periodicity criteria")
    per.add_argument("--knot", required=True)
    per.add_argument("--rmax", type=int, required=True)
    per.add_argument("--criteria", default="all",
                     help="'all' or a comma list of: " + ",".join(CRITERIA))
    per.add_argument("--json", action="store_true")
    per.set_defaults(func=cmd_period_check)

    gen = sub.add_parser("generate", help="diagram from a Lissajous, billiard or torus spec")
    gen.add_argument("kind", choices=("lissajous", "billiard", "torus"))
    gen.add_argument("--spec", help="JSON spec file")
    for name in ("nx", "ny", "nz", "ngon", "stride", "extrema", "p", "q"):
        gen.add_argument(f"--{name}", type=int)
    for name in ("phix", "phiy", "phiz", "phase"):
        gen.add_argument(f"--{name}", default="0", help="rational; phases in units of pi")
    gen.add_argument("--start-edge", type=int, default=0)
    gen.add_argument("--start-frac", type=float, default=0.5)
    gen.add_argument("--heading", type=float, help="initial direction in units of pi")
    gen.add_argument("--out")
    gen.add_argument("--svg")
    gen.set_defaults(func=cmd_generate)

    kb = sub.add_parser("kbsm", help="skein module of the solid torus")
    kb.add_argument("kind", choices=("torus", "braid"))
    kb.add_argument("--r", type=int)
    kb.add_argument("--k", type=int)
    kb.add_argument("--formula", action="store_true", help="closed form instead of the state sum")
    kb.add_argument("--word")
    kb.add_argument("--strands", type=int)
    kb.add_argument("--basis", choices=("z", "e"), default="z")
    kb.add_argument("--json", action="store_true")
    kb.set_defaults(func=cmd_kbsm)

    tb = sub.add_parser("table", help="batch invariants over a knot table")
    tb.add_argument("--in", dest="input", required=True)
    tb.add_argument("--poly", required=True, choices=POLYS)
    tb.add_argument("--out")
    tb.add_argument("--workers", type=int, default=1)
    tb.set_defaults(func=cmd_table)

    va = sub.add_parser("validate", help="check a PD code")
    src = va.add_mutually_exclusive_group(required=True)
    src.add_argument("--pd", help="JSON file with a PD list or {'pd': ...}")
    src.add_argument("--knot")
    va.set_defaults(func=cmd_validate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"knotforge: {exc}", file=sys.stderr)
        return 2
    except (DiagramError, GeometryError, PolyError, ValueError, KeyError, OSError) as exc:
        print(f"knotforge: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
