"""Command-line entry point.

Subcommands: invariant, homology, ss, relations, ledger, geometry.  Output
is plain text or a line-oriented ``key<TAB>value`` report with a versioned
header (``--format tsv``), which downstream comparisons can byte-compare;
``--format json`` emits the same data as one JSON object.  Exit codes:
0 all requested checks pass, 1 a check failed, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .errors import ColinkError

REPORT_VERSION = "1"


def _read_diagram(path, m, colours=None):
    from .parsing import parse_diagram

    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    table = None
    if colours:
        table = [_colour_value(c) for c in colours.split(",")]
    return parse_diagram(text, m=m, colour_table=table)


def _colour_value(token):
    token = token.strip()
    try:
        return Fraction(token)
    except ValueError:
        return token


class Report:
    def __init__(self, fmt):
        self.fmt = fmt
        self.rows = []

    def add(self, key, value):
        self.rows.append((str(key), value))

    def emit(self, stream=None):
        stream = stream if stream is not None else sys.stdout
        if self.fmt == "tsv":
            stream.write(f"report-version\t{REPORT_VERSION}\n")
            for key, value in self.rows:
                stream.write(f"{key}\t{value}\n")
        elif self.fmt == "json":
            stream.write(json.dumps({k: str(v) for k, v in self.rows}, indent=2))
            stream.write("\n")
        else:
            for key, value in self.rows:
                stream.write(f"{key}: {value}\n")


def cmd_invariant(args):
    from .evaluator import evaluate_link
    from .tangles import writhe_by_label

    diagram = _read_diagram(args.diagram, args.m, args.colours)
    value = evaluate_link(diagram)
    report = Report(args.format)
    report.add("invariant", value.to_text())
    report.add("components", diagram.n_components)
    writhe = writhe_by_label(diagram)
    report.add("writhe", ",".join(f"{k}:{d}" for k, d in sorted(writhe.items())) or "0")
    report.emit()
    return 0


def cmd_homology(args):
    from .cube import build_cube
    from .family import homology_at_point

    diagram = _read_diagram(args.diagram, 2)
    cube = build_cube(diagram)
    tokens = [_colour_value(c) for c in args.colours.split(",")]
    if len(tokens) != diagram.n_components:
        raise ColinkError(
            f"{len(tokens)} colours for {diagram.n_components} components"
        )
    report = Report(args.format)
    if any(isinstance(t, str) for t in tokens):
        from .cube import deformed_differential

        colours = {i: t if isinstance(t, str) else t for i, t in enumerate(tokens)}
        deformed_differential(cube, colours)  # validates D^2 = 0 symbolically
        report.add("symbolic", "true")
        report.add("d_squared", "0")
    else:
        result = homology_at_point(cube, dict(enumerate(tokens)))
        report.add("total", result["total"])
        if result["bigraded"] is not None:
            for (h, q), dim in sorted(result["bigraded"].items()):
                report.add(f"dim[h={h},q={q}]", dim)
        for p, dim in sorted(result["by_parity"].items()):
            report.add(f"dim[parity={p}]", dim)
    report.emit()
    return 0


def cmd_ss(args):
    from .cube import build_cube
    from .family import family_line_analysis

    diagram = _read_diagram(args.diagram, 2)
    cube = build_cube(diagram)
    direction = [Fraction(v) for v in args.direction.split(",")]
    ss = family_line_analysis(cube, direction)
    report = Report(args.format)
    for (h, q), dim in sorted(ss.e1.items()):
        report.add(f"e1[h={h},q={q}]", dim)
    report.add("e1_total", ss.e1_total)
    report.add("betti", ss.betti_total)
    for n, (p, q, d) in enumerate(ss.torsion):
        report.add(f"torsion[{n}]", f"parity={p},q={q},page={d}")
    report.add("page_of_collapse", ss.page_of_collapse)
    report.add("dimension_identity", str(ss.dimension_identity_holds()).lower())
    report.emit()
    return 0 if ss.dimension_identity_holds() else 1


def cmd_relations(args):
    from .evaluator import relation_suite

    names = None if args.suite == "all" else set(args.suite.split(","))
    failures = 0
    applicable = 0
    report = Report(args.format)
    for result in relation_suite(args.m):
        if names and result.relation not in names:
            continue
        if result.witness == "inapplicable":
            continue
        applicable += 1
        if not result.ok:
            failures += 1
            report.add(f"fail[{failures}]", f"{result.relation} {result.detail}")
    report.add("relations_checked", applicable)
    report.add("failures", failures)
    report.emit()
    return 0 if failures == 0 else 1


def cmd_ledger(args):
    from .ledger import CATALOGUE, check_identity, sampled_check

    names = list(CATALOGUE) if args.check == "all" else args.check.split(",")
    report = Report(args.format)
    failures = 0
    for name in names:
        ok, diff = check_identity(name)
        if ok and args.sampled:
            ok = sampled_check(name)
        report.add(name, "pass" if ok else f"FAIL difference {diff}")
        failures += 0 if ok else 1
    report.emit()
    return 0 if failures == 0 else 1


def cmd_geometry(args):
    from .geometry import (
        LatticeConfig,
        available_towers,
        count_points,
        load_tower,
        poincare_Y,
    )

    report = Report(args.format)
    status = 0
    if args.poincare:
        values = [int(x) for x in args.poincare.split(",")]
        m, labels = values[0], values[1:]
        report.add("poincare", poincare_Y(m, labels).to_text())
    if args.towers:
        for name in available_towers():
            tower = load_tower(name)
            ok = tower.matches_claim()
            report.add(name, "pass" if ok else f"FAIL dim {tower.dimension()}")
            status |= 0 if ok else 1
    if args.count:
        values = [int(x) for x in args.count.split(",")]
        p, m, labels = values[0], values[1], tuple(values[2:])
        budget = int(os.environ.get("COLINK_BUDGET", 2_000_000))
        count = count_points(LatticeConfig(p, m, labels, budget))
        expected = poincare_Y(m, labels).evaluate(p)
        report.add("count", count)
        report.add("poincare_at_p", expected)
        status |= 0 if count == expected else 1
    report.emit()
    return status


def build_parser():
    parser = argparse.ArgumentParser(
        prog="colink",
        description="Exact coloured link polynomials, deformed homology, "
        "line-bundle ledger and lattice geometry checks",
    )
    parser.add_argument(
        "--format", choices=("text", "tsv", "json"), default="text"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_inv = sub.add_parser("invariant", help="evaluate a link polynomial")
    p_inv.add_argument("--m", type=int, default=2)
    p_inv.add_argument("--diagram", required=True)
    p_inv.add_argument("--colours", default=None)
    p_inv.set_defaults(func=cmd_invariant)

    p_hom = sub.add_parser("homology", help="deformed homology dimensions")
    p_hom.add_argument("--diagram", required=True)
    p_hom.add_argument("--colours", required=True)
    p_hom.set_defaults(func=cmd_homology)

    p_ss = sub.add_parser("ss", help="line restriction spectral sequence")
    p_ss.add_argument("--diagram", required=True)
    p_ss.add_argument("--direction", required=True)
    p_ss.set_defaults(func=cmd_ss)

    p_rel = sub.add_parser("relations", help="verify the relation suite")
    p_rel.add_argument("--suite", default="all")
    p_rel.add_argument("--m", type=int, default=2)
    p_rel.set_defaults(func=cmd_relations)

    p_led = sub.add_parser("ledger", help="check line-bundle identities")
    p_led.add_argument("--check", default="all")
    p_led.add_argument("--sampled", action="store_true")
    p_led.set_defaults(func=cmd_ledger)

    p_geo = sub.add_parser("geometry", help="towers and point counts")
    p_geo.add_argument("--poincare", default=None)
    p_geo.add_argument("--towers", action="store_true")
    p_geo.add_argument("--count", default=None)
    p_geo.set_defaults(func=cmd_geometry)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ColinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
