"""Command-line interface: file I/O, dispatch, and check reports.

Exit codes: 0 all checks pass; 1 structural error (bad file, bad syntax) or a
failed check; 2 precondition or hypothesis unmet.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from fractions import Fraction

from .errors import PreconditionError, StructuralError, SuspensionError
from . import flow as flowmod
from . import ktheory as kt
from . import opalg
from .graph import Graph, Path
from .operators import build_rep
from .quiver import fibre_paths, openness_report
from .report import RunReport, rat_str
from .transform import delay, higher_dual, higher_power, opposite

MAX_DENOMINATOR = 10**6

EXIT_OK = 0
EXIT_STRUCTURAL = 1
EXIT_PRECONDITION = 2


def parse_graph_file(path: str) -> Graph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise StructuralError(f"cannot parse graph file: {exc}") from exc
    try:
        vertices = list(doc["vertices"])
        edges = [(e["id"], e["src"], e["dst"]) for e in doc["edges"]]
    except (KeyError, TypeError) as exc:
        raise StructuralError(f"bad graph document: {exc}") from exc
    if not all(isinstance(v, str) and v for v in vertices):
        raise StructuralError("vertex ids must be nonempty strings")
    if not all(isinstance(x, str) and x for e in edges for x in e):
        raise StructuralError("edge fields must be nonempty strings")
    return Graph(vertices, edges)


def graph_to_json(g: Graph) -> str:
    doc = {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in g.edges],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_rational(s: str) -> Fraction:
    """Parse "m/n" (optional sign); the fraction must be in lowest terms."""
    text = s.strip()
    try:
        if "/" in text:
            num_s, den_s = text.split("/", 1)
            num, den = int(num_s), int(den_s)
        else:
            num, den = int(text), 1
        if den <= 0:
            raise ValueError("denominator must be positive")
    except ValueError as exc:
        raise StructuralError(f"cannot parse rational {s!r}") from exc
    if den > MAX_DENOMINATOR:
        raise PreconditionError(f"denominator exceeds {MAX_DENOMINATOR}")
    if math.gcd(abs(num), den) != 1:
        raise PreconditionError(f"rational {s!r} is not in lowest terms")
    return Fraction(num, den)


def capped_L(L: int) -> int:
    cap = os.environ.get("SUSPEND_MAX_L")
    if cap is not None:
        try:
            L = min(L, int(cap))
        except ValueError as exc:
            raise StructuralError("SUSPEND_MAX_L must be an integer") from exc
    if L < 1:
        raise PreconditionError("truncation length must be >= 1")
    return L


def cmd_transform(args) -> int:
    g = parse_graph_file(args.input)
    op = args.op
    if op == "opposite":
        out = opposite(g)
    elif op.startswith("delay:"):
        out = delay(g, _int_param(op[6:]))
    elif op.startswith("power:"):
        out = higher_power(g, _int_param(op[6:]))
    elif op.startswith("dual:"):
        parts = op[5:].split(",")
        if len(parts) != 2:
            raise StructuralError("dual op needs two parameters p,q")
        out = higher_dual(g, _int_param(parts[0]), _int_param(parts[1]))
    else:
        raise StructuralError(f"unknown op {op!r}")
    text = graph_to_json(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _int_param(s: str) -> int:
    try:
        return int(s)
    except ValueError as exc:
        raise StructuralError(f"bad integer parameter {s!r}") from exc


def cmd_ktheory(args) -> int:
    g = parse_graph_file(args.input)
    l = parse_rational(args.l)
    rep = kt.suspension_K(g, l.numerator, l.denominator)
    lines = [f"L = {rat_str(l)}"]
    for v in sorted(rep.hypothesis_table):
        lines.append(f"HYP {v} {rep.hypothesis_table[v]}")
    lines.append(f"ROUTE {rep.route}")
    for flag in rep.flags:
        lines.append(f"FLAG {flag}")
    lines.append(f"K0 = {rep.k0}")
    lines.append(f"K1 = {rep.k1}")
    if not rep.hypotheses_met:
        if l != 0 and len(g.edges) == len(g.vertices) == 1:
            lines.append("NOTE rotation-algebra regime: single loop at fractional l")
    text = "\n".join(lines)
    if args.json:
        doc = {
            "l": rat_str(l),
            "hypotheses": rep.hypothesis_table,
            "route": rep.route,
            "flags": rep.flags,
            "K0": str(rep.k0),
            "K1": str(rep.k1),
        }
        text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    return EXIT_OK if rep.hypotheses_met else EXIT_PRECONDITION


def _seeded_functions(g: Graph, m: int, seed: int):
    rng = random.Random(seed)
    vvals = {v: Fraction(rng.randint(0, 4), 8) for v in g.vertices}
    a = opalg.vertex_fn_interpolated(g, vvals)
    from .graph import enumerate_paths

    if m >= 1:
        wvals = {w.edge_ids: Fraction(rng.randint(0, 4), 8) for w in enumerate_paths(g, m)}
    else:
        wvals = {v: Fraction(rng.randint(0, 4), 8) for v in g.vertices}
    xi = opalg.edge_fn_interpolated(g, m, wvals)
    return a, xi


def cmd_verify(args) -> int:
    suites = {"tck", "jmath", "limits", "eta", "kappa", "morita", "flow", "all"}
    if args.suite not in suites:
        raise StructuralError(f"unknown suite {args.suite!r}")
    g = parse_graph_file(args.input)
    L = capped_L(args.L)
    l = parse_rational(args.l)
    m, n = l.numerator, l.denominator
    if m < 1:
        raise PreconditionError("verify suites need a positive l")
    rng = random.Random(args.seed)
    out = RunReport()
    run = lambda name: args.suite in (name, "all")  # noqa: E731
    if run("tck"):
        rep = build_rep(g, L)
        out.extend(opalg.check_tck(rep, "CuntzKrieger", rng))
    if run("jmath"):
        for p, q in ((1, 2), (1, 3), (2, 3)):
            out.extend(opalg.jmath(g, p, q, min(L, 3)).report)
    if run("limits"):
        a, xi = _seeded_functions(g, m, args.seed)
        out.extend(opalg.limit_formulas(g, m, min(L, 4), a, xi, K=6).report)
    if run("eta"):
        out.extend(opalg.eta_generators(g, m, min(L, 4)).report)
    if run("kappa"):
        a, xi = _seeded_functions(g, m, args.seed)
        for t in (Fraction(0), Fraction(1, 3), Fraction(1)):
            out.extend(opalg.kappa_eval(g, m, min(L, 4), a, xi, t).report)
    if run("morita"):
        if math.gcd(m, n) != 1:
            raise PreconditionError("morita suite needs gcd(m,n) = 1")
        out.extend(opalg.morita_combinatorics(g, m, n, min(L, 4)))
    if run("flow"):
        out.extend(flowmod.lattice_decomposition_check(g, m, n, min(L, 5)))
    print(out.to_json() if args.json else out.to_text())
    return EXIT_OK if out.ok else EXIT_STRUCTURAL


def cmd_flow(args) -> int:
    g = parse_graph_file(args.input)
    ids = tuple(x for x in args.start.split(",") if x)
    if not ids:
        raise StructuralError("empty start prefix")
    prefix = Path(g, ids)
    p = flowmod.make_flow_point(prefix, parse_rational(args.t))
    step = parse_rational(args.step)
    if step < 0:
        raise PreconditionError("step must be >= 0")
    for line in flowmod.orbit_lines(p, step, args.count):
        print(line)
    return EXIT_OK


def cmd_quiver(args) -> int:
    g = parse_graph_file(args.input)
    lines = []
    if args.openness:
        rep = openness_report(g)
        for eid in sorted(rep["edges"]):
            rec = rep["edges"][eid]
            lines.append(f"OPEN {eid} s_open={rec.s_open} r_open={rec.r_open}")
        lines.append(f"OPEN_ALL s={rep['s_open_everywhere']} r={rep['r_open_everywhere']}")
    else:
        t = parse_rational(args.t)
        paths = fibre_paths(g, args.m, t, args.n)
        lines.append(f"FIBRE m={args.m} t={rat_str(t % 1)} n={args.n} count={len(paths)}")
        for qp in paths:
            if qp.edges:
                words = ["".join(f"({w})" for w in e.word.edge_ids) for e in qp.edges]
                lines.append("PATH " + " ".join(words))
            else:
                lines.append(f"VERTEX {qp.anchor}")
    print("\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="suspend", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="graph-to-graph constructions")
    t.add_argument("input")
    t.add_argument("--op", required=True, help="opposite | delay:n | dual:p,q | power:m")
    t.add_argument("-o", "--output")
    t.set_defaults(fn=cmd_transform)

    k = sub.add_parser("ktheory", help="K-theory of the suspension algebra")
    k.add_argument("input")
    k.add_argument("--l", default="1", help='parameter "m/n" (optional sign)')
    k.add_argument("--json", action="store_true")
    k.set_defaults(fn=cmd_ktheory)

    v = sub.add_parser("verify", help="operator-identity verification suites")
    v.add_argument("input")
    v.add_argument("--suite", default="all")
    v.add_argument("--L", type=int, default=4)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--l", default="1/2", help="parameter for the l-dependent suites")
    v.add_argument("--json", action="store_true")
    v.set_defaults(fn=cmd_verify)

    f = sub.add_parser("flow", help="orbit traces of the suspension flow")
    f.add_argument("input")
    f.add_argument("--start", required=True, help="comma-separated edge ids")
    f.add_argument("--t", default="0")
    f.add_argument("--step", default="1/2")
    f.add_argument("--count", type=int, default=4)
    f.set_defaults(fn=cmd_flow)

    q = sub.add_parser("quiver", help="fibre enumeration and openness report")
    q.add_argument("input")
    q.add_argument("--m", type=int, default=1)
    q.add_argument("--t", default="1/3")
    q.add_argument("--n", type=int, default=1)
    q.add_argument("--openness", action="store_true")
    q.set_defaults(fn=cmd_quiver)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.fn(args)
    except StructuralError as exc:
        print(f"ERROR structural: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL
    except PreconditionError as exc:
        print(f"ERROR precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SuspensionError as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL


if __name__ == "__main__":
    sys.exit(main())
