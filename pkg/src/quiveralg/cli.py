"""Command line interface: ``quiveralg check|screen|enumerate|sequence``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra import AlgebraError, PresentedAlgebra
from .modules import omega_orbit
from .quiver import FILTERS, EnumerationStats, ResourceLimitExceeded, canonical_form, enumerate_biserial_quivers
from .screening import run_pipeline
from .sequence import SequenceError, exact_sequence_data
from .textformat import FormatError, InputDocument, load, render_quiver

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _load_algebra(path: str, degree_bound: int | None) -> tuple[InputDocument, PresentedAlgebra]:
    doc = load(path)
    if not doc.has_relations:
        raise AlgebraError("the file has no relations; 'check' and 'sequence' need a presented algebra")
    return doc, doc.build(degree_bound=degree_bound)


def _element_json(A: PresentedAlgebra, x) -> dict:
    q = A.quiver
    return {"text": A.describe(x),
            "terms": [[[q.arrow_label(a) for a in w], A.F.to_json(c)] for w, c in x.sorted_terms()]}


# ---- check -------------------------------------------------------------------

def cmd_check(args) -> int:
    doc, A = _load_algebra(args.file, args.degree_bound)
    q = A.quiver
    max_period = args.max_period or doc.options.get("max_period", 8)
    form = A.symmetrizing_form()
    periods = []
    for i in range(q.n_vertices):
        orbit = omega_orbit(A, i, max_period)
        periods.append({"vertex": q.vertex_label(i), "period": orbit.period,
                        "syzygy_dimensions": orbit.dimensions, "note": orbit.reason})
    minimal = A.minimal_relations()
    report = {
        "field": A.field_spec.describe(),
        "dimension": A.dimension,
        "nilpotency_degree": A.nilpotency_degree,
        "vertices": list(q.vertex_names),
        "cartan": A.cartan_matrix(),
        "symmetric": form is not None,
        "symmetrizing_form_support": [A.describe_word(w, i) for i, _, w in form.support()] if form else [],
        "periods": periods,
        "minimal_relations": [
            {"from": q.vertex_label(i), "to": q.vertex_label(j), "relations": [_element_json(A, r) for r in rels]}
            for (i, j), rels in sorted(minimal.items())],
    }
    if args.json:
        print(_dump(report))
        return EXIT_OK
    print(f"field: {report['field']}  (exact arithmetic)")
    print(f"dimension: {A.dimension}   nilpotency degree: {A.nilpotency_degree}")
    print("cartan matrix (row i = dimension vector of P_i):")
    width = max(len(v) for v in q.vertex_names)
    for i, row in enumerate(report["cartan"]):
        print(f"  {q.vertex_label(i):>{width}}: " + " ".join(f"{c:3d}" for c in row))
    print("symmetric: " + ("yes" if form else "no")
          + (f" (functional on {', '.join(report['symmetrizing_form_support'])})" if form else ""))
    for p in periods:
        shown = p["period"] if p["period"] is not None else f"none up to {max_period}"
        extra = f"  [{p['note']}]" if p["note"] else ""
        print(f"period(S_{p['vertex']}) = {shown}   syzygy dims {p['syzygy_dimensions']}{extra}")
    print("minimal relations:")
    for block in report["minimal_relations"]:
        for r in block["relations"]:
            print(f"  {block['from']} -> {block['to']}: {r['text']}")
    return EXIT_OK


# ---- screen ------------------------------------------------------------------

def cmd_screen(args) -> int:
    doc = load(args.file)
    report = run_pipeline(doc, degree_bound=args.degree_bound, max_period=args.max_period)
    if args.json:
        print(report.dumps())
    else:
        print(f"input {report.input_hash[:16]}  field {report.presentation['field']}")
        alg = report.presentation.get("algebra")
        if alg:
            print(f"dimension {alg['dimension']}, cartan {alg['cartan']}")
        for v in report.presentation["quiver_violations"]:
            print(f"note: quiver {v['kind']} at {v['where']} ({v['detail']})")
        for c in report.checks:
            print(f"{c.id:<20} {c.status:<13} {c.anchor}")
            if c.status in ("fail", "inconclusive"):
                print("    witness: " + json.dumps(c.witness, sort_keys=True))
        print("verdict: " + ("obstruction found" if report.any_fail else "no obstruction found"))
    return EXIT_FAIL if report.any_fail else EXIT_OK


# ---- enumerate ---------------------------------------------------------------

def cmd_enumerate(args) -> int:
    filters = [f for f in (args.filters.split(",") if args.filters else []) if f.strip()]
    stats = EnumerationStats()
    quivers = list(enumerate_biserial_quivers(args.vertices, args.max_arrows, [f.strip() for f in filters],
                                              max_candidates=args.max_candidates, stats=stats))
    quivers.sort(key=canonical_form)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for k, q in enumerate(quivers):
            with open(os.path.join(args.out, f"n{args.vertices}_{k:04d}.quiv"), "w", encoding="utf-8") as fh:
                fh.write(render_quiver(q))
    if args.json:
        arr = [{"vertices": list(q.vertex_names),
                "arrows": [[q.arrow_label(a), q.vertex_label(s), q.vertex_label(t)] for a, (s, t) in enumerate(q.arrows)]}
               for q in quivers]
        print(_dump(arr))
        return EXIT_OK
    print(f"{'stage':<24}{'count':>8}")
    print(f"{'generated':<24}{stats.generated:>8}")
    for f in stats.surviving:
        print(f"{'after ' + f:<24}{stats.surviving[f]:>8}")
    print(f"{'surviving':<24}{len(quivers):>8}")
    if args.out:
        print(f"wrote {len(quivers)} files to {args.out}")
    return EXIT_OK


# ---- sequence ----------------------------------------------------------------

def _resolve_vertex(A: PresentedAlgebra, name: str) -> int:
    names = list(A.quiver.vertex_names)
    if name in names:
        return names.index(name)
    raise AlgebraError(f"unknown vertex {name!r} (vertices: {' '.join(names)})")


def cmd_sequence(args) -> int:
    doc, A = _load_algebra(args.file, args.degree_bound)
    q = A.quiver
    i = _resolve_vertex(A, args.vertex)
    data = exact_sequence_data(A, i, max_period=args.max_period or doc.options.get("max_period", 8))
    vec = lambda x: {q.vertex_label(v): int(x[v]) for v in range(q.n_vertices)}
    report = {
        "vertex": q.vertex_label(i),
        "P_plus": [q.vertex_label(v) for v in data.plus_vertices],
        "P_minus": [q.vertex_label(v) for v in data.minus_vertices],
        "d1": [q.arrow_label(a) for a in data.out_arrows],
        "M": [[_element_json(A, x) for x in row] for row in data.matrix],
        "d3": [_element_json(A, x) for x in data.column],
        "arrow_adjustments": {q.arrow_label(a): A.describe(x) for a, x in sorted(data.arrow_adjustment.items())},
        "p": vec(data.p), "p_plus": vec(data.p_plus), "p_minus": vec(data.p_minus),
        "norm_p": sum(data.p), "norm_p_hat": sum(data.p_hat),
        "flags": data.flags, "ranks": data.ranks, "verified": data.ok,
    }
    if args.json:
        print(_dump(report))
        return EXIT_OK
    lab = q.vertex_label(i)
    print(f"0 -> S_{lab} -> P_{lab} -> {' + '.join('P_' + v for v in report['P_minus'])} -> "
          f"{' + '.join('P_' + v for v in report['P_plus'])} -> P_{lab} -> S_{lab} -> 0")
    print("d1 = (" + "  ".join(report["d1"]) + ")")
    print("M =")
    for row in report["M"]:
        print("    [ " + "  |  ".join(x["text"] for x in row) + " ]")
    print("d3 = (" + "; ".join(x["text"] for x in report["d3"]) + ")^T")
    for a, x in report["arrow_adjustments"].items():
        print(f"arrow adjusted: {a} -> {x}")
    for k, v in data.flags.items():
        print(f"  {k:<40} {'yes' if v else 'no'}")
    print(f"p = {report['p']}  p^ = {report['p_plus']}  |p^| = {report['norm_p_hat']} "
          f"{'>' if report['norm_p_hat'] > report['norm_p'] else '<='} |p| = {report['norm_p']}")
    print("verified: " + ("yes" if data.ok else "no"))
    return EXIT_OK


# ---- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quiveralg", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="build the algebra and report dimensions, Cartan data, symmetry and periods")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.add_argument("--degree-bound", type=int)
    c.add_argument("--max-period", type=int)
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("screen", help="run every necessary-condition check")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.add_argument("--degree-bound", type=int)
    s.add_argument("--max-period", type=int)
    s.set_defaults(func=cmd_screen)

    e = sub.add_parser("enumerate", help="enumerate connected biserial quivers up to isomorphism")
    e.add_argument("--vertices", type=int, required=True)
    e.add_argument("--max-arrows", type=int)
    e.add_argument("--filters", default="", help=f"comma separated subset of {', '.join(FILTERS)}")
    e.add_argument("--out", help="directory for one .quiv file per surviving quiver")
    e.add_argument("--json", action="store_true", help="print the survivors as a JSON array")
    e.add_argument("--max-candidates", type=int, default=10**6)
    e.set_defaults(func=cmd_enumerate)

    q = sub.add_parser("sequence", help="the four-term projective sequence of a simple of period four")
    q.add_argument("file")
    q.add_argument("--vertex", required=True)
    q.add_argument("--json", action="store_true")
    q.add_argument("--degree-bound", type=int)
    q.add_argument("--max-period", type=int)
    q.set_defaults(func=cmd_sequence)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, AlgebraError, SequenceError, ResourceLimitExceeded, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
