"""Command-line interface.

    padic-radii radii --input F [--max-stages K] [--format json|text] [--svg out.svg]
    padic-radii pushforward --input F
    padic-radii polygon --input F [--svg out.svg]
    padic-radii oracle --input F --terms N

Exit codes: 0 success (for ``radii``: every radius exact), 1 input error,
2 some radius is still only bounded below.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .diffmodule import find_cyclic
from .driver import DEFAULT_MAX_STAGES, compute_radii
from .frobenius import pushforward
from .io import (InputError, dumps_report, format_report_text, load_problem,
                 matrix_to_json, polygon_svg)
from .newton import polygon_of_operator, young_compare
from .oracle import estimate_lambda1
from .ratfunc import DegreeCapExceeded, degree_cap
from .scalars import format_rat

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CENSORED = 2

logger = logging.getLogger("padic_radii")


def _write(text: str, path) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _operator_of(problem):
    if problem.operator is not None:
        return problem.operator, None
    choice = find_cyclic(problem.module)
    return choice.operator, choice


def cmd_radii(args) -> int:
    problem = load_problem(args.input)
    stages = args.max_stages
    if stages is None:
        stages = problem.max_stages if problem.max_stages is not None else DEFAULT_MAX_STAGES
    report = compute_radii(problem.as_module(), problem.point, stages,
                           cap=problem.degree_cap)
    text = dumps_report(report) if args.format == "json" else format_report_text(report)
    _write(text, args.output)
    if args.svg:
        first = report.stages[0]
        with degree_cap(problem.degree_cap):
            L, _ = _operator_of(problem)
            np = polygon_of_operator(L, first.point)
        _write(polygon_svg(np, first.point), args.svg)
    return EXIT_OK if report.complete else EXIT_CENSORED


def cmd_pushforward(args) -> int:
    problem = load_problem(args.input)
    with degree_cap(problem.degree_cap):
        pushed, pt = pushforward(problem.as_module(), problem.point)
    _write(_dump({
        "p": pt.p,
        "log_radius": format_rat(pt.t),
        "rank": pushed.rank,
        "module": {"matrix": matrix_to_json(pushed.G)},
    }), args.output)
    return EXIT_OK


def cmd_polygon(args) -> int:
    problem = load_problem(args.input)
    pt = problem.point
    with degree_cap(problem.degree_cap):
        L, choice = _operator_of(problem)
        np = polygon_of_operator(L, pt)
    young = young_compare(np, pt)
    out = {
        "p": pt.p,
        "log_radius": format_rat(pt.t),
        "points": [[i, format_rat(v)] for i, v in np.points],
        "vertices": [[x, format_rat(y)] for x, y in np.vertices],
        "slopes": [format_rat(s) for s in np.slopes],
        "cutoff": format_rat(pt.cutoff),
        "young": [str(v) for v in young],
    }
    if choice is not None:
        out["cyclic"] = {"strategy": choice.strategy, "index": choice.index,
                         "constant": None if choice.constant is None
                         else format_rat(choice.constant)}
    _write(_dump(out), args.output)
    if args.svg:
        _write(polygon_svg(np, pt), args.svg)
    return EXIT_OK


def cmd_oracle(args) -> int:
    problem = load_problem(args.input)
    terms = args.terms or problem.oracle_terms or 60
    growth = estimate_lambda1(problem.as_module(), problem.point, terms,
                              cap=problem.degree_cap)
    out = {
        "p": growth.point.p,
        "log_radius": format_rat(growth.point.t),
        "terms": growth.terms,
        "estimate": format_rat(growth.estimate),
        "window": [[n, format_rat(r)] for n, r in growth.window],
        "table": [[n, format_rat(w), format_rat(q)] for n, w, q in growth.rows()],
    }
    _write(_dump(out), args.output)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="padic-radii",
        description="Exact spectral radii of p-adic differential modules at the Gauss point.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", "-i", required=True, help="problem file (JSON)")
        p.add_argument("--output", "-o", default=None, help="output file (default stdout)")

    p = sub.add_parser("radii", help="compute all radii")
    common(p)
    p.add_argument("--max-stages", type=int, default=None)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--svg", default=None, help="write the stage-0 Newton polygon")
    p.set_defaults(func=cmd_radii)

    p = sub.add_parser("pushforward", help="print the Frobenius push-forward matrix")
    common(p)
    p.set_defaults(func=cmd_pushforward)

    p = sub.add_parser("polygon", help="Newton polygon of the operator")
    common(p)
    p.add_argument("--svg", default=None)
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("oracle", help="Taylor-growth estimate of the smallest radius")
    common(p)
    p.add_argument("--terms", type=int, default=None)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "max_stages", None) is not None and args.max_stages < 0:
        parser.error("--max-stages must be nonnegative")
    if getattr(args, "terms", None) is not None and args.terms < 8:
        parser.error("--terms must be at least 8")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DegreeCapExceeded as exc:
        print(f"error: {exc}; raise degree_cap in the problem file", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
