"""Problem files, report serialization and polygon plots.

Everything exact is written as a string (``"a"`` or ``"a/b"``), never as a
JSON float.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .diffmodule import DiffModule, DiffOperator, companion_module
from .driver import RadiusReport, StageDiagnostics
from .newton import AtLeast, Exact, NewtonPolygon, SlopeMultiset
from .ratfunc import DEFAULT_DEGREE_CAP, ExpressionSyntaxError, PointSpec, parse_expr
from .scalars import INF, format_rat, is_prime, parse_rat

__all__ = [
    "InputError",
    "Problem",
    "dumps_report",
    "format_report_text",
    "load_problem",
    "loads_report",
    "matrix_from_json",
    "matrix_to_json",
    "parse_problem",
    "polygon_svg",
    "report_from_dict",
    "report_to_dict",
]


class InputError(ValueError):
    """Invalid problem file; the message says where."""


@dataclass
class Problem:
    point: PointSpec
    module: Optional[DiffModule] = None
    operator: Optional[DiffOperator] = None
    max_stages: Optional[int] = None
    degree_cap: int = DEFAULT_DEGREE_CAP
    oracle_terms: Optional[int] = None

    def as_module(self) -> DiffModule:
        if self.module is not None:
            return self.module
        return companion_module(self.operator)


def _expr(text, where: str):
    if not isinstance(text, (str, int)):
        raise InputError(f"{where}: expected an expression string, got {text!r}")
    try:
        return parse_expr(str(text))
    except ExpressionSyntaxError as exc:
        raise InputError(f"{where}: {exc}") from exc


def matrix_to_json(G) -> List[List[str]]:
    return [[str(x) for x in row] for row in G]


def matrix_from_json(rows, where: str = "matrix") -> List[list]:
    if not isinstance(rows, list) or not rows:
        raise InputError(f"{where}: expected a nonempty list of rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(rows):
            raise InputError(f"{where}[{i}]: matrix must be square")
        out.append([_expr(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return out


def _positive_int(data, key, default=None, minimum=0):
    if key not in data:
        return default
    val = data[key]
    if not isinstance(val, int) or isinstance(val, bool) or val < minimum:
        raise InputError(f"{key}: expected an integer >= {minimum}, got {val!r}")
    return val


def parse_problem(data: Dict[str, Any]) -> Problem:
    if not isinstance(data, dict):
        raise InputError("problem file must hold a JSON object")
    p = data.get("p")
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise InputError(f"p: expected a prime, got {p!r}")
    if "log_radius" not in data:
        raise InputError("log_radius: missing")
    try:
        t = parse_rat(data["log_radius"])
    except ValueError as exc:
        raise InputError(f"log_radius: {exc}") from exc
    has_module = "module" in data
    has_operator = "operator" in data
    if has_module == has_operator:
        raise InputError("exactly one of 'module' and 'operator' is required")
    problem = Problem(PointSpec(p, t))
    if has_module:
        matrix = (data["module"] or {}).get("matrix")
        problem.module = DiffModule(matrix_from_json(matrix, "module.matrix"))
    else:
        coeffs = (data["operator"] or {}).get("coeffs")
        if not isinstance(coeffs, list) or not coeffs:
            raise InputError("operator.coeffs: expected a nonempty list")
        problem.operator = DiffOperator(
            [_expr(x, f"operator.coeffs[{i}]") for i, x in enumerate(coeffs)])
    problem.max_stages = _positive_int(data, "max_stages")
    problem.degree_cap = _positive_int(data, "degree_cap", DEFAULT_DEGREE_CAP, 1)
    problem.oracle_terms = _positive_int(data, "oracle_terms", None, 8)
    return problem


def load_problem(path) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    return parse_problem(data)


# -- reports -------------------------------------------------------------------


def _verdict_to_dict(v, stage=None) -> dict:
    if isinstance(v, Exact):
        out = {"exact": format_rat(v.value)}
        if stage is not None:
            out["stage"] = stage
        return out
    return {"at_least": format_rat(v.bound)}


def _verdict_from_dict(d):
    if "exact" in d:
        return Exact(parse_rat(d["exact"]))
    return AtLeast(parse_rat(d["at_least"]))


def _multiset_to_list(s: SlopeMultiset) -> list:
    return [_verdict_to_dict(v) for v in s]


def _vertices_to_json(vertices) -> list:
    return [[x, format_rat(y)] for x, y in vertices]


def report_to_dict(report: RadiusReport) -> dict:
    interval = report.uncertainty_interval()
    return {
        "p": report.point.p,
        "log_radius": format_rat(report.point.t),
        "rank": report.rank,
        "verdicts": [_verdict_to_dict(v, s)
                     for v, s in zip(report.verdicts, report.stage_found)],
        "complete": report.complete,
        "stages_used": report.stages_used,
        "max_stages": report.max_stages,
        "uncertainty": None if interval is None else
        [format_rat(interval[0]), format_rat(interval[1])],
        "stages": [{
            "stage": s.stage,
            "rank": s.rank,
            "log_radius": format_rat(s.point.t),
            "cyclic": {
                "strategy": s.cyclic_strategy,
                "index": s.cyclic_index,
                "constant": None if s.cyclic_constant is None
                else format_rat(s.cyclic_constant),
            },
            "vertices": _vertices_to_json(s.vertices),
            "local": _multiset_to_list(s.local),
            "pulled_back": _multiset_to_list(s.pulled_back),
        } for s in report.stages],
        "error": report.error,
    }


def report_from_dict(d: dict) -> RadiusReport:
    p = d["p"]
    pt = PointSpec(p, parse_rat(d["log_radius"]))
    stages = []
    for s in d["stages"]:
        spt = PointSpec(p, parse_rat(s["log_radius"]))
        const = s["cyclic"]["constant"]
        stages.append(StageDiagnostics(
            s["stage"], s["rank"], spt, s["cyclic"]["strategy"], s["cyclic"]["index"],
            None if const is None else parse_rat(const),
            tuple((x, parse_rat(y)) for x, y in s["vertices"]),
            SlopeMultiset(spt, [_verdict_from_dict(v) for v in s["local"]]),
            SlopeMultiset(pt, [_verdict_from_dict(v) for v in s["pulled_back"]]),
        ))
    return RadiusReport(
        pt, d["rank"],
        tuple(_verdict_from_dict(v) for v in d["verdicts"]),
        tuple(v.get("stage") for v in d["verdicts"]),
        d["stages_used"], d["max_stages"], stages, d.get("error"))


def dumps_report(report: RadiusReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"


def loads_report(text: str) -> RadiusReport:
    return report_from_dict(json.loads(text))


def format_report_text(report: RadiusReport) -> str:
    pt = report.point
    lines = [f"p = {pt.p}, log_p(rho) = {format_rat(pt.t)}, rank {report.rank}"]
    for i, (v, s) in enumerate(zip(report.verdicts, report.stage_found), 1):
        if isinstance(v, Exact):
            lines.append(f"  log_p R_{i} = {format_rat(v.value)}  (stage {s})")
        else:
            lines.append(f"  log_p R_{i} >= {format_rat(v.bound)}")
    interval = report.uncertainty_interval()
    if interval is not None:
        lo, hi = interval
        lines.append(f"  censored radii lie in [{format_rat(lo)}, {format_rat(hi)}] "
                     f"after {report.stages_used} push-forward(s)")
    if report.error:
        lines.append(f"  stopped early: {report.error}")
    return "\n".join(lines) + "\n"


# -- plots ---------------------------------------------------------------------


def polygon_svg(np: NewtonPolygon, pt: PointSpec, width: int = 480,
                height: int = 360) -> str:
    """Render the points, lower hull and cutoff line of a Newton polygon."""
    finite = [(x, y) for x, y in np.points if y is not INF]
    cutoff = pt.cutoff
    r = max(np.rank, 1)
    ys = [y for _, y in finite] + [Fraction(0), cutoff * r]
    lo, hi = min(ys), max(ys)
    if lo == hi:
        lo, hi = lo - 1, hi + 1
    margin = 40

    def sx(x):
        return margin + float(x) * (width - 2 * margin) / r

    def sy(y):
        return height - margin - float(y - lo) * (height - 2 * margin) / float(hi - lo)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
             f'height="{height}" viewBox="0 0 {width} {height}">',
             '<rect width="100%" height="100%" fill="white"/>']
    hull = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in np.vertices)
    parts.append(f'<polyline points="{hull}" fill="none" stroke="black" stroke-width="2"/>')
    parts.append(f'<line x1="{sx(0):.2f}" y1="{sy(0):.2f}" x2="{sx(r):.2f}" '
                 f'y2="{sy(cutoff * r):.2f}" stroke="red" stroke-dasharray="6,4"/>')
    parts.append(f'<text x="{sx(r) - 4:.2f}" y="{sy(cutoff * r) - 6:.2f}" '
                 f'text-anchor="end" font-size="12" fill="red">slope C = '
                 f'{format_rat(cutoff)}</text>')
    for x, y in finite:
        parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="4" fill="steelblue"/>')
        parts.append(f'<text x="{sx(x) + 6:.2f}" y="{sy(y) - 6:.2f}" font-size="11">'
                     f'({x}, {format_rat(y)})</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
