"""Newton polygons of differential operators and Young's comparison.

Heights are ``V_i = gauss_val(g_i) - i/(p-1)`` (``-log_p`` units, with the
``omega**i`` twist); slopes of the lower hull below the cutoff
``C = t - 1/(p-1)`` are exact log-radii.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Sequence, Tuple, Union

from .diffmodule import DiffOperator
from .ratfunc import PointSpec, gauss_val
from .scalars import INF, ExtVal, format_rat

__all__ = [
    "AtLeast",
    "Exact",
    "NewtonPolygon",
    "SlopeMultiset",
    "hull_support_check",
    "lower_hull",
    "polygon_of_operator",
    "polygon_from_points",
    "young_compare",
]


@dataclass(frozen=True)
class Exact:
    """A log-radius known exactly."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    @property
    def sort_key(self):
        return (self.value, 0)

    def __str__(self):
        return format_rat(self.value)


@dataclass(frozen=True)
class AtLeast:
    """A log-radius known only to be ``>= bound``."""

    bound: Fraction

    def __post_init__(self):
        object.__setattr__(self, "bound", Fraction(self.bound))

    @property
    def sort_key(self):
        return (self.bound, 1)

    def __str__(self):
        return f">={format_rat(self.bound)}"


Verdict = Union[Exact, AtLeast]


@dataclass(frozen=True)
class SlopeMultiset:
    """Sorted multiset of verdicts at a point."""

    point: PointSpec
    entries: Tuple[Verdict, ...]

    def __init__(self, point: PointSpec, entries: Iterable[Verdict]):
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "entries",
                           tuple(sorted(entries, key=lambda e: e.sort_key)))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def exact(self) -> List[Fraction]:
        return [e.value for e in self.entries if isinstance(e, Exact)]

    @property
    def censored(self) -> List[Fraction]:
        return [e.bound for e in self.entries if isinstance(e, AtLeast)]

    @property
    def all_exact(self) -> bool:
        return all(isinstance(e, Exact) for e in self.entries)

    def __str__(self):
        return "{" + ", ".join(str(e) for e in self.entries) + "}"


Point = Tuple[int, ExtVal]


@dataclass(frozen=True)
class NewtonPolygon:
    points: Tuple[Point, ...]
    vertices: Tuple[Tuple[int, Fraction], ...]
    slopes: Tuple[ExtVal, ...]

    @property
    def rank(self) -> int:
        return len(self.points) - 1

    def heights(self) -> List[ExtVal]:
        """Partial heights ``h_1..h_r`` (``INF`` past the last finite point)."""
        out = []
        acc = Fraction(0)
        for s in self.slopes:
            acc = acc + s
            out.append(acc)
        return out


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[Point]) -> List[Tuple[int, Fraction]]:
    """Vertices of the lower convex hull of the finite points, by abscissa.

    Collinear interior points are dropped.
    """
    finite = sorted((x, y) for x, y in points if y is not INF)
    hull: List[Tuple[int, Fraction]] = []
    for pt in finite:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def polygon_from_points(points: Sequence[Point]) -> NewtonPolygon:
    points = tuple((int(i), v if v is INF else Fraction(v)) for i, v in points)
    if [i for i, _ in points] != list(range(len(points))):
        raise ValueError("points must be indexed 0..r")
    if points[0][1] is INF:
        raise ValueError("the point at index 0 must be finite")
    vertices = lower_hull(points)
    slopes: List[ExtVal] = []
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        slopes.extend([Fraction(y1 - y0, x1 - x0)] * (x1 - x0))
    slopes.extend([INF] * (len(points) - 1 - vertices[-1][0]))
    return NewtonPolygon(points, tuple(vertices), tuple(slopes))


def polygon_of_operator(L: DiffOperator, pt: PointSpec) -> NewtonPolygon:
    shift = pt.omega_shift
    points: List[Point] = [(0, Fraction(0))]
    for i in range(1, L.order + 1):
        v = gauss_val(L.coefficient(i), pt)
        points.append((i, INF if v is INF else v - i * shift))
    return polygon_from_points(points)


def hull_support_check(points: Sequence[Point]) -> List[ExtVal]:
    """Partial heights ``h_i = sup_s (s*i + min_j (v_j - s*j))``.

    The supremum of this concave piecewise-linear function of ``s`` is
    attained at one of the slopes through two finite points, so it is
    evaluated there; past the last finite point it is ``INF``.
    """
    finite = [(i, v) for i, v in points if v is not INF]
    if not finite:
        raise ValueError("need at least one finite point")
    last = max(i for i, _ in finite)
    candidates = {Fraction(v1 - v0, i1 - i0)
                  for (i0, v0), (i1, v1) in combinations(finite, 2)}
    if not candidates:
        candidates = {Fraction(0)}
    heights: List[ExtVal] = []
    for i in range(1, len(points)):
        if i > last:
            heights.append(INF)
            continue
        heights.append(max(s * i + min(v - s * j for j, v in finite)
                           for s in candidates))
    return heights


def young_compare(np: NewtonPolygon, pt: PointSpec) -> SlopeMultiset:
    """Slopes strictly below the cutoff are exact; the rest only bound it."""
    cutoff = pt.cutoff
    entries: List[Verdict] = []
    for s in np.slopes:
        if s is not INF and s < cutoff:
            entries.append(Exact(s))
        else:
            entries.append(AtLeast(cutoff))
    return SlopeMultiset(pt, entries)
