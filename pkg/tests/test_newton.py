import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padic_radii.diffmodule import DiffOperator
from padic_radii.newton import (AtLeast, Exact, SlopeMultiset, hull_support_check,
                                lower_hull, polygon_from_points, polygon_of_operator,
                                young_compare)
from padic_radii.ratfunc import PointSpec, RatFunc, T
from padic_radii.scalars import INF

values = st.one_of(st.fractions(min_value=-10, max_value=10, max_denominator=6), st.just(INF))


@st.composite
def point_lists(draw):
    n = draw(st.integers(1, 7))
    rest = draw(st.lists(values, min_size=n, max_size=n))
    return [(0, Fraction(0))] + list(enumerate(rest, 1))


def test_polygon_example():
    np = polygon_from_points([(0, Fraction(0)), (1, Fraction(-3)), (2, Fraction(-4))])
    assert np.vertices == ((0, 0), (1, -3), (2, -4))
    assert np.slopes == (-3, -1)


def test_polygon_skips_points_above_hull():
    np = polygon_from_points([(0, Fraction(0)), (1, Fraction(5)), (2, Fraction(-2))])
    assert np.vertices == ((0, 0), (2, -2))
    assert np.slopes == (-1, -1)


def test_infinite_tail_gives_infinite_slopes():
    np = polygon_from_points([(0, Fraction(0)), (1, Fraction(-1)), (2, INF), (3, INF)])
    assert np.slopes == (-1, INF, INF)


def test_lower_hull_collinear_points():
    pts = [(0, Fraction(0)), (1, Fraction(-1)), (2, Fraction(-2))]
    assert lower_hull(pts) == [(0, 0), (2, -2)]


@given(point_lists())
def test_hull_matches_support_function(points):
    if all(v is INF for _, v in points[1:]) and len(points) == 1:
        return
    np = polygon_from_points(points)
    assert np.heights() == hull_support_check(points)


@given(point_lists())
def test_slopes_nondecreasing(points):
    slopes = polygon_from_points(points).slopes
    assert list(slopes) == sorted(slopes)


def test_young_split_at_cutoff():
    pt = PointSpec(2, 0)
    np = polygon_from_points([(0, Fraction(0)), (1, Fraction(-3)), (2, Fraction(-4))])
    s = young_compare(np, pt)
    assert list(s) == [Exact(Fraction(-3)), AtLeast(Fraction(-1))]


def test_polygon_of_operator_point_values():
    # V_i = gauss_val(g_i) - i/(p-1); v_2(1/4) = -2
    L = DiffOperator([RatFunc(Fraction(1, 4)), RatFunc(0), T])
    np = polygon_of_operator(L, PointSpec(2, 0))
    assert np.points == ((0, 0), (1, -3), (2, INF), (3, -3))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_scaling_law(p):
    """Euler-type operators ``g_i = c_i T^-i``: moving t by d moves every slope by d."""
    rng = random.Random(p)
    for _ in range(20):
        r = rng.randint(1, 4)
        c = [Fraction(rng.randint(1, 30), rng.randint(1, 30)) * rng.choice([1, -1])
             for _ in range(r)]
        L = DiffOperator([ci * T ** -(i + 1) for i, ci in enumerate(c)])
        t = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        d = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        a = polygon_of_operator(L, PointSpec(p, t)).slopes
        b = polygon_of_operator(L, PointSpec(p, t + d)).slopes
        assert b == tuple(s if s is INF else s + d for s in a)


def test_multiset_is_sorted_and_split():
    s = SlopeMultiset(PointSpec(2, 0), [AtLeast(Fraction(-1)), Exact(Fraction(-3))])
    assert list(s) == [Exact(Fraction(-3)), AtLeast(Fraction(-1))]
    assert s.exact == [-3] and s.censored == [-1] and not s.all_exact
