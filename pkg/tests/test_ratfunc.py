from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padic_radii.ratfunc import (INF, DegreeCapExceeded, ExpressionSyntaxError, PointSpec,
                                 Poly, RatFunc, T, degree_cap, derivative, gauss_val,
                                 gauss_val_poly, parse_expr)

small = st.fractions(min_value=-20, max_value=20, max_denominator=16)
polys = st.lists(small, min_size=1, max_size=5).map(Poly)
nonzero_polys = polys.filter(lambda f: not f.is_zero())
ratfuncs = st.builds(RatFunc, polys, nonzero_polys)
points = st.builds(PointSpec, st.sampled_from([2, 3, 5]),
                   st.fractions(min_value=-2, max_value=2, max_denominator=6))


def brute_gauss_val(f: Poly, pt: PointSpec):
    """|f|_rho = max |a_i| rho^i, compared through exact exponents of p."""
    from padic_radii.scalars import vp
    vals = [vp(a, pt.p) - i * pt.t for i, a in enumerate(f.coeffs) if a != 0]
    return min(vals) if vals else INF


def test_poly_arith_examples():
    assert Poly([-1, 0, 1]).gcd(Poly([-1, 1])) == Poly([-1, 1])
    assert (Poly([1, 0, 1]) * Poly([])).is_zero()
    q, r = Poly([0, 0, 0, 1]).divrem(Poly([0, 0, 1]))
    assert q == Poly([0, 1]) and r.is_zero()
    with pytest.raises(ZeroDivisionError):
        Poly([1]).divrem(Poly([]))


def test_gcd_is_monic():
    g = Poly([2, 2]).gcd(Poly([4, 0, -4]))
    assert g.leading() == 1 and g == Poly([1, 1])


def test_derivative_examples():
    assert derivative(T**3) == 3 * T**2
    assert derivative(1 / T) == -1 / T**2
    assert derivative(RatFunc(5)).is_zero()


def test_canonical_form():
    f = RatFunc(Poly([-2, 0, 2]), Poly([-4, 4]))
    assert f.den == Poly([1]) and f.num == Poly([Fraction(1, 2), Fraction(1, 2)])
    g = RatFunc(Poly([1]), Poly([0, 3]))
    assert g.den.leading() == 1
    assert RatFunc(Poly([1, 1]), Poly([2, 2])) == RatFunc(Fraction(1, 2))


def test_gauss_val_examples():
    f = Poly([8, 2, 1])
    assert gauss_val_poly(f, PointSpec(2, 0)) == 0
    # |f|_2 = max(1/8, 1/2 * 2, 4) = 4
    assert gauss_val_poly(f, PointSpec(2, 1)) == -2
    assert gauss_val_poly(Poly([]), PointSpec(2, 0)) is INF
    assert gauss_val(1 / T, PointSpec(2, 1)) == 1
    assert gauss_val(parse_expr("(2*T)/(T+4)"), PointSpec(2, 0)) == 1
    assert gauss_val(RatFunc(7), PointSpec(7, Fraction(3, 5))) == 1


def test_gauss_val_of_variable_is_minus_t():
    for t in (Fraction(1), Fraction(-3, 2), Fraction(5, 7)):
        assert gauss_val(T, PointSpec(3, t)) == -t


@given(polys, points)
def test_gauss_val_poly_matches_definition(f, pt):
    assert gauss_val_poly(f, pt) == brute_gauss_val(f, pt)


@given(ratfuncs, ratfuncs, points)
def test_gauss_multiplicative(f, g, pt):
    assert gauss_val(f * g, pt) == gauss_val(f, pt) + gauss_val(g, pt)


@given(ratfuncs, ratfuncs, points)
def test_gauss_ultrametric(f, g, pt):
    assert gauss_val(f + g, pt) >= min(gauss_val(f, pt), gauss_val(g, pt))


@given(nonzero_polys, points)
def test_derivative_bound(f, pt):
    df = RatFunc(f).derivative()
    assert gauss_val(df, pt) >= gauss_val(RatFunc(f), pt) + pt.t


@given(polys, nonzero_polys, nonzero_polys, points)
def test_gauss_val_independent_of_representative(n, d, h, pt):
    # the unreduced pair (n*h, d*h) must give the same valuation as (n, d)
    unreduced = gauss_val_poly(n * h, pt)
    unreduced = unreduced if unreduced is INF else unreduced - gauss_val_poly(d * h, pt)
    assert unreduced == gauss_val(RatFunc(n, d), pt)


def test_point_spec_derived_quantities():
    pt = PointSpec(2, 0)
    assert pt.omega_shift == 1 and pt.cutoff == -1 and pt.junk == -2
    pt = PointSpec(3, Fraction(1, 3))
    assert pt.cutoff == Fraction(1, 3) - Fraction(1, 2)
    assert pt.junk == 1 - Fraction(3, 2)
    assert pt.pushed() == PointSpec(3, 1)
    with pytest.raises(ValueError):
        PointSpec(4, 0)


@pytest.mark.parametrize("text, expected", [
    ("T^2 - 1", T**2 - 1),
    ("3/4", RatFunc(Fraction(3, 4))),
    ("-1/2*1/T", RatFunc(Fraction(-1, 2)) / T),
    ("(T+1)^3/(T-1)", (T + 1)**3 / (T - 1)),
    ("2*(T - 3/2)", 2 * T - 3),
    ("-T", -T),
])
def test_parse_expr(text, expected):
    assert parse_expr(text) == expected


@pytest.mark.parametrize("text, col", [("T+*2", 2), ("(T+1", 4), ("T^", 2), ("2x", 1),
                                       ("1/(T-T)", 1)])
def test_parse_errors_carry_position(text, col):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expr(text)
    assert info.value.position == col


@given(ratfuncs)
def test_string_roundtrip(f):
    assert parse_expr(str(f)) == f


def test_degree_cap_aborts():
    with degree_cap(10):
        with pytest.raises(DegreeCapExceeded):
            (T + 1) ** 11
        assert ((T + 1) ** 10).degree == 10
