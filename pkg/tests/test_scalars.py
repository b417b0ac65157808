import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padic_radii.scalars import INF, format_rat, parse_rat, vp, vp_factorial

primes = st.sampled_from([2, 3, 5, 7, 11])
nonzero_rats = st.fractions(max_denominator=10**6).filter(lambda x: x != 0)


def brute_vp_factorial(n, p):
    f = math.factorial(n)
    k = 0
    while f % p == 0:
        f //= p
        k += 1
    return k


def digit_sum(n, p):
    s = 0
    while n:
        s += n % p
        n //= p
    return s


def test_vp_examples():
    assert vp(8, 2) == 3
    assert vp(0, 5) is INF
    assert vp(Fraction(9, 10), 3) == 2
    assert vp(Fraction(9, 10), 5) == -1


def test_vp_factorial_examples():
    assert vp_factorial(4, 2) == 3
    assert vp_factorial(0, 7) == 0
    assert vp_factorial(10, 3) == 4


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_vp_factorial_matches_brute_force(p):
    for n in range(0, 120):
        assert vp_factorial(n, p) == brute_vp_factorial(n, p)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_legendre_digit_sum_formula(p):
    for n in range(0, 10**4 + 1):
        assert (p - 1) * vp_factorial(n, p) == n - digit_sum(n, p)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_vp_factorial_prime_powers(p):
    for k in range(1, 12):
        n = p**k
        assert vp_factorial(n, p) == Fraction(n - 1, p - 1)


@given(nonzero_rats, nonzero_rats, primes)
def test_vp_multiplicative(a, b, p):
    assert vp(a * b, p) == vp(a, p) + vp(b, p)


@given(nonzero_rats, nonzero_rats, primes)
def test_vp_ultrametric(a, b, p):
    va, vb = vp(a, p), vp(b, p)
    vs = vp(a + b, p)
    assert vs >= min(va, vb)
    if va != vb:
        assert vs == min(va, vb)


def test_infinity_is_absorbing_and_maximal():
    assert INF + Fraction(3) is INF
    assert Fraction(-5) + INF is INF
    assert Fraction(10**9) < INF
    assert not INF < Fraction(10**9)
    assert min(INF, Fraction(2)) == 2
    assert sorted([INF, Fraction(1), Fraction(-1)]) == [-1, 1, INF]


@given(st.fractions(max_denominator=1000))
def test_rational_literal_roundtrip(x):
    assert parse_rat(format_rat(x)) == x


@pytest.mark.parametrize("bad", ["", "1/0", "a", "1.5", "1//2"])
def test_parse_rat_rejects(bad):
    with pytest.raises(ValueError):
        parse_rat(bad)
