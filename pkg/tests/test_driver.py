import time
from fractions import Fraction

import pytest

from padic_radii.diffmodule import DiffModule, DiffOperator, companion_module, direct_sum
from padic_radii.driver import compute_radii, stage_analyze
from padic_radii.newton import AtLeast, Exact
from padic_radii.ratfunc import DegreeCapExceeded, PointSpec

F = Fraction


def rank_one(a):
    return DiffModule([[str(a)]])


def test_exponential_resolves_after_one_pushforward():
    rep = compute_radii(rank_one(1), PointSpec(2, 0))
    assert rep.verdicts == (Exact(F(-1)),)
    assert rep.stage_found == (1,) and rep.stages_used == 1 and rep.complete
    assert list(rep.stages[0].local) == [AtLeast(F(-1))]
    assert list(rep.stages[1].local) == [Exact(F(-2)), Exact(F(-2))]


@pytest.mark.parametrize("p, a, expected", [
    (2, F(1, 8), F(-4)), (3, F(1, 3), F(-3, 2)), (5, F(1, 25), F(-9, 4))])
def test_visible_rank_one_at_stage_zero(p, a, expected):
    rep = compute_radii(rank_one(a), PointSpec(p, 0))
    assert rep.verdicts == (Exact(expected),) and rep.stage_found == (0,)


@pytest.mark.parametrize("a, p, t, expected, stage", [
    (2, 2, F(1, 2), F(0), 2),
    (1, 3, 0, F(-1, 2), 1),
    (1, 2, F(-1, 2), F(-1), 2),
])
def test_radii_found_after_pushforwards(a, p, t, expected, stage):
    rep = compute_radii(rank_one(a), PointSpec(p, t))
    assert rep.verdicts == (Exact(expected),) and rep.stage_found == (stage,)


def test_trivial_module_stays_censored():
    rep = compute_radii(rank_one(0), PointSpec(2, 0), max_stages=3)
    assert rep.verdicts == (AtLeast(F(-1, 8)),) and not rep.complete
    bounds = [s.pulled_back.censored[0] for s in rep.stages]
    assert bounds == [F(-1), F(-1, 2), F(-1, 4), F(-1, 8)]
    assert rep.uncertainty_interval() == (F(-1, 8), F(0))


def test_refinement_is_monotone():
    M = direct_sum(rank_one(2), rank_one(1))
    pt = PointSpec(2, F(1, 2))
    previous = None
    for k in range(4):
        rep = compute_radii(M, pt, max_stages=k)
        if previous is not None:
            for old, new in zip(previous.verdicts, rep.verdicts):
                if isinstance(old, Exact):
                    assert new == old
                else:
                    key = new.value if isinstance(new, Exact) else new.bound
                    assert key >= old.bound
        previous = rep
    assert previous.verdicts == (Exact(F(-1)), Exact(F(0)))
    assert previous.stage_found == (0, 2)


def test_direct_sum_is_union():
    a, b = rank_one(F(1, 4)), rank_one(F(1, 2))
    pt = PointSpec(2, 0)
    ra, rb = compute_radii(a, pt), compute_radii(b, pt)
    rs = compute_radii(direct_sum(a, b), pt)
    assert sorted(rs.verdicts, key=lambda v: v.sort_key) == \
        sorted(ra.verdicts + rb.verdicts, key=lambda v: v.sort_key)


def test_cyclic_choice_does_not_change_radii():
    M = DiffModule([["1/8", "0"], ["0", "(1 + T/8 + T^2/64)/(T*(1+T/8))"]])
    pt = PointSpec(2, 0)
    reps = [compute_radii(M, pt, cyclic=c) for c in
            (None, {"constants": [1]}, {"constants": [2]},
             {"strategy": "probe", "n_random": 2, "seed": 3})]
    assert all(r.verdicts == (Exact(F(-4)), Exact(F(-4))) for r in reps)
    assert reps[0].stages[0].cyclic_index >= 1


def test_operator_with_vanishing_top_coefficient_is_conservative():
    # d^2 - d: g_2 = 0 puts the last point at infinity
    L = DiffOperator(["-1", "0"])
    mult, _, polygon = stage_analyze(companion_module(L), PointSpec(2, 0))
    assert list(mult) == [AtLeast(F(-1)), AtLeast(F(-1))]


def test_degree_cap_after_stage_zero_gives_partial_report():
    rep = compute_radii(rank_one(0), PointSpec(2, 0), max_stages=3, cap=6)
    assert rep.error is not None and "stage 3" in rep.error
    assert len(rep.stages) == 3 and rep.verdicts == (AtLeast(F(-1, 4)),)


def test_degree_cap_at_stage_zero_raises():
    with pytest.raises(DegreeCapExceeded):
        compute_radii(rank_one("T^20"), PointSpec(2, 0), cap=5)


def test_zero_stages_reports_stage_zero_only():
    rep = compute_radii(rank_one(1), PointSpec(2, 0), max_stages=0)
    assert rep.verdicts == (AtLeast(F(-1)),) and rep.stages_used == 0
