"""Espace des fonctions : évaluation, limites, intégrale, distance uniforme, appartenance à U, familles."""
import numpy as np
import pytest
from pydantic import ValidationError

from src.funcspace.families import (
    ConstantSeq,
    PowerComplementSeq,
    StepApproach,
    UserFamily,
    family_member,
    limit_of,
)
from src.funcspace.models import Constant, GridSpec, PiecewiseLinear, PowerComplement, UpperStep
from src.funcspace.operations import (
    as_piecewise_linear,
    cumulative,
    evaluate,
    from_citations,
    is_in_U,
    is_zero_function,
    left_limit,
    require_continuous,
    sup_distance,
)
from src.measures.impact import h_theta
from src.utils.errors import ContinuityRequired, DomainError
from tests.helpers import random_decreasing_pl


class TestEvaluate:
    def test_constant(self):
        assert evaluate(Constant(a=2.0, T=10.0), 3.0) == 2.0

    def test_power_complement(self):
        assert evaluate(PowerComplement(n=2), 0.5) == pytest.approx(0.75)

    def test_figure1_tail_is_s_over_n(self, figure1):
        assert evaluate(family_member(figure1, 10), 0.9) == pytest.approx(0.1)

    def test_vectorised(self, line):
        np.testing.assert_allclose(evaluate(line, np.array([0.0, 0.25, 1.0])), [1.0, 0.75, 0.0])

    def test_jump_stores_right_limit(self, step_half):
        assert evaluate(step_half, 0.5) == 0.0
        assert evaluate(step_half, 0.4999) == 1.0

    @pytest.mark.parametrize("x", [-0.1, 1.1, float("nan")])
    def test_outside_domain(self, line, x):
        with pytest.raises(DomainError):
            evaluate(line, x)


class TestLeftLimit:
    def test_upper_step(self, step_half):
        assert left_limit(step_half, 0.5) == 1.0

    def test_continuity_point(self):
        assert left_limit(PowerComplement(n=3), 0.5) == pytest.approx(0.875)

    def test_piecewise_linear_jump(self, all_variants):
        with_jump = all_variants[-1]
        assert left_limit(with_jump, 1.0) == 2.0
        assert evaluate(with_jump, 1.0) == 1.0

    def test_zero_rejected(self, line):
        with pytest.raises(DomainError):
            left_limit(line, 0.0)


class TestCumulative:
    def test_constant(self):
        assert cumulative(Constant(a=2.0, T=10.0), 5.0) == pytest.approx(10.0)

    def test_power_complement(self):
        assert cumulative(PowerComplement(n=2), 1.0) == pytest.approx(2.0 / 3.0)

    def test_triangle(self, line):
        assert cumulative(line, 1.0) == pytest.approx(0.5)

    def test_upper_step(self, step_half):
        assert cumulative(step_half, 0.75) == pytest.approx(0.5)

    def test_matches_midpoint_riemann_sum(self, all_variants):
        panels = 10**6
        for F in all_variants:
            for x in (F.domain_end, 0.37 * F.domain_end):
                dx = x / panels
                mids = (np.arange(panels) + 0.5) * dx
                riemann = float(np.sum(F.value(mids)) * dx)
                total = cumulative(F, F.domain_end)
                assert abs(cumulative(F, x) - riemann) <= 1e-6 * (1.0 + total)

    def test_nondecreasing_from_zero(self, all_variants):
        for F in all_variants:
            xs = np.linspace(0.0, F.domain_end, 501)
            ys = cumulative(F, xs)
            assert ys[0] == 0.0
            assert np.all(np.diff(ys) >= -1e-15)


class TestSupDistance:
    def test_identity(self, line):
        assert sup_distance(line, line) == 0.0

    def test_constant_gap(self):
        assert sup_distance(Constant(a=0.2, T=1.0), Constant(a=0.0, T=1.0)) == pytest.approx(0.2)

    @pytest.mark.parametrize("n", [3, 10, 100, 1000])
    def test_power_complement_never_close_to_step(self, n):
        limit = limit_of(PowerComplementSeq())
        grid = np.append(np.linspace(0.0, 1.0, 101), 1.0 - 1e-4)
        assert sup_distance(PowerComplement(n=n), limit, np.sort(grid)) >= 0.99

    def test_exact_matches_brute_force(self, rng):
        for _ in range(20):
            T = float(rng.uniform(0.5, 5.0))
            F = random_decreasing_pl(rng, T=T, on_grid=100)
            G = random_decreasing_pl(rng, T=T, on_grid=100)
            xs = np.linspace(0.0, T, 100001)
            brute = float(np.max(np.abs(F.value(xs) - G.value(xs))))
            assert sup_distance(F, G) == pytest.approx(brute, abs=1e-12)

    def test_grid_spec_accepted(self):
        grid = GridSpec(start=0.0, stop=1.0, count=11)
        assert sup_distance(PowerComplement(n=1), Constant(a=0.0, T=1.0), grid) == pytest.approx(1.0)

    def test_mismatched_domains(self):
        with pytest.raises(DomainError):
            sup_distance(Constant(a=1.0, T=1.0), Constant(a=1.0, T=2.0))


class TestIsInU:
    def test_zero_function(self, zero):
        assert is_in_U(zero).ok

    def test_step_is_discontinuous(self, step_half):
        membership = is_in_U(step_half)
        assert not membership.ok
        assert membership.condition == "continuity"
        assert membership.at == 0.5

    def test_increasing_stretch(self):
        F = PiecewiseLinear(T=1.0, points=((0.0, 0.5), (0.5, 1.0), (1.0, 0.0)))
        membership = is_in_U(F)
        assert not membership.ok
        assert membership.condition == "monotonicity"
        assert membership.at == 0.0

    def test_require_continuous(self, step_half, line):
        require_continuous(line)
        with pytest.raises(ContinuityRequired) as info:
            require_continuous(step_half)
        assert info.value.at == 0.5


class TestModels:
    def test_single_breakpoint_rejected(self):
        with pytest.raises(ValidationError):
            PiecewiseLinear(T=1.0, points=((0.0, 1.0),))

    def test_breakpoints_must_increase(self):
        with pytest.raises(ValidationError):
            PiecewiseLinear(T=1.0, points=((0.0, 1.0), (0.6, 0.5), (0.4, 0.2), (1.0, 0.0)))

    def test_upward_jump_rejected(self):
        with pytest.raises(ValidationError):
            PiecewiseLinear(
                T=1.0,
                points=((0.0, 1.0), (1.0, 0.0)),
                jumps=({"x": 0.5, "left": 0.2, "right": 0.8},),
            )

    def test_upper_step_requires_high_above_low(self):
        with pytest.raises(ValidationError):
            UpperStep(T=1.0, x0=0.5, high=0.0, low=1.0)

    def test_piecewise_view(self):
        view = as_piecewise_linear(Constant(a=3.0, T=2.0))
        assert view.points == ((0.0, 3.0), (2.0, 3.0))
        assert as_piecewise_linear(PowerComplement(n=2)) is None

    def test_zero_detection(self, zero, line):
        assert is_zero_function(zero)
        assert not is_zero_function(line)

    def test_equality_by_content(self):
        assert Constant(a=1.0, T=1.0) == Constant(a=1.0, T=1.0)
        assert Constant(a=1.0, T=1.0) != Constant(a=1.0, T=2.0)


class TestFamilies:
    def test_figure1_member(self, figure1):
        member = family_member(figure1, 4)
        assert member.points == ((0.0, 1.0), (0.5, 0.5), (0.75, 0.25), (1.0, 0.25))

    def test_figure1_starts_at_three(self, figure1):
        with pytest.raises(DomainError):
            family_member(figure1, 2)

    def test_power_complement_first_member_is_line(self):
        member = family_member(PowerComplementSeq(), 1)
        np.testing.assert_allclose(evaluate(member, np.linspace(0, 1, 11)), 1.0 - np.linspace(0, 1, 11))

    def test_constant_rule(self):
        assert family_member(ConstantSeq(a=0.0, c=1.0, p=1.0), 10) == Constant(a=0.1, T=1.0)

    def test_members_in_U(self, figure1):
        specs = [figure1, PowerComplementSeq(), ConstantSeq(a=2.0), StepApproach()]
        for spec in specs:
            for n in (3, 10, 100):
                assert is_in_U(family_member(spec, n)).ok

    def test_step_approach_limit(self):
        limit = limit_of(StepApproach(T=1.0, x0=0.5))
        assert limit == UpperStep(T=1.0, x0=0.5, high=1.0, low=0.0)

    def test_user_family(self, line):
        family = UserFamily(members=((1, line), (2, Constant(a=0.5, T=1.0))), limit=line)
        assert family.indices == (1, 2)
        assert limit_of(family) == line
        with pytest.raises(DomainError):
            family_member(family, 3)

    def test_user_family_member_outside_U_rejected(self, line, step_half):
        family = UserFamily(members=((1, step_half),), limit=line)
        with pytest.raises(DomainError):
            family_member(family, 1)


class TestFromCitations:
    def test_hold_tail(self):
        F = from_citations([5, 3, 1], tail="hold")
        assert F.points == ((0.0, 5.0), (1.0, 3.0), (2.0, 1.0), (3.0, 1.0))

    def test_zero_tail_single_rank(self):
        assert from_citations([4], tail="zero").points == ((0.0, 4.0), (1.0, 0.0))

    def test_unsorted_input_sorted(self):
        assert from_citations([1, 5, 3]) == from_citations([5, 3, 1])

    def test_result_in_U(self):
        assert is_in_U(from_citations([10, 7, 7, 2, 0, 0], tail="zero")).ok

    def test_h_index_of_ingested_data(self):
        assert h_theta(from_citations([5, 3, 1]), 1.0) == pytest.approx(5.0 / 3.0, abs=1e-12)

    @pytest.mark.parametrize("counts, tail", [([], "hold"), ([3, -1], "hold"), ([3], "linear")])
    def test_invalid(self, counts, tail):
        with pytest.raises(DomainError):
            from_citations(counts, tail=tail)


class TestMonotonicity:
    def test_random_pairs_all_variants(self, rng, all_variants):
        for F in all_variants:
            a = rng.uniform(0.0, F.domain_end, size=2000)
            b = rng.uniform(0.0, F.domain_end, size=2000)
            lo, hi = np.minimum(a, b), np.maximum(a, b)
            assert np.all(evaluate(F, lo) >= evaluate(F, hi) - 1e-12)
            assert np.all(evaluate(F, hi) >= 0.0)

    def test_random_piecewise_linear(self, rng):
        for _ in range(50):
            F = random_decreasing_pl(rng)
            xs = np.sort(rng.uniform(0.0, F.T, size=500))
            assert np.all(np.diff(evaluate(F, xs)) <= 1e-12)
