"""Mesures à paramètre fixé : valeurs de référence, admissibilité, solveurs, bornes de stabilité."""
import math

import numpy as np
import pytest
from pydantic import TypeAdapter

from src.funcspace.models import Constant, PiecewiseLinear, PowerComplement
from src.funcspace.operations import cumulative, evaluate, from_citations
from src.measures import (
    LinearF,
    MeasureSpec,
    PiecewiseLinearIncreasing,
    PowerF,
    compute_measure,
    g_error_bound,
    g_theta,
    h_error_bound,
    h_theta,
    i_theta,
    kosmulski,
    mu_theta,
    ped_error_bound,
    ped_measure,
    percentile,
    polar,
    r_theta,
)
from src.measures.solvers import bisect_decreasing, g_quadratic_root, linear_crossing
from src.utils.errors import ContinuityRequired, DomainError, NotAdmissible
from tests.helpers import random_decreasing_pl, scaled, shifted


class TestIntegralMeasures:
    def test_i_and_mu_on_line(self, line):
        assert i_theta(line, 1.0) == pytest.approx(0.5)
        assert mu_theta(line, 1.0) == pytest.approx(0.5)

    def test_mu_at_zero_is_z0(self, line):
        assert mu_theta(line, 0.0) == 1.0

    def test_i_at_zero(self, line):
        assert i_theta(line, 0.0) == 0.0

    def test_percentile(self, line):
        assert percentile(line, 0.25) == pytest.approx(0.75)

    def test_percentile_takes_right_limit(self, step_half):
        assert percentile(step_half, 0.5) == 0.0

    @pytest.mark.parametrize("measure", [i_theta, mu_theta, percentile])
    @pytest.mark.parametrize("theta", [-0.1, 1.5])
    def test_theta_outside_domain(self, line, measure, theta):
        with pytest.raises(DomainError):
            measure(line, theta)

    def test_i_equals_theta_mu(self, rng):
        for _ in range(50):
            F = random_decreasing_pl(rng)
            theta = float(rng.uniform(1e-3, F.T))
            assert i_theta(F, theta) == pytest.approx(theta * mu_theta(F, theta), rel=1e-14)

    def test_mu_nonincreasing_in_theta(self, rng):
        for _ in range(20):
            F = random_decreasing_pl(rng)
            thetas = np.linspace(1e-3, F.T, 50)
            values = [mu_theta(F, float(t)) for t in thetas]
            assert np.all(np.diff(values) <= 1e-12)


class TestHIndex:
    @pytest.mark.parametrize("theta", [0.5, 1.0, 2.0, 10.0])
    def test_line_closed_form(self, line, theta):
        assert h_theta(line, theta) == pytest.approx(1.0 / (1.0 + theta), abs=1e-12)

    def test_constant(self):
        assert h_theta(Constant(a=0.5, T=1.0), 1.0) == pytest.approx(0.5)

    def test_not_admissible_reports_theta0(self):
        with pytest.raises(NotAdmissible) as info:
            h_theta(Constant(a=2.0, T=1.0), 1.0)
        assert info.value.theta0 == pytest.approx(2.0)
        assert info.value.theta == 1.0

    def test_boundary_theta_admissible(self):
        assert h_theta(Constant(a=2.0, T=1.0), 2.0) == pytest.approx(1.0)

    def test_zero_function(self, zero):
        assert h_theta(zero, 1.0) == 0.0

    def test_requires_continuity(self, step_half):
        with pytest.raises(ContinuityRequired):
            h_theta(step_half, 1.0)

    @pytest.mark.parametrize("theta", [0.0, -1.0])
    def test_nonpositive_theta(self, line, theta):
        with pytest.raises(DomainError):
            h_theta(line, theta)

    def test_non_piecewise_model_uses_bisection(self):
        assert h_theta(PowerComplement(n=1), 1.0) == pytest.approx(0.5, abs=1e-10)

    def test_classic_h_index_from_citations(self):
        # comptes 10, 8, 5, 4, 3 : Z(x) = 7 - x sur [3, 4]
        F = from_citations([10, 8, 5, 4, 3])
        x = h_theta(F, 1.0)
        assert x == pytest.approx(3.5, abs=1e-12)
        assert evaluate(F, x) == pytest.approx(x, abs=1e-12)

    def test_nonincreasing_in_theta(self, rng):
        for _ in range(20):
            F = random_decreasing_pl(rng)
            theta0 = evaluate(F, F.T) / F.T
            thetas = theta0 + np.geomspace(0.01, 10.0, 30)
            values = [h_theta(F, float(t)) for t in thetas]
            assert np.all(np.diff(values) <= 1e-12)

    def test_scaling(self, rng):
        for _ in range(20):
            F = random_decreasing_pl(rng)
            c = float(rng.uniform(0.5, 3.0))
            theta = c * (evaluate(F, F.T) / F.T + 1.0)
            assert h_theta(scaled(F, c), theta) == pytest.approx(h_theta(F, theta / c), abs=1e-12)

    def test_monotone_in_function(self, rng):
        for _ in range(20):
            F = random_decreasing_pl(rng)
            G = shifted(F, float(rng.uniform(0.0, 1.0)))
            theta = evaluate(G, G.T) / G.T + 0.5
            assert h_theta(F, theta) <= h_theta(G, theta) + 1e-12


class TestGIndex:
    @pytest.mark.parametrize("theta", [0.5, 1.0, 2.0])
    def test_line_closed_form(self, line, theta):
        assert g_theta(line, theta) == pytest.approx(1.0 / (theta + 0.5), abs=1e-12)

    def test_constant(self):
        assert g_theta(Constant(a=0.5, T=1.0), 1.0) == pytest.approx(0.5)

    def test_not_admissible_reports_theta0(self, line):
        with pytest.raises(NotAdmissible) as info:
            g_theta(line, 0.4)
        assert info.value.theta0 == pytest.approx(0.5)

    def test_zero_function(self, zero):
        assert g_theta(zero, 1.0) == 0.0

    def test_requires_continuity(self, step_half):
        with pytest.raises(ContinuityRequired):
            g_theta(step_half, 1.0)

    def test_non_piecewise_model_uses_bisection(self):
        assert g_theta(PowerComplement(n=1), 1.0) == pytest.approx(2.0 / 3.0, abs=1e-10)

    def test_g_at_least_h(self, rng):
        for _ in range(30):
            F = random_decreasing_pl(rng)
            theta = evaluate(F, 0.0) / F.T + 0.1
            assert g_theta(F, theta) >= h_theta(F, theta) - 1e-12

    def test_defining_equation(self, rng):
        for _ in range(30):
            F = random_decreasing_pl(rng, floor=0.05)
            theta = cumulative(F, F.T) / F.T ** 2 * float(rng.uniform(1.1, 5.0))
            x = g_theta(F, theta)
            assert cumulative(F, x) == pytest.approx(theta * x * x, abs=1e-10)


class TestPED:
    def test_linear_f_equals_h(self, line):
        assert ped_measure(line, LinearF(theta=2.0)) == pytest.approx(h_theta(line, 2.0), abs=1e-12)

    def test_piecewise_increasing_f(self, line):
        f = PiecewiseLinearIncreasing(points=((0.0, 0.0), (2.0, 2.0)))
        assert ped_measure(line, f) == pytest.approx(0.5, abs=1e-12)

    def test_f_must_cover_domain(self, line):
        f = PiecewiseLinearIncreasing(points=((0.0, 0.0), (0.5, 2.0)))
        with pytest.raises(DomainError):
            ped_measure(line, f)

    def test_f_above_z_at_zero(self, line):
        f = PiecewiseLinearIncreasing(points=((0.0, 2.0), (1.0, 3.0)))
        with pytest.raises(NotAdmissible):
            ped_measure(line, f)

    def test_f_equal_z_at_zero(self, line):
        f = PiecewiseLinearIncreasing(points=((0.0, 1.0), (1.0, 3.0)))
        assert ped_measure(line, f) == 0.0

    def test_f_below_z_at_t(self):
        with pytest.raises(NotAdmissible):
            ped_measure(Constant(a=5.0, T=1.0), LinearF(theta=1.0))

    def test_non_increasing_f_rejected(self):
        with pytest.raises(ValueError):
            PiecewiseLinearIncreasing(points=((0.0, 0.0), (1.0, 1.0), (2.0, 0.5)))


class TestKosmulski:
    def test_line_closed_form(self, line):
        expected = (math.sqrt(5.0) - 1.0) / 2.0
        assert kosmulski(line, 1.0, 2.0) == pytest.approx(expected, abs=1e-10)

    def test_p_one_is_h(self, line):
        assert kosmulski(line, 2.0, 1.0) == pytest.approx(h_theta(line, 2.0), abs=1e-12)

    def test_not_admissible(self):
        with pytest.raises(NotAdmissible) as info:
            kosmulski(Constant(a=2.0, T=2.0), 0.1, 2.0)
        assert info.value.theta0 == pytest.approx(0.5)

    def test_nonpositive_p(self, line):
        with pytest.raises(DomainError):
            kosmulski(line, 1.0, 0.0)


class TestRAndPolar:
    def test_r_on_line(self, line):
        assert r_theta(line, 1.0) == pytest.approx(math.sqrt(0.375), abs=1e-12)

    def test_r_squared_is_integral_up_to_h(self, rng):
        for _ in range(20):
            F = random_decreasing_pl(rng)
            theta = evaluate(F, F.T) / F.T + 1.0
            assert r_theta(F, theta) ** 2 == pytest.approx(cumulative(F, h_theta(F, theta)), rel=1e-12)

    def test_polar_diagonal(self, line):
        assert polar(line, math.pi / 4) == pytest.approx(0.5 * math.sqrt(2.0), abs=1e-12)

    @pytest.mark.parametrize("phi", [0.0, math.pi / 2, -0.3])
    def test_polar_angle_range(self, line, phi):
        with pytest.raises(DomainError):
            polar(line, phi)

    def test_polar_is_distance_to_crossing(self, rng):
        for _ in range(20):
            F = random_decreasing_pl(rng)
            phi = float(rng.uniform(0.2, 1.4))
            theta = math.tan(phi)
            if evaluate(F, F.T) > theta * F.T:
                continue
            x = h_theta(F, theta)
            assert polar(F, phi) == pytest.approx(math.hypot(x, evaluate(F, x)), abs=1e-10)


class TestExactAgainstBisection:
    """Les chemins exacts (algèbre par segment) et la bissection doivent coïncider."""

    def test_h(self, rng):
        for _ in range(100):
            F = random_decreasing_pl(rng, floor=0.05)
            theta = max(0.1, evaluate(F, F.T) / F.T) * float(rng.uniform(1.1, 5.0))
            exact = h_theta(F, theta)
            assert h_theta(F, theta, method="bisection") == pytest.approx(exact, abs=1e-9)

    def test_g(self, rng):
        for _ in range(100):
            F = random_decreasing_pl(rng, floor=0.05)
            theta = max(0.1, cumulative(F, F.T) / F.T ** 2) * float(rng.uniform(1.1, 5.0))
            exact = g_theta(F, theta)
            assert g_theta(F, theta, method="bisection") == pytest.approx(exact, abs=1e-9)

    def test_ped_piecewise_f(self, rng):
        for _ in range(100):
            F = random_decreasing_pl(rng, floor=0.05)
            T = F.T
            xs = np.concatenate(([0.0], np.sort(rng.uniform(0.0, T, size=3)), [T]))
            slopes = rng.uniform(0.5, 3.0, size=xs.size - 1)
            ys = np.concatenate(([0.0], np.cumsum(slopes * np.diff(xs))))
            # décalage pour que f(T) dépasse Z(T)
            ys += max(0.0, evaluate(F, T) - ys[-1] + 0.1)
            if ys[0] >= evaluate(F, 0.0) or np.any(np.diff(xs) <= 0):
                continue
            f = PiecewiseLinearIncreasing(points=tuple(zip(xs.tolist(), ys.tolist())))
            exact = ped_measure(F, f)
            assert ped_measure(F, f, method="bisection") == pytest.approx(exact, abs=1e-9)


class TestSolvers:
    def test_bisection_linear(self):
        root = bisect_decreasing(lambda x: 2.0 - x, 0.0, 3.0, tol=1e-13)
        assert root == pytest.approx(2.0, abs=1e-12)

    def test_bisection_endpoints(self):
        assert bisect_decreasing(lambda x: 1.0, 0.0, 3.0, tol=1e-12) == 3.0
        assert bisect_decreasing(lambda x: -1.0, 0.0, 3.0, tol=1e-12) == 0.0

    def test_bisection_locates_root_of_flat_residual(self):
        root = bisect_decreasing(lambda x: 1e-13 * (2.0 - x), 0.0, 3.0, tol=1e-12)
        assert root == pytest.approx(2.0, abs=1e-14)

    def test_g_bisection_matches_exact_root(self, line):
        exact = g_theta(line, 1.0)
        assert exact == pytest.approx(2.0 / 3.0, abs=1e-15)
        assert g_theta(line, 1.0, method="bisection") == pytest.approx(exact, abs=1e-14)

    def test_crossing_inside_segment(self):
        xs = np.array([0.0, 1.0, 2.0])
        assert linear_crossing(xs, np.array([1.0, 0.5, -0.5])) == pytest.approx(1.5)

    def test_crossing_zero_stretch_takes_right_end(self):
        xs = np.array([0.0, 1.0, 2.0, 3.0])
        assert linear_crossing(xs, np.array([1.0, 0.0, 0.0, -1.0])) == 2.0

    def test_crossing_positive_to_end(self):
        xs = np.array([0.0, 1.0])
        assert linear_crossing(xs, np.array([1.0, 0.5])) == 1.0

    def test_quadratic_root_on_line(self):
        xs, ys = np.array([0.0, 1.0]), np.array([1.0, 0.0])
        assert g_quadratic_root(xs, ys, np.array([0.0, 0.5]), 1.0) == pytest.approx(2.0 / 3.0)

    def test_quadratic_root_later_segment(self):
        F = PiecewiseLinear(T=3.0, points=((0.0, 3.0), (1.0, 2.0), (3.0, 0.0)))
        x = g_quadratic_root(F.xs, F.right_values, F.integral(F.xs), 0.5)
        assert x > 1.0
        assert cumulative(F, x) == pytest.approx(0.5 * x * x, abs=1e-12)


class TestStabilityBounds:
    def test_h_bound(self, rng):
        for _ in range(50):
            F = random_decreasing_pl(rng, T=1.0)
            Fn = shifted(F, float(rng.uniform(0.0, 0.5)))
            theta = evaluate(Fn, 1.0) + float(rng.uniform(0.1, 3.0))
            gap = abs(h_theta(Fn, theta) - h_theta(F, theta))
            assert gap <= h_error_bound(Fn, F, theta) + 1e-9

    def test_g_bound(self, rng):
        for _ in range(50):
            F = random_decreasing_pl(rng, T=1.0)
            Fn = shifted(F, float(rng.uniform(0.0, 0.5)))
            theta = cumulative(Fn, 1.0) + float(rng.uniform(0.1, 3.0))
            gap = abs(g_theta(Fn, theta) - g_theta(F, theta))
            assert gap <= g_error_bound(Fn, F, theta) + 1e-9

    def test_ped_bound(self, rng):
        for _ in range(50):
            F = random_decreasing_pl(rng, T=1.0)
            Fn = shifted(F, float(rng.uniform(0.0, 0.5)))
            f = PowerF(theta=evaluate(Fn, 1.0) + float(rng.uniform(0.1, 3.0)), p=2.0)
            y, yn = ped_measure(F, f), ped_measure(Fn, f)
            gap = abs(float(f.value(y)) - float(f.value(yn)))
            assert gap <= ped_error_bound(Fn, F, f) + 1e-9

    def test_g_bound_infinite_for_zero_limit(self, zero):
        assert g_error_bound(Constant(a=0.1, T=1.0), zero, 1.0) == math.inf


class TestComputeMeasure:
    adapter = TypeAdapter(MeasureSpec)

    @pytest.mark.parametrize(
        "payload, expected",
        [
            ({"kind": "I", "theta": 1.0}, 0.5),
            ({"kind": "mu", "theta": 0.0}, 1.0),
            ({"kind": "percentile", "theta": 0.25}, 0.75),
            ({"kind": "h", "theta": 1.0}, 0.5),
            ({"kind": "g", "theta": 1.0}, 2.0 / 3.0),
            ({"kind": "R", "theta": 1.0}, math.sqrt(0.375)),
            ({"kind": "ped", "f": {"type": "linear", "theta": 1.0}}, 0.5),
        ],
    )
    def test_dispatch(self, line, payload, expected):
        spec = self.adapter.validate_python(payload)
        assert compute_measure(line, spec) == pytest.approx(expected, abs=1e-12)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            self.adapter.validate_python({"kind": "e", "theta": 1.0})
