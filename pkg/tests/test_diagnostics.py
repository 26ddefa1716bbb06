import numpy as np
import pytest

from blowuplab import (
    IntegratorConfig,
    NoBlowupTrend,
    ProblemSpec,
    Status,
    Trajectory,
    blowup_point,
    blowup_time_bounds,
    build_grid,
    build_report,
    convergence_study,
    estimate_blowup_time,
    fit_rate_exponent,
    integrate,
)

from conftest import make_problem, power_law_monitors, synthetic_monitors


class TestBounds:
    def test_lower_bound_single_node(self):
        g = build_grid(1)
        spec = ProblemSpec(p=3.0, q=1.3, b_samples=np.ones(3), u0_samples=np.array([0.0, 2.0, 0.0]))
        bounds = blowup_time_bounds(spec, g)
        assert bounds.t_lower == pytest.approx(1.0 / (2.0 * 4.0))

    def test_upper_bound_single_node(self):
        g = build_grid(1)
        spec = ProblemSpec(p=3.0, q=1.3, b_samples=np.ones(3), u0_samples=np.array([0.0, 2.0, 0.0]))
        bounds = blowup_time_bounds(spec, g)
        c = 0.5**0.65
        k = 0.5 - c * 2.0**-0.4
        assert bounds.k_tilde == pytest.approx(k)
        assert k == pytest.approx(0.0170, abs=2e-4)
        assert bounds.t_upper == pytest.approx(1.0 / (2.0 * k * 4.0))
        # full-precision evaluation gives 7.3397; 7.35 comes from rounding
        # k_tilde to 0.0170 before dividing
        assert bounds.t_upper == pytest.approx(7.35, rel=2e-3)

    def test_upper_bound_absent_for_small_data(self):
        g = build_grid(1)
        spec = ProblemSpec(p=3.0, q=1.3, b_samples=np.ones(3), u0_samples=np.array([0.0, 1.0, 0.0]))
        bounds = blowup_time_bounds(spec, g)
        assert bounds.k_tilde <= 0.0
        assert bounds.t_upper is None
        assert bounds.reason

    def test_zero_data_rejected(self):
        g = build_grid(3)
        spec = ProblemSpec(p=3.0, q=1.3, b_samples=np.ones(5), u0_samples=np.zeros(5))
        with pytest.raises(ValueError):
            blowup_time_bounds(spec, g)


class TestEstimateBlowupTime:
    def test_exact_synthetic_power_law(self):
        mon = power_law_monitors(p=3.0)
        assert estimate_blowup_time(mon, 3.0) == pytest.approx(1.0, abs=1e-6)

    def test_constant_series_has_no_trend(self):
        mon = synthetic_monitors(np.linspace(0, 1, 50), np.full(50, 7.0))
        with pytest.raises(NoBlowupTrend):
            estimate_blowup_time(mon, 3.0)

    def test_short_series_rejected(self):
        mon = power_law_monitors(p=3.0, n=8)
        with pytest.raises(NoBlowupTrend):
            estimate_blowup_time(mon, 3.0)

    def test_subsampling_invariance(self):
        mon = power_law_monitors(p=3.0, n=400)
        full = estimate_blowup_time(mon, 3.0)
        half = estimate_blowup_time(
            synthetic_monitors(mon.t[::2], mon.sup_norm[::2]), 3.0
        )
        assert half == pytest.approx(full, rel=1e-3)

    def test_subsampling_invariance_on_real_run(self):
        g = build_grid(1)
        spec = ProblemSpec(p=3.0, q=1.5, b_samples=np.zeros(3), u0_samples=np.array([0.0, 2.0, 0.0]))
        traj = integrate(spec, g, IntegratorConfig(blowup_threshold=1e7))
        full = estimate_blowup_time(traj.monitors, 3.0)
        m = traj.monitors
        half = estimate_blowup_time(synthetic_monitors(m.t[::2], m.sup_norm[::2]), 3.0)
        assert half == pytest.approx(full, rel=1e-3)


class TestFitRateExponent:
    @pytest.mark.parametrize("p", [2.0, 3.0, 5.0])
    def test_exact_power_law_recovery(self, p):
        mon = power_law_monitors(p=p)
        slope = fit_rate_exponent(mon, 1.0)
        assert slope == pytest.approx(-1.0 / (p - 1.0), abs=1e-6)

    def test_synthetic_half_exponent(self):
        mon = power_law_monitors(p=3.0)
        assert fit_rate_exponent(mon, 1.0) == pytest.approx(-0.5, abs=1e-6)

    def test_estimate_inside_window_rejected(self):
        mon = power_law_monitors(p=3.0)
        with pytest.raises(NoBlowupTrend):
            fit_rate_exponent(mon, 0.5)

    def test_short_series_rejected(self):
        mon = power_law_monitors(p=3.0, n=5)
        with pytest.raises(NoBlowupTrend):
            fit_rate_exponent(mon, 1.0)


def fake_blown_trajectory(final_interior, g):
    full = np.zeros(g.n_interior + 2)
    full[1:-1] = final_interior
    mon = synthetic_monitors([0.0, 1.0], [1.0, float(np.max(np.abs(full)))])
    return Trajectory(
        grid=g,
        monitors=mon,
        snapshots=[(1.0, full)],
        status=Status.BLEW_UP,
        t_stop=1.0,
        final_state=full,
    )


class TestBlowupPoint:
    def test_single_interior_node(self):
        g = build_grid(1)
        point = blowup_point(fake_blown_trajectory([5.0], g))
        assert point.index == 1
        assert point.x == 0.0
        assert not point.tie

    def test_tie_resolution(self):
        g = build_grid(4)
        point = blowup_point(fake_blown_trajectory([1.0, 7.0, 7.0, 2.0], g))
        assert point.index == 2
        assert point.tie

    def test_non_blowup_rejected(self):
        spec, g = make_problem(9, amp=0.5)
        traj = integrate(spec, g, IntegratorConfig(t_max=0.01))
        with pytest.raises(RuntimeError):
            blowup_point(traj)

    def test_reflection_equivariance(self):
        g = build_grid(21)
        u0 = lambda x: 40.0 * (1 - x) * (1 + x) ** 2  # skewed bump
        spec, _ = make_problem(21, u0=u0, b=0.0)
        spec_r, _ = make_problem(21, u0=lambda x: u0(-x), b=0.0)
        cfg = IntegratorConfig(blowup_threshold=1e6)
        p1 = blowup_point(integrate(spec, g, cfg))
        p2 = blowup_point(integrate(spec_r, g, cfg))
        assert p2.index == g.n_interior + 1 - p1.index
        assert p2.x == pytest.approx(-p1.x)


class TestBuildReport:
    def test_blowup_report_fields(self):
        g = build_grid(1)
        spec = ProblemSpec(p=3.0, q=1.5, b_samples=np.zeros(3), u0_samples=np.array([0.0, 2.0, 0.0]))
        traj = integrate(spec, g, IntegratorConfig(blowup_threshold=1e7))
        report = build_report(traj, spec)
        assert report.status is Status.BLEW_UP
        assert report.t_est is not None
        assert report.t_est >= report.t_stop * (1 - 1e-12)
        assert report.t_lower <= report.t_est <= report.t_upper
        assert report.rate_expected == -0.5
        assert report.blowup_node == 1

    def test_horizon_report_has_no_fit(self):
        spec, g = make_problem(9, amp=0.5)
        traj = integrate(spec, g, IntegratorConfig(t_max=0.01))
        report = build_report(traj, spec)
        assert report.status is Status.REACHED_HORIZON
        assert report.t_est is None
        assert report.rate_exponent is None
        assert report.blowup_node is None


class TestConvergenceStudy:
    @staticmethod
    def family(g):
        return ProblemSpec.from_functions(
            3.0,
            1.3,
            lambda x: np.ones_like(x),
            lambda x: 0.8 * np.sin(np.pi * (x + 1) / 2),
            g,
        )

    def test_orders_near_two_on_nested_grids(self):
        report = convergence_study(
            self.family,
            [9, 19, 39],
            t_check=0.05,
            cfg=IntegratorConfig(rel_tol=1e-9, abs_tol=1e-11),
        )
        assert report.n_reference == 4 * 40 - 1
        assert all(np.isfinite(report.errors))
        assert all(order > 1.7 for order in report.orders)

    def test_repeated_grid_flags_undefined_order(self):
        report = convergence_study(
            self.family, [9, 9, 19], t_check=0.02,
            cfg=IntegratorConfig(rel_tol=1e-7, abs_tol=1e-9),
        )
        assert np.isnan(report.orders[0])
        assert any("undefined" in flag for flag in report.flags)

    def test_blowup_before_t_check_flagged(self):
        # only the coarsest grid gets blow-up-sized data: its row must be
        # flagged and excluded while the rest of the study completes
        def mixed_family(g):
            amp = 1e3 if g.n_interior == 9 else 0.8
            return ProblemSpec.from_functions(
                3.0,
                1.3,
                lambda x: np.ones_like(x),
                lambda x, a=amp: a * np.sin(np.pi * (x + 1) / 2),
                g,
            )

        report = convergence_study(
            mixed_family, [9, 19, 39], t_check=0.02,
            cfg=IntegratorConfig(rel_tol=1e-7, abs_tol=1e-9),
        )
        assert np.isnan(report.errors[0])
        assert any("stopped before t_check" in flag for flag in report.flags)
        assert np.isfinite(report.errors[1])
        assert np.isfinite(report.errors[2])

    def test_reference_blowup_is_an_error(self):
        def hot_family(g):
            return ProblemSpec.from_functions(
                3.0,
                1.3,
                lambda x: np.ones_like(x),
                lambda x: 1e3 * np.sin(np.pi * (x + 1) / 2),
                g,
            )

        with pytest.raises(RuntimeError):
            convergence_study(hot_family, [9, 19, 39], t_check=0.05)

    def test_too_few_grids_rejected(self):
        with pytest.raises(ValueError):
            convergence_study(self.family, [9, 19], t_check=0.05)
