"""Bootstrap engine: residuals, regeneration, quantiles, classifier, engine."""

import itertools

import numpy as np
import pytest

import ardlboot.bootstrap as bootstrap_module
from ardlboot import (
    ArdlSpec,
    BootstrapConfig,
    Outcome,
    TimeSeriesFrame,
    bootstrap_tests,
    classify_outcome,
    critical_value,
    estimate_restricted,
    estimate_vecm_marginal,
    p_value,
    recenter,
    regenerate_sample,
    restricted_residuals,
)
from ardlboot.ardl import CONDITIONAL, DROP_LEVELS, Term
from ardlboot.bootstrap import _null_distribution
from ardlboot.exceptions import (
    DegenerateFit,
    EmptyDistribution,
    InputError,
    RankDeficient,
    TooManyDiscards,
)
from ardlboot.regression import OlsFit
from ardlboot.vecm import VecmFit


SPEC = ArdlSpec("III", CONDITIONAL, 3, (3, 3))


class TestRestrictedResiduals:
    def test_f_ov_case_iii_term_by_term(self, frame_1h):
        """Residual equals the target minus each fitted term, recomposed."""
        resid, fit = restricted_residuals(frame_1h, SPEC, "f_ov")
        z = frame_1h.values
        rows = np.arange(3, z.shape[0])
        dy = z[rows, 0] - z[rows - 1, 0]
        dz = z[1:] - z[:-1]

        recomposed = dy - fit.intercept
        for name, coef in fit.short_run.items():
            parts = name.split(".")  # d.<var>.L<j>
            var = frame_1h.names.index(parts[1])
            lag = int(parts[2][1:])
            recomposed = recomposed - coef * dz[rows - 1 - lag, var]
        for i, var in enumerate((1, 2)):
            recomposed = recomposed - fit.omega[i] * dz[rows - 1, var]
        np.testing.assert_allclose(resid, recomposed, atol=1e-10)

    def test_null_columns_removed(self, frame_1h):
        _, fit_ov = restricted_residuals(frame_1h, SPEC, "f_ov")
        _, fit_t = restricted_residuals(frame_1h, SPEC, "t")
        _, fit_ind = restricted_residuals(frame_1h, SPEC, "f_ind")
        names_ov = {t.name(frame_1h.names) for t in fit_ov.terms}
        names_t = {t.name(frame_1h.names) for t in fit_t.terms}
        names_ind = {t.name(frame_1h.names) for t in fit_ind.terms}
        assert not {"y.L1", "x1.L1", "x2.L1"} & names_ov
        assert "y.L1" not in names_t and {"x1.L1", "x2.L1"} <= names_t
        assert "y.L1" in names_ind and not {"x1.L1", "x2.L1"} & names_ind

    def test_t_and_f_ov_residuals_differ(self, frame_1h):
        resid_ov, _ = restricted_residuals(frame_1h, SPEC, "f_ov")
        resid_t, _ = restricted_residuals(frame_1h, SPEC, "t")
        assert np.abs(resid_ov - resid_t).max() > 1e-6

    def test_degenerate_zero_noise(self):
        t = np.arange(80, dtype=float)
        values = np.column_stack([2.0 + 0.5 * t, np.cos(t), np.sin(t)])
        frame = TimeSeriesFrame(values, ("y", "x1", "x2"))
        with pytest.raises((DegenerateFit, RankDeficient)):
            restricted_residuals(frame, ArdlSpec("III", CONDITIONAL, 2, (1, 1)), "f_ov")


class TestRecenter:
    def test_already_centered_unchanged(self):
        col = np.array([1.0, -1.0])
        np.testing.assert_allclose(recenter(col), col)

    def test_arithmetic(self):
        np.testing.assert_allclose(recenter(np.array([1.0, 2.0, 3.0])), [-1, 0, 1])

    def test_columns_mean_zero(self):
        rng = np.random.default_rng(60)
        draws = rng.standard_normal((37, 4)) + 3.0
        centered = recenter(draws)
        sup = np.abs(draws).max()
        assert np.abs(centered.mean(axis=0)).max() <= 1e-14 * sup

    def test_empty_rejected(self):
        with pytest.raises(EmptyDistribution):
            recenter(np.empty(0))


def _synthetic_fits(coef_const_y=0.0, names=("y", "x1", "x2")):
    """Minimal intercept-only restricted fit and regressor system."""
    ols = OlsFit(
        coefficients=np.array([coef_const_y]),
        residuals=np.zeros(1),
        rss=0.0,
        dof=1,
        stderr=np.ones(1),
        sigma2=0.0,
        names=("const",),
    )
    ardl_fit = bootstrap_module.ArdlFit(
        spec=ArdlSpec("III", CONDITIONAL, 1, (1, 1)),
        restriction=DROP_LEVELS,
        a_yy=0.0,
        a_tilde_yx=np.zeros(2),
        intercept=coef_const_y,
        omega=np.zeros(2),
        short_run={},
        ols=ols,
        terms=(Term("const"),),
        effective_sample=1,
        names=names,
        dependent_index=0,
    )
    vecm = VecmFit(
        alpha0x=np.zeros(2),
        a_xx=np.zeros((2, 2)),
        a_xy=np.zeros(2),
        gamma_x=np.zeros((0, 2, 3)),
        residuals=np.zeros((1, 2)),
        p=1,
        include_y_level=False,
        terms=(Term("const"),),
        coefficients=np.zeros((2, 1)),
        fits=(),
        names=names,
        dependent_index=0,
    )
    return ardl_fit, vecm


class TestRegenerateSample:
    def test_zero_everything_is_fixed_point(self):
        fit, vecm = _synthetic_fits()
        frame = regenerate_sample(
            fit, vecm, np.zeros(5), np.zeros((5, 2)), np.zeros((1, 3))
        )
        np.testing.assert_allclose(frame.values, 0.0)
        assert frame.n_obs == 6

    def test_one_step_cumulation(self):
        fit, vecm = _synthetic_fits()
        frame = regenerate_sample(
            fit, vecm, np.array([0.5]), np.zeros((1, 2)),
            np.array([[1.0, 2.0, 3.0]]),
        )
        np.testing.assert_allclose(frame.values[1], [1.5, 2.0, 3.0])

    def test_recursion_identity_real_fit(self, frame_1h):
        """Feeding the regenerated frame back through the restricted design
        reproduces each generated step from its defining equation."""
        restricted = estimate_restricted(frame_1h, SPEC, DROP_LEVELS)
        vecm = estimate_vecm_marginal(frame_1h, p=3)
        rng = np.random.default_rng(61)
        n = frame_1h.n_obs - 3
        nu = rng.standard_normal(n)
        eps = rng.standard_normal((n, 2))
        block = frame_1h.values[10:13]
        frame_star = regenerate_sample(restricted, vecm, nu, eps, block)
        assert frame_star.n_obs == frame_1h.n_obs

        from ardlboot.ardl import _term_column

        z = frame_star.values
        dy = z[3:, 0] - z[2:-1, 0]
        cols = np.column_stack(
            [_term_column(z, t, 3) for t in restricted.terms]
        )
        np.testing.assert_allclose(
            dy - cols @ restricted.ols.coefficients, nu, atol=1e-10
        )
        for i, var in enumerate((1, 2)):
            dx = z[3:, var] - z[2:-1, var]
            cols_x = np.column_stack(
                [_term_column(z, t, 3) for t in vecm.terms]
            )
            np.testing.assert_allclose(
                dx - cols_x @ vecm.coefficients[i], eps[:, i], atol=1e-10
            )


class TestCriticalValue:
    def test_counting_definition_upper(self):
        dist = np.arange(1.0, 101.0)
        assert critical_value(dist, 0.05, "upper") == 95.0

    def test_counting_definition_lower(self):
        dist = np.arange(1.0, 101.0)
        assert critical_value(dist, 0.05, "lower") == 6.0

    def test_matches_counting_rule_enumeration(self):
        """Smallest/largest candidate whose exceedance count stays within
        floor(alpha * B), enumerated literally."""
        rng = np.random.default_rng(62)
        for b, alpha in [(100, 0.05), (37, 0.10), (250, 0.01), (99, 0.049)]:
            dist = rng.standard_normal(b)
            m = int(np.floor(alpha * b))
            upper_candidates = [
                c for c in dist if np.sum(dist > c) <= m
            ]
            lower_candidates = [
                c for c in dist if np.sum(dist < c) <= m
            ]
            assert critical_value(dist, alpha, "upper") == min(upper_candidates)
            assert critical_value(dist, alpha, "lower") == max(lower_candidates)

    def test_constant_distribution(self):
        for alpha in (0.01, 0.1, 0.4):
            assert critical_value([3.0, 3.0, 3.0], alpha, "upper") == 3.0
            assert critical_value([3.0, 3.0, 3.0], alpha, "lower") == 3.0

    def test_monotone_in_alpha(self):
        rng = np.random.default_rng(63)
        dist = rng.standard_normal(500)
        alphas = [0.01, 0.025, 0.05, 0.1, 0.2, 0.4]
        uppers = [critical_value(dist, a, "upper") for a in alphas]
        lowers = [critical_value(dist, a, "lower") for a in alphas]
        assert all(u1 >= u2 for u1, u2 in zip(uppers, uppers[1:]))
        assert all(l1 <= l2 for l1, l2 in zip(lowers, lowers[1:]))

    def test_empty_rejected(self):
        with pytest.raises(EmptyDistribution):
            critical_value([], 0.05, "upper")


class TestPValue:
    def test_extreme_observation(self):
        dist = np.arange(999.0)
        assert p_value(dist, 2000.0, "upper") == pytest.approx(1 / 1000)
        assert p_value(dist, -10.0, "lower") == pytest.approx(1 / 1000)

    def test_median_near_half(self):
        dist = np.arange(1.0, 102.0)  # odd length
        assert p_value(dist, 51.0, "upper") == pytest.approx(52 / 102)

    def test_bounds(self):
        rng = np.random.default_rng(64)
        dist = rng.standard_normal(57)
        for observed in np.linspace(-4, 4, 23):
            for tail in ("upper", "lower"):
                p = p_value(dist, observed, tail)
                assert 1 / 58 <= p <= 1.0

    def test_consistency_with_critical_value(self):
        """With alpha * (B + 1) an integer and no ties, rejection by the
        critical value coincides with p <= alpha; enumerated exhaustively."""
        rng = np.random.default_rng(65)
        alpha = 0.05
        for b in (19, 39, 59, 99, 199):
            assert (alpha * (b + 1)) % 1 == 0
            dist = rng.permutation(np.arange(1.0, b + 1.0))
            grid = np.concatenate([[0.0], np.sort(dist) + 0.5])
            cv_u = critical_value(dist, alpha, "upper")
            cv_l = critical_value(dist, alpha, "lower")
            for observed in grid:
                assert (p_value(dist, observed, "upper") <= alpha) == (observed > cv_u)
                assert (p_value(dist, observed, "lower") <= alpha) == (observed < cv_l)


class TestClassifyOutcome:
    def test_flowchart_examples(self):
        # overall test accepted in both models
        assert classify_outcome(False, False, False, False, False) is Outcome.NO_COINT
        # everything rejected: genuine cointegration
        assert classify_outcome(True, True, True, True, True) is Outcome.COINT
        # adjustment accepted, unconditional regressor-level accepted
        assert classify_outcome(True, True, False, True, False) is Outcome.DEG1_NO_X_LEVELS

    @staticmethod
    def tree_oracle(fc, fuc, t, fic, fiuc):
        if not fc:
            return Outcome.DEG_BOTH if fuc else Outcome.NO_COINT
        if not t:
            return Outcome.DEG1_X_LEVELS if fiuc else Outcome.DEG1_NO_X_LEVELS
        if fic:
            return Outcome.COINT if fiuc else Outcome.STATIONARY_Y
        return Outcome.DEG2

    def test_full_truth_table(self):
        for bits in itertools.product([False, True], repeat=5):
            assert classify_outcome(*bits) is self.tree_oracle(*bits)

    def test_total_function(self):
        outcomes = {
            classify_outcome(*bits)
            for bits in itertools.product([False, True], repeat=5)
        }
        assert outcomes == set(Outcome)


@pytest.fixture(scope="module")
def report(frame_1h):
    config = BootstrapConfig(n_replicates=199, alpha=0.05, seed=7)
    return bootstrap_tests(frame_1h, SPEC, config)


class TestBootstrapEngine:
    def test_distribution_shapes(self, report):
        for test in ("f_ov", "t", "f_ind"):
            dist = report.distributions[test]
            assert dist.shape == (199,)
            assert np.isfinite(dist).all()
            assert np.all(np.diff(dist) >= 0)  # stored sorted

    def test_deterministic_bit_identical(self, frame_1h, report):
        config = BootstrapConfig(n_replicates=199, alpha=0.05, seed=7)
        again = bootstrap_tests(frame_1h, SPEC, config)
        for test in ("f_ov", "t", "f_ind"):
            assert np.array_equal(
                report.distributions[test], again.distributions[test]
            )
            assert report.critical_values[test] == again.critical_values[test]
            assert report.p_values[test] == again.p_values[test]

    def test_critical_values_monotone(self, report):
        dist = report.distributions["f_ov"]
        c90 = critical_value(dist, 0.10, "upper")
        c95 = critical_value(dist, 0.05, "upper")
        c99 = critical_value(dist, 0.01, "upper")
        assert c90 <= c95 <= c99

    def test_strong_cointegration_rejects(self, report):
        assert report.rejected["f_ov"]
        assert report.rejected["t"]
        assert report.rejected["f_ind"]
        assert report.p_values["f_ov"] <= 0.05

    def test_requested_tests_only(self, frame_1h):
        config = BootstrapConfig(n_replicates=99, seed=3, tests=("t",))
        report = bootstrap_tests(frame_1h, SPEC, config)
        assert tuple(report.distributions) == ("t",)

    def test_config_validation(self):
        with pytest.raises(InputError):
            BootstrapConfig(n_replicates=50)
        with pytest.raises(InputError):
            BootstrapConfig(alpha=0.6)
        with pytest.raises(InputError):
            BootstrapConfig(tests=("chi2",))


class TestDiscardPolicy:
    def test_replicate_redraw_and_count(self, frame_1h, monkeypatch):
        """Force a few replicates over the explosion limit; the engine must
        redraw exactly those and report the discard count."""
        restricted = estimate_restricted(frame_1h, SPEC, DROP_LEVELS)
        vecm = estimate_vecm_marginal(frame_1h, p=3)
        config = BootstrapConfig(n_replicates=199, seed=11, tests=("f_ov",))

        maxima = []
        original = bootstrap_module._regenerate_batch

        def recording(*args, **kwargs):
            z = original(*args, **kwargs)
            maxima.append(np.abs(z).max(axis=(1, 2)))
            return z

        monkeypatch.setattr(bootstrap_module, "_regenerate_batch", recording)
        baseline, discards = _null_distribution(
            frame_1h, SPEC, restricted, vecm, "f_ov", config
        )
        assert discards == 0
        monkeypatch.setattr(bootstrap_module, "_regenerate_batch", original)

        first_pass = maxima[0]
        limit = float(np.sort(first_pass)[-4])  # exactly 3 replicates above
        monkeypatch.setattr(bootstrap_module, "EXPLOSION_LIMIT", limit)
        dist, discards = _null_distribution(
            frame_1h, SPEC, restricted, vecm, "f_ov", config
        )
        assert discards >= 3
        assert discards <= int(0.1 * 199)
        assert np.isfinite(dist).all() and dist.shape == (199,)

    def test_too_many_discards(self, frame_1h, monkeypatch):
        monkeypatch.setattr(bootstrap_module, "EXPLOSION_LIMIT", 1e-6)
        config = BootstrapConfig(n_replicates=99, seed=5, tests=("f_ov",))
        with pytest.raises(TooManyDiscards):
            bootstrap_tests(frame_1h, SPEC, config)
