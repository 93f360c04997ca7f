"""Acceptance suite.

Each test prints one ``[PASS]/[FAIL]`` line per criterion (visible with
``pytest -s``).  The Monte Carlo criteria run 200 repetitions with 200
bootstrap replicates at T=200 and check rejection frequencies against
binomial-noise bands; expect a couple of minutes on two cores.
"""

import os
from fractions import Fraction

import numpy as np
import pytest

from ardlboot import (
    ArdlSpec,
    DgpConfig,
    TimeSeriesFrame,
    adf_test,
    bootstrap_tests,
    classify_outcome,
    critical_value,
    derive_conditional_params,
    estimate_ardl,
    estimate_restricted,
    estimate_vecm_marginal,
    f_statistic,
    load_csv,
    make_config,
    monte_carlo,
    ols_fit,
    p_value,
    recenter,
    regenerate_sample,
    t_statistic,
)
from ardlboot.ardl import CONDITIONAL, DROP_LEVELS, UNCONDITIONAL
from ardlboot.bootstrap import BootstrapConfig, Outcome
from ardlboot.regression import DesignMatrix

from conftest import normal_equations_ols

DATA = os.path.join(os.path.dirname(__file__), "..", "data",
                    "consumption_income_investment.csv")

MC_REPS = 200
MC_BOOT = 200
MC_T = 200
ALPHA = 0.05
WORKERS = min(4, os.cpu_count() or 1)


def check(label: str, passed: bool, detail: str = ""):
    import sys

    line = f"[{'PASS' if passed else 'FAIL'}] {label}" + (f"  ({detail})" if detail else "")
    # bypass pytest's capture so the line shows in plain `pytest -v` logs
    sys.__stdout__.write("\n" + line + "\n")
    sys.__stdout__.flush()
    assert passed, f"{label}: {detail}"


def mc_cell(dgp_id, conditioning, tests, seed):
    config = make_config(dgp_id, "III", n_obs=MC_T, seed=seed)
    boot = BootstrapConfig(
        n_replicates=MC_BOOT, alpha=ALPHA, seed=seed, tests=tests
    )
    result = monte_carlo(
        dgp_id, "III", conditioning, MC_REPS, config, boot, workers=WORKERS
    )
    assert result.failures == 0
    return result.rejection_rates


@pytest.fixture(scope="module")
def rates_1h():
    return mc_cell("1H", CONDITIONAL, ("f_ov", "t", "f_ind"), seed=101)


@pytest.fixture(scope="module")
def rates_3a():
    return mc_cell("3A", CONDITIONAL, ("f_ov", "t", "f_ind"), seed=102)


@pytest.fixture(scope="module")
def rates_6():
    cond = mc_cell("6", CONDITIONAL, ("f_ind",), seed=103)
    uncond = mc_cell("6", UNCONDITIONAL, ("f_ind",), seed=103)
    return cond, uncond


@pytest.fixture(scope="module")
def rates_4b():
    return mc_cell("4B", CONDITIONAL, ("f_ov", "t"), seed=104)


class TestCriterion1ParameterDerivation:
    def test_derivation_exactness(self):
        """Conditioning algebra reproduces the published parameter block."""
        params = derive_conditional_params(DgpConfig())
        s = [[Fraction(169, 100), Fraction(39, 100), Fraction(52, 100)],
             [Fraction(39, 100), Fraction(144, 100), Fraction(-30, 100)],
             [Fraction(52, 100), Fraction(-30, 100), Fraction(1)]]
        det = s[1][1] * s[2][2] - s[1][2] * s[2][1]
        w1 = (s[0][1] * s[2][2] - s[0][2] * s[2][1]) / det
        w2 = (s[0][2] * s[1][1] - s[0][1] * s[1][2]) / det
        ok = abs(params.omega[0] - float(w1)) < 1e-10
        ok &= abs(params.omega[1] - float(w2)) < 1e-10
        ok &= abs(params.omega[0] - 0.404444444444444) < 1e-10
        ok &= abs(params.omega[1] - 0.641333333333333) < 1e-10

        from ardlboot.dgp import A_XX_COINTEGRATED, A_XX_STATIONARY
        from dataclasses import replace

        pa = derive_conditional_params(replace(DgpConfig(), a_xx=A_XX_COINTEGRATED))
        a_c_a = float(Fraction(77, 100) * w2)
        ok &= np.allclose(pa.a_c_yx, [a_c_a, a_c_a], atol=1e-10)
        ok &= np.allclose(pa.a_c_yx, [0.493826666666667] * 2, atol=1e-10)
        ok &= np.allclose(pa.a_tilde_yx, [0.6 - a_c_a, 0.4 - a_c_a], atol=1e-10)
        # published four-decimal prints of the same pair
        ok &= np.allclose(pa.a_tilde_yx, [0.1062, -0.0938], atol=5e-5)

        pb = derive_conditional_params(replace(DgpConfig(), a_xx=A_XX_STATIONARY))
        ok &= np.allclose(pb.a_c_yx, [0.442, 0.0306222222222222], atol=1e-10)
        ok &= np.allclose(pb.a_tilde_yx, [0.158, 0.369377777777778], atol=1e-10)
        check("criterion 1: conditional parameter derivation to 1e-10", bool(ok))


class TestCriterion2MonteCarlo:
    def test_dgp1h_power(self, rates_1h):
        detail = ", ".join(f"{k}={v:.3f}" for k, v in rates_1h.items())
        check(
            "criterion 2a: strong cointegration power >= 0.95 (all tests)",
            all(rates_1h[t] >= 0.95 for t in ("f_ov", "t", "f_ind")),
            detail,
        )

    def test_dgp3a_size(self, rates_3a):
        detail = f"f_ov={rates_3a['f_ov']:.3f}, f_ind={rates_3a['f_ind']:.3f}"
        check(
            "criterion 2b: double-degenerate size f_ov in [0.005,0.10], "
            "f_ind in [0.005,0.11]",
            0.005 <= rates_3a["f_ov"] <= 0.10
            and 0.005 <= rates_3a["f_ind"] <= 0.11,
            detail,
        )

    def test_dgp6_conditional_unconditional_contrast(self, rates_6):
        cond, uncond = rates_6
        detail = f"conditional={cond['f_ind']:.3f}, unconditional={uncond['f_ind']:.3f}"
        check(
            "criterion 2c: second-type degeneracy, conditional f_ind <= 0.12 "
            "vs unconditional >= 0.80",
            cond["f_ind"] <= 0.12 and uncond["f_ind"] >= 0.80,
            detail,
        )

    def test_dgp4b_coverage_and_power(self, rates_4b):
        detail = f"t={rates_4b['t']:.3f}, f_ov={rates_4b['f_ov']:.3f}"
        check(
            "criterion 2d: first-type degeneracy, t coverage in [0.01,0.12] "
            "with f_ov power >= 0.55",
            0.01 <= rates_4b["t"] <= 0.12 and rates_4b["f_ov"] >= 0.55,
            detail,
        )


@pytest.fixture(scope="module")
def frame():
    if not os.path.exists(DATA):
        pytest.skip("quarterly dataset not bundled; criterion waived")
    return load_csv(DATA, "cons", ["invest", "income"], log_transform=True)


class TestCriterion3Empirical:
    def test_observed_statistics(self, frame):
        spec3 = ArdlSpec("III", CONDITIONAL, 2, (1, 1))
        _, stats3 = estimate_ardl(frame, spec3)
        spec2 = ArdlSpec("II", CONDITIONAL, 2, (1, 1))
        _, stats2 = estimate_ardl(frame, spec2)
        ok = (
            abs(stats3.f_ov - 10.751) <= 0.05
            and abs(stats3.t - (-5.608)) <= 0.05
            and abs(stats3.f_ind - 15.636) <= 0.05
            and abs(stats2.f_ov - 18.019) <= 0.05
        )
        check(
            "criterion 3a: quarterly consumption statistics within 0.05 of "
            "(10.751, -5.608, 15.636; 18.019)",
            ok,
            f"got ({stats3.f_ov:.3f}, {stats3.t:.3f}, {stats3.f_ind:.3f}; "
            f"{stats2.f_ov:.3f})",
        )

    def test_bootstrap_p_values(self, frame):
        spec3 = ArdlSpec("III", CONDITIONAL, 2, (1, 1))
        config = BootstrapConfig(n_replicates=1999, alpha=ALPHA, seed=2024)
        report = bootstrap_tests(frame, spec3, config)
        ok = all(report.p_values[t] <= 0.005 for t in ("f_ov", "t", "f_ind"))
        check(
            "criterion 3b: bootstrap p-values <= 0.005 at B=1999",
            ok,
            ", ".join(f"{k}={v:.4f}" for k, v in report.p_values.items()),
        )


class TestCriterion4OracleEquivalence:
    def test_thousand_random_instances(self):
        """OLS, F, t, the regressor system and the unit-root regression all
        agree with brute-force normal-equations implementations."""
        rng = np.random.default_rng(424242)
        for i in range(1000):
            n = int(rng.integers(30, 60))
            k = int(rng.integers(2, 6))
            data = rng.standard_normal((n, k))
            y = rng.standard_normal(n)
            design = DesignMatrix(data, tuple(f"c{j}" for j in range(k)))
            fit = ols_fit(design, y)
            oracle = normal_equations_ols(data, y)
            np.testing.assert_allclose(
                fit.coefficients, oracle["beta"], rtol=1e-9, atol=1e-9
            )
            np.testing.assert_allclose(fit.stderr, oracle["se"], rtol=1e-9, atol=1e-9)

            q = max(1, k - 2)
            sub = DesignMatrix(data[:, : k - q], tuple(f"c{j}" for j in range(k - q)))
            lean = ols_fit(sub, y)
            lean_oracle = normal_equations_ols(data[:, : k - q], y)
            want_f = ((lean_oracle["rss"] - oracle["rss"]) / q) / (
                oracle["rss"] / oracle["dof"]
            )
            assert f_statistic(fit, lean, q) == pytest.approx(
                max(want_f, 0.0), rel=1e-9, abs=1e-9
            )
            col = int(rng.integers(0, k))
            assert t_statistic(fit, col) == pytest.approx(
                oracle["beta"][col] / oracle["se"][col], rel=1e-9, abs=1e-9
            )

            if i % 10 == 0:
                t_len = int(rng.integers(50, 90))
                walk = np.cumsum(rng.standard_normal((t_len, 3)), axis=0)
                frame = TimeSeriesFrame(walk, ("y", "x1", "x2"))
                p = int(rng.integers(1, 3))
                vecm = estimate_vecm_marginal(frame, p=p)
                rows = np.arange(p, t_len)
                dz = walk[1:] - walk[:-1]
                cols = [np.ones(len(rows)), walk[rows - 1, 1], walk[rows - 1, 2]]
                for j in range(1, p):
                    cols.extend(dz[rows - 1 - j, v] for v in (0, 1, 2))
                cols = np.column_stack(cols)
                for eq, var in enumerate((1, 2)):
                    target = walk[rows, var] - walk[rows - 1, var]
                    eq_oracle = normal_equations_ols(cols, target)
                    np.testing.assert_allclose(
                        vecm.coefficients[eq], eq_oracle["beta"],
                        rtol=1e-9, atol=1e-9,
                    )

                series = np.cumsum(rng.standard_normal(t_len))
                lags = int(rng.integers(0, 4))
                result = adf_test(series, lags=lags, deterministic="drift")
                dy = np.diff(series)
                rows = np.arange(lags, len(dy))
                cols = np.column_stack(
                    [np.ones(len(rows)), series[rows]]
                    + [dy[rows - j] for j in range(1, lags + 1)]
                )
                a_oracle = normal_equations_ols(cols, dy[rows])
                assert result.statistic == pytest.approx(
                    a_oracle["beta"][1] / a_oracle["se"][1], rel=1e-9, abs=1e-9
                )
        check("criterion 4: 1000 random instances match brute-force oracles at 1e-9", True)


class TestCriterion5Properties:
    def test_recentering(self):
        rng = np.random.default_rng(55)
        for _ in range(200):
            draws = rng.standard_normal((int(rng.integers(2, 80)), 3)) + rng.normal()
            centered = recenter(draws)
            sup = max(np.abs(draws).max(), 1e-12)
            assert np.abs(centered.mean(axis=0)).max() <= 1e-14 * sup
        check("criterion 5a: recentered draws have exactly zero mean", True)

    def test_regeneration_identity(self, frame_1h):
        from ardlboot.ardl import _term_column

        spec = ArdlSpec("III", CONDITIONAL, 3, (3, 3))
        restricted = estimate_restricted(frame_1h, spec, DROP_LEVELS)
        vecm = estimate_vecm_marginal(frame_1h, p=3)
        rng = np.random.default_rng(56)
        ok = True
        for _ in range(20):
            n = frame_1h.n_obs - 3
            nu = rng.standard_normal(n)
            eps = rng.standard_normal((n, 2))
            start = int(rng.integers(0, frame_1h.n_obs - 3 + 1))
            block = frame_1h.values[start : start + 3]
            star = regenerate_sample(restricted, vecm, nu, eps, block)
            z = star.values
            dy = z[3:, 0] - z[2:-1, 0]
            cols = np.column_stack([_term_column(z, t, 3) for t in restricted.terms])
            ok &= np.abs(dy - cols @ restricted.ols.coefficients - nu).max() < 1e-9
        check("criterion 5b: regeneration reproduces its innovations (1e-9)", bool(ok))

    def test_critical_value_monotone_in_alpha(self):
        rng = np.random.default_rng(57)
        ok = True
        for _ in range(100):
            dist = rng.standard_normal(int(rng.integers(99, 400)))
            alphas = np.sort(rng.uniform(0.01, 0.49, size=6))
            uppers = [critical_value(dist, a, "upper") for a in alphas]
            lowers = [critical_value(dist, a, "lower") for a in alphas]
            ok &= all(u1 >= u2 for u1, u2 in zip(uppers, uppers[1:]))
            ok &= all(l1 <= l2 for l1, l2 in zip(lowers, lowers[1:]))
        check("criterion 5c: critical values monotone in alpha", bool(ok))

    def test_p_value_critical_value_consistency(self):
        rng = np.random.default_rng(58)
        ok = True
        for b in (19, 39, 59, 99, 199, 399):
            dist = rng.permutation(np.arange(1.0, b + 1.0))
            cv_u = critical_value(dist, 0.05, "upper")
            cv_l = critical_value(dist, 0.05, "lower")
            for observed in np.concatenate([[0.0], np.sort(dist) + 0.5]):
                ok &= (p_value(dist, observed, "upper") <= 0.05) == (observed > cv_u)
                ok &= (p_value(dist, observed, "lower") <= 0.05) == (observed < cv_l)
        check(
            "criterion 5d: p-value / critical-value rejection consistency "
            "(exhaustive small-B)",
            bool(ok),
        )

    def test_classifier_truth_table(self):
        import itertools

        def oracle(fc, fuc, t, fic, fiuc):
            if not fc:
                return Outcome.DEG_BOTH if fuc else Outcome.NO_COINT
            if not t:
                return Outcome.DEG1_X_LEVELS if fiuc else Outcome.DEG1_NO_X_LEVELS
            if not fic:
                return Outcome.DEG2
            return Outcome.COINT if fiuc else Outcome.STATIONARY_Y

        ok = all(
            classify_outcome(*bits) is oracle(*bits)
            for bits in itertools.product([False, True], repeat=5)
        )
        check("criterion 5e: outcome classifier equals the decision tree on all 32 tuples", ok)

    def test_determinism_across_worker_counts(self):
        config = make_config("3A", "III", n_obs=100, seed=909)
        boot = BootstrapConfig(n_replicates=99, seed=909, tests=("f_ov",))
        one = monte_carlo("3A", "III", CONDITIONAL, 4, config, boot, workers=1)
        two = monte_carlo("3A", "III", CONDITIONAL, 4, config, boot, workers=2)
        check(
            "criterion 5f: identical results for any worker count",
            one.rejections == two.rejections and one.failures == two.failures,
        )


class TestCriterion6StatisticalSanity:
    def test_null_rejection_within_binomial_band(self, rates_3a, rates_6):
        band = 3.0 * np.sqrt(ALPHA * (1 - ALPHA) / MC_REPS)
        low, high = ALPHA - band, ALPHA + band
        cond6, _ = rates_6
        sizes = {
            "f_ov under double degeneracy": rates_3a["f_ov"],
            "t under double degeneracy": rates_3a["t"],
            "f_ind under double degeneracy": rates_3a["f_ind"],
            "f_ind under second-type degeneracy": cond6["f_ind"],
        }
        detail = ", ".join(f"{k}: {v:.3f}" for k, v in sizes.items())
        check(
            f"criterion 6: null rejection rates within {ALPHA} +/- {band:.4f}",
            all(low <= v <= high for v in sizes.values()),
            detail,
        )
