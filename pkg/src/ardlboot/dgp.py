"""Trivariate data-generating processes for the simulation study.

One dependent variable and two regressors are generated recursively from a
conditional error-correction system with two lagged-difference terms:

    d(x_t) = a0x - A_xx x_{t-1} + G1_x d(z_{t-1}) + G2_x d(z_{t-2}) + e_xt
    d(y_t) = a0y - a_yy y_{t-1} - at' x_{t-1}
             + g1' d(z_{t-1}) + g2' d(z_{t-2}) + w' d(x_t) + v_t

with jointly normal innovations.  The conditional quantities (w, the
conditional short-run vectors g_j, the conditional level coefficients at)
are all derived from the unconditional parameter block:

    w  = Sigma_xx^{-1} sigma_xy          v_t = e_yt - w' e_xt
    g_j = (row_y of G_j) - w' (rows_x of G_j)
    at  = a_yx_uc - w' A_xx

Ten process labels cover cointegration at two strengths (1H, 1L), both
degeneracy types singly and together, and cointegrated (A, rank-1
``A_xx``) versus stationary (B, full-rank ``A_xx``) regressors:

    1H: a_yy=0.70, a_yx_uc=(0.6, 0.4), A      5: a_yy=0.70, a_yx_uc=0, A
    1L: a_yy=0.35, a_yx_uc=(0.3, 0.2), A      6: a_yy=0.70, a_yx_uc=w'A_xx, A
    2A/2B: a_yy=0, a_yx_uc=(0.6, 0.4)         (so the conditional levels
    3A/3B: a_yy=0, a_yx_uc=w'A_xx (at = 0)     vanish under 6 and only the
    4A/4B: a_yy=0, a_yx_uc=(0, 0)              unconditional ones under 3)

Under deterministic case II the intercept row is tied to the level
coefficients (a0 = A~ mu); under case III the dependent equation gets the
free intercept ``alpha0y_unrestricted`` instead.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .ardl import CASE_III, CASES, CONDITIONINGS, ArdlSpec
from .bootstrap import BootstrapConfig, bootstrap_tests
from .exceptions import (
    BootstrapError,
    DimensionMismatch,
    EstimationError,
    InputError,
    SingularSigmaXX,
)
from .frame import TimeSeriesFrame

VARIABLE_NAMES = ("y", "x1", "x2")

#: Innovation covariance of (y, x1, x2).
SIGMA = np.array(
    [
        [1.69, 0.39, 0.52],
        [0.39, 1.44, -0.30],
        [0.52, -0.30, 1.00],
    ]
)

#: Unconditional short-run matrices (two difference lags).
GAMMA1 = np.array(
    [
        [0.60, 0.00, 0.20],
        [0.10, -0.30, 0.00],
        [0.00, -0.30, 0.20],
    ]
)
GAMMA2 = np.array(
    [
        [0.20, 0.00, 0.10],
        [0.05, -0.15, 0.00],
        [0.00, 0.00, 0.10],
    ]
)

#: Process mean vector.
MU = np.array([0.2, 0.3, 0.4])

#: Rank-1 regressor level block: the two regressors are cointegrated.
A_XX_COINTEGRATED = np.outer([0.0, 0.7], [1.1, 1.1])

#: Full-rank regressor level block: the two regressors are stationary.
A_XX_STATIONARY = np.array([[0.3, -0.4], [0.5, 0.3]])

DGP_IDS = ("1H", "1L", "2A", "2B", "3A", "3B", "4A", "4B", "5", "6")


@dataclass(frozen=True)
class DgpConfig:
    """Full parameterization of the simulator."""

    sigma: np.ndarray = field(default_factory=lambda: SIGMA.copy())
    gamma1: np.ndarray = field(default_factory=lambda: GAMMA1.copy())
    gamma2: np.ndarray = field(default_factory=lambda: GAMMA2.copy())
    a_xx: np.ndarray = field(default_factory=lambda: A_XX_COINTEGRATED.copy())
    a_yy: float = 0.7
    a_yx_uc: np.ndarray = field(default_factory=lambda: np.array([0.6, 0.4]))
    mu: np.ndarray = field(default_factory=lambda: MU.copy())
    case: str = CASE_III
    alpha0y_unrestricted: float = 0.3
    n_obs: int = 200
    burn_in: int = 50
    seed: int = 0

    def __post_init__(self):
        for name in ("sigma", "gamma1", "gamma2", "a_xx", "a_yx_uc", "mu"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), float))
        if self.sigma.shape != (3, 3):
            raise DimensionMismatch("sigma must be 3x3")
        if not np.allclose(self.sigma, self.sigma.T, atol=1e-12):
            raise InputError("sigma must be symmetric")
        if np.linalg.eigvalsh(self.sigma).min() <= 0.0:
            raise InputError("sigma must be positive definite")
        if self.case not in CASES:
            raise InputError(f"case must be one of {CASES}")
        if self.n_obs < 1:
            raise InputError("n_obs must be positive")
        if self.burn_in < self.n_lags - 1:
            raise InputError(f"burn_in must be at least {self.n_lags - 1}")

    @property
    def n_lags(self) -> int:
        """Level lag order of the generating recursion (two diff lags)."""
        return 3


@dataclass(frozen=True)
class ConditionalParams:
    """Parameters of the conditional system implied by a configuration."""

    omega: np.ndarray         # (2,)
    sigma_y_x: float          # conditional innovation variance of y
    gamma_yx: np.ndarray      # (2, 3) conditional short-run rows
    a_c_yx: np.ndarray        # (2,) level part introduced by conditioning
    a_tilde_yx: np.ndarray    # (2,) conditional level coefficients
    alpha0_c: np.ndarray      # (3,) intercept A~ mu of the tied-intercept case


def derive_conditional_params(config: DgpConfig) -> ConditionalParams:
    """Conditional parameters implied by the unconditional block."""
    sigma = config.sigma
    sigma_xx = sigma[1:, 1:]
    sigma_xy = sigma[1:, 0]
    sv = np.linalg.svd(sigma_xx, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] / sv[0] < 1e-12:
        raise SingularSigmaXX("regressor covariance block is singular")
    omega = np.linalg.solve(sigma_xx, sigma_xy)
    sigma_y_x = float(sigma[0, 0] - omega @ sigma_xy)
    gamma_yx = np.vstack(
        [g[0] - omega @ g[1:] for g in (config.gamma1, config.gamma2)]
    )
    a_c = omega @ config.a_xx
    a_tilde = config.a_yx_uc - a_c
    a_matrix = np.zeros((3, 3))
    a_matrix[0, 0] = config.a_yy
    a_matrix[0, 1:] = a_tilde
    a_matrix[1:, 1:] = config.a_xx
    alpha0_c = a_matrix @ config.mu
    return ConditionalParams(
        omega=omega,
        sigma_y_x=sigma_y_x,
        gamma_yx=gamma_yx,
        a_c_yx=a_c,
        a_tilde_yx=a_tilde,
        alpha0_c=alpha0_c,
    )


def dgp_overrides(dgp_id: str, sigma=None) -> dict:
    """Level-parameter overrides of one process label."""
    if dgp_id not in DGP_IDS:
        raise InputError(f"dgp must be one of {DGP_IDS}, got {dgp_id!r}")
    sigma = SIGMA if sigma is None else np.asarray(sigma, float)
    omega = np.linalg.solve(sigma[1:, 1:], sigma[1:, 0])
    a_xx = A_XX_STATIONARY if dgp_id.endswith("B") else A_XX_COINTEGRATED
    a_c = omega @ a_xx
    table = {
        "1H": (0.70, np.array([0.6, 0.4])),
        "1L": (0.35, np.array([0.3, 0.2])),
        "2A": (0.0, np.array([0.6, 0.4])),
        "2B": (0.0, np.array([0.6, 0.4])),
        "3A": (0.0, a_c),
        "3B": (0.0, a_c),
        "4A": (0.0, np.zeros(2)),
        "4B": (0.0, np.zeros(2)),
        "5": (0.70, np.zeros(2)),
        "6": (0.70, a_c),
    }
    a_yy, a_yx_uc = table[dgp_id]
    return {"a_yy": a_yy, "a_yx_uc": a_yx_uc, "a_xx": a_xx}


def make_config(dgp_id: str, case: str = CASE_III, **kwargs) -> DgpConfig:
    """Baseline configuration with one process label applied."""
    base = DgpConfig(case=case, **kwargs)
    return replace(base, **dgp_overrides(dgp_id, base.sigma))


def simulate_dgp(
    config: DgpConfig, dgp_id: str | None = None, return_details: bool = False
):
    """Generate one sample path, one observation at a time.

    When ``dgp_id`` is given, its level parameters override the ones in
    ``config``.  Starting values: levels begin at zero, the first two
    difference rows are the innovation rows themselves, and ``burn_in``
    initial observations are discarded so the arbitrary start washes out.

    With ``return_details=True`` also returns a dict with the innovation
    and difference paths over the kept sample (for recursion checks).
    """
    if dgp_id is not None:
        config = replace(config, **dgp_overrides(dgp_id, config.sigma))
    params = derive_conditional_params(config)
    p = config.n_lags
    total = config.burn_in + config.n_obs

    rng = np.random.default_rng(np.random.SeedSequence(int(config.seed)))
    eps = rng.multivariate_normal(
        np.zeros(3), config.sigma, size=total, method="cholesky"
    )
    nu = eps[:, 0] - eps[:, 1:] @ params.omega

    if config.case == CASE_III:
        alpha0y = config.alpha0y_unrestricted
    else:
        alpha0y = float(params.alpha0_c[0])
    alpha0x = params.alpha0_c[1:]

    gx = [g[1:] for g in (config.gamma1, config.gamma2)]  # (2,3) each
    gy = params.gamma_yx                                  # (2,3)

    z = np.zeros((total + 1, 3))
    dz = np.zeros((total + 1, 3))
    for t in range(1, p):
        dz[t] = np.concatenate([[nu[t - 1]], eps[t - 1, 1:]])
        z[t] = z[t - 1] + dz[t]
    for t in range(p, total + 1):
        dx = (
            alpha0x
            - config.a_xx @ z[t - 1, 1:]
            + gx[0] @ dz[t - 1]
            + gx[1] @ dz[t - 2]
            + eps[t - 1, 1:]
        )
        dy = (
            alpha0y
            - config.a_yy * z[t - 1, 0]
            - params.a_tilde_yx @ z[t - 1, 1:]
            + gy[0] @ dz[t - 1]
            + gy[1] @ dz[t - 2]
            + params.omega @ dx
            + nu[t - 1]
        )
        dz[t, 0] = dy
        dz[t, 1:] = dx
        z[t] = z[t - 1] + dz[t]

    kept = slice(config.burn_in + 1, total + 1)
    frame = TimeSeriesFrame(z[kept], VARIABLE_NAMES, dependent_index=0)
    if not return_details:
        return frame
    details = {
        "nu": nu[config.burn_in:],
        "eps_x": eps[config.burn_in:, 1:],
        "dz": dz[kept],
        "params": params,
        "alpha0y": alpha0y,
        "alpha0x": alpha0x,
    }
    return frame, details


def default_spec(case: str, conditioning: str) -> ArdlSpec:
    """Estimation spec matching the generating recursion (two diff lags)."""
    return ArdlSpec(case=case, conditioning=conditioning, p_y=3, p_x=(3, 3))


@dataclass(frozen=True)
class MonteCarloResult:
    """Rejection frequencies of one (process, case, conditioning) cell."""

    dgp_id: str
    case: str
    conditioning: str
    n_reps: int
    alpha: float
    rejections: dict[str, int]
    failures: int
    distribution_stats: dict[str, dict[str, float]]
    distributions: dict[str, np.ndarray] | None = None

    @property
    def rejection_rates(self) -> dict[str, float]:
        done = self.n_reps - self.failures
        return {t: c / done if done else float("nan") for t, c in self.rejections.items()}


def _mc_repetition(args):
    """One simulate-and-test cycle (top level so process pools can pickle it)."""
    (rep, dgp_id, config, spec, boot, collect) = args
    ss = np.random.SeedSequence(int(config.seed), spawn_key=(rep,))
    dgp_seed, boot_seed = (int(s) for s in ss.generate_state(2, np.uint64))
    frame = simulate_dgp(replace(config, seed=dgp_seed), dgp_id)
    try:
        report = bootstrap_tests(frame, spec, replace(boot, seed=boot_seed))
    except (EstimationError, BootstrapError) as exc:
        return rep, None, str(exc)
    rejected = {t: bool(report.rejected[t]) for t in boot.tests}
    dists = {t: report.distributions[t] for t in boot.tests} if collect else None
    return rep, (rejected, dists), None


def monte_carlo(
    dgp_id: str,
    case: str,
    conditioning: str,
    n_reps: int,
    config: DgpConfig | None = None,
    boot: BootstrapConfig | None = None,
    spec: ArdlSpec | None = None,
    workers: int = 1,
    collect_distributions: bool = False,
) -> MonteCarloResult:
    """Estimate size/power of the bootstrap tests under one process.

    Every repetition simulates a fresh sample and runs the bootstrap; the
    repetition seeds derive from ``(config.seed, repetition index)``, so
    the result is identical for any ``workers`` count.  Repetitions that
    fail to estimate are counted and skipped.
    """
    if conditioning not in CONDITIONINGS:
        raise InputError(f"conditioning must be one of {CONDITIONINGS}")
    if n_reps < 1:
        raise InputError("n_reps must be >= 1")
    config = make_config(dgp_id, case) if config is None else config
    boot = BootstrapConfig() if boot is None else boot
    spec = default_spec(case, conditioning) if spec is None else spec

    tasks = [
        (rep, dgp_id, config, spec, boot, collect_distributions)
        for rep in range(n_reps)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            raw = list(pool.map(_mc_repetition, tasks, chunksize=1))
    else:
        raw = [_mc_repetition(t) for t in tasks]
    raw.sort(key=lambda r: r[0])

    rejections = {t: 0 for t in boot.tests}
    pooled: dict[str, list[np.ndarray]] = {t: [] for t in boot.tests}
    failures = 0
    for _, payload, _error in raw:
        if payload is None:
            failures += 1
            continue
        rejected, dists = payload
        for t in boot.tests:
            rejections[t] += int(rejected[t])
        if collect_distributions:
            for t in boot.tests:
                pooled[t].append(dists[t])

    stats: dict[str, dict[str, float]] = {}
    distributions = {} if collect_distributions else None
    for t in boot.tests:
        if collect_distributions and pooled[t]:
            values = np.concatenate(pooled[t])
            distributions[t] = values
            qs = np.quantile(values, [0.05, 0.25, 0.5, 0.75, 0.95])
            stats[t] = {
                "mean": float(values.mean()),
                "q05": float(qs[0]),
                "q25": float(qs[1]),
                "q50": float(qs[2]),
                "q75": float(qs[3]),
                "q95": float(qs[4]),
            }
        else:
            stats[t] = {}
    return MonteCarloResult(
        dgp_id=dgp_id,
        case=case,
        conditioning=conditioning,
        n_reps=n_reps,
        alpha=boot.alpha,
        rejections=rejections,
        failures=failures,
        distribution_stats=stats,
        distributions=distributions,
    )
