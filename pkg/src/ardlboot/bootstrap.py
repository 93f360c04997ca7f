"""Residual bootstrap of the ARDL cointegration statistics.

For each requested test the procedure is:

1. estimate the unrestricted equation and the observed statistic;
2. re-estimate with the test's null imposed and keep those residuals;
3. estimate the regressor system and keep its residuals;
4. B times: resample both residual sets with replacement (joint rows),
   re-center them, regenerate a full sample recursively from the restricted
   equation and the regressor system (initial values are a block of
   consecutive original rows drawn at random), re-estimate the unrestricted
   equation on the regenerated data and record the statistic;
5. read the critical value off the simulated null distribution and compare.

Critical-value convention (documented because the counting rule admits two
readings): with m = floor(alpha * B) and the replicate statistics sorted
increasingly, the upper-tail critical value is the (B - m)-th smallest
value, i.e. the smallest c with at most m replicates above it; the
lower-tail value is the (m + 1)-th smallest, i.e. the largest c with at
most m replicates below it.  F statistics use the upper tail, the t
statistic the lower tail.  The p-value estimator is (1 + count) / (B + 1),
which never returns zero.

Replicates are regenerated from per-replicate seeds derived from
(master seed, test, replicate index, attempt), so results do not depend on
execution order or batching.  A replicate whose regenerated path explodes
(or whose design becomes collinear) is redrawn under the next attempt
number; redraws are capped at 10% of B.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .ardl import (
    CASE_II,
    DROP_LEVELS,
    DROP_X_LEVELS,
    DROP_Y_LEVEL,
    RESTRICTION_NONE,
    ArdlFit,
    ArdlSpec,
    Term,
    TestStatistics,
    ardl_terms,
    estimate_ardl,
    estimate_restricted,
)
from .exceptions import (
    DimensionMismatch,
    EmptyDistribution,
    InputError,
    NonFiniteInput,
    NonFinitePropagation,
    TooManyDiscards,
)
from .frame import TimeSeriesFrame
from .regression import DEGENERATE_RSS_RTOL, RCOND_MIN
from .vecm import VecmFit, estimate_vecm_marginal

TESTS = ("f_ov", "t", "f_ind")

_TEST_CODE = {"f_ov": 0, "t": 1, "f_ind": 2}
_TEST_NULL = {"f_ov": DROP_LEVELS, "t": DROP_Y_LEVEL, "f_ind": DROP_X_LEVELS}
_TEST_TAIL = {"f_ov": "upper", "t": "lower", "f_ind": "upper"}

#: Absolute value beyond which a regenerated path counts as explosive.
EXPLOSION_LIMIT = 1e12

#: Maximum share of replicates that may be discarded and redrawn.
MAX_DISCARD_FRACTION = 0.10


@dataclass(frozen=True)
class BootstrapConfig:
    """Replication count, significance level, master seed and test set."""

    n_replicates: int = 1999
    alpha: float = 0.05
    seed: int = 0
    tests: tuple[str, ...] = TESTS

    def __post_init__(self):
        object.__setattr__(self, "tests", tuple(self.tests))
        if self.n_replicates < 99:
            raise InputError("need at least 99 bootstrap replicates")
        if not 0.0 < self.alpha < 0.5:
            raise InputError("alpha must lie in (0, 0.5)")
        unknown = [t for t in self.tests if t not in TESTS]
        if unknown or not self.tests:
            raise InputError(f"tests must be a non-empty subset of {TESTS}")


@dataclass(frozen=True)
class BootstrapReport:
    """Observed statistics plus their simulated null distributions."""

    observed: TestStatistics
    distributions: dict[str, np.ndarray]  # sorted, length n_replicates
    critical_values: dict[str, float]
    p_values: dict[str, float]
    rejected: dict[str, bool]
    discarded: dict[str, int]
    alpha: float
    seed: int
    n_replicates: int

    @property
    def tests(self) -> tuple[str, ...]:
        return tuple(self.distributions)


class Outcome(Enum):
    """Leaves of the decision tree over the five test outcomes.

    ``code`` is a compact report label; ``dgp`` names the generating
    process of the simulation study that the leaf corresponds to.
    """

    NO_COINT = ("no_cointegration", "N", None)
    COINT = ("cointegration", "Y", "1")
    DEG1_X_LEVELS = ("first_type_degenerate", "D1", "2")
    DEG_BOTH = ("double_degenerate", "D1+D2", "3")
    DEG1_NO_X_LEVELS = ("first_type_degenerate_no_regressor_levels", "D1", "4")
    STATIONARY_Y = ("stationary_dependent", "S", "5")
    DEG2 = ("second_type_degenerate", "D2", "6")

    def __init__(self, label: str, code: str, dgp: str | None):
        self.label = label
        self.code = code
        self.dgp = dgp

    @classmethod
    def from_label(cls, label: str) -> "Outcome":
        for member in cls:
            if member.label == label:
                return member
        raise InputError(f"unknown outcome label {label!r}")


def classify_outcome(
    fov_c_reject: bool,
    fov_uc_reject: bool,
    t_reject: bool,
    find_c_reject: bool,
    find_uc_reject: bool,
) -> Outcome:
    """Decision tree combining conditional and unconditional test results.

    The overall F test on the conditional model is the root.  When it does
    not reject, the unconditional overall F splits no-cointegration from a
    double degeneracy.  When it rejects, the t test checks the first-type
    degeneracy (its two leaves split on the unconditional regressor-level
    F), and otherwise the conditional/unconditional regressor-level F tests
    separate the second-type degeneracy, a stationary dependent variable
    and genuine cointegration.
    """
    if not fov_c_reject:
        return Outcome.DEG_BOTH if fov_uc_reject else Outcome.NO_COINT
    if not t_reject:
        return Outcome.DEG1_X_LEVELS if find_uc_reject else Outcome.DEG1_NO_X_LEVELS
    if not find_c_reject:
        return Outcome.DEG2
    if not find_uc_reject:
        return Outcome.STATIONARY_Y
    return Outcome.COINT


# --------------------------------------------------------------------------
# order-statistic critical values and p-values
# --------------------------------------------------------------------------

def _checked_distribution(dist) -> np.ndarray:
    dist = np.asarray(dist, dtype=float).ravel()
    if dist.size == 0:
        raise EmptyDistribution("empty bootstrap distribution")
    if not np.isfinite(dist).all():
        raise NonFiniteInput("bootstrap distribution contains non-finite values")
    return dist


def critical_value(dist, alpha: float, tail: str) -> float:
    """Order-statistic critical value of a simulated null distribution.

    With m = floor(alpha * B): ``upper`` returns the (B - m)-th smallest
    value (the smallest c such that at most m replicates exceed c);
    ``lower`` returns the (m + 1)-th smallest (the largest c such that at
    most m replicates fall below c).
    """
    dist = _checked_distribution(dist)
    if not 0.0 < alpha < 1.0:
        raise InputError("alpha must lie in (0, 1)")
    b = dist.size
    m = int(np.floor(alpha * b))
    ordered = np.sort(dist)
    if tail == "upper":
        return float(ordered[b - m - 1])
    if tail == "lower":
        return float(ordered[m])
    raise InputError(f"tail must be 'upper' or 'lower', got {tail!r}")


def p_value(dist, observed: float, tail: str) -> float:
    """Bootstrap p-value ``(1 + count) / (B + 1)``.

    ``count`` is the number of replicates at least as extreme as the
    observed statistic (>= for the upper tail, <= for the lower tail).
    """
    dist = _checked_distribution(dist)
    if tail == "upper":
        count = int(np.sum(dist >= observed))
    elif tail == "lower":
        count = int(np.sum(dist <= observed))
    else:
        raise InputError(f"tail must be 'upper' or 'lower', got {tail!r}")
    return (1 + count) / (dist.size + 1)


def recenter(draws) -> np.ndarray:
    """Subtract the column means so every column averages exactly zero."""
    draws = np.asarray(draws, dtype=float)
    if draws.size == 0:
        raise EmptyDistribution("cannot recenter an empty draw")
    return draws - draws.mean(axis=0)


def recenter_rows(draws: np.ndarray) -> np.ndarray:
    """Row-wise recentering for stacked replicate draws."""
    return draws - draws.mean(axis=1, keepdims=True)


# --------------------------------------------------------------------------
# restricted residuals
# --------------------------------------------------------------------------

def restricted_residuals(
    frame: TimeSeriesFrame, spec: ArdlSpec, null: str
) -> tuple[np.ndarray, ArdlFit]:
    """Residuals of the ARDL equation re-estimated under one test's null.

    ``null`` is a test name ("f_ov", "t", "f_ind").
    """
    if null not in TESTS:
        raise InputError(f"null must be one of {TESTS}, got {null!r}")
    fit = estimate_restricted(frame, spec, _TEST_NULL[null])
    return fit.ols.residuals.copy(), fit


# --------------------------------------------------------------------------
# recursive regeneration
# --------------------------------------------------------------------------

def _compile_equation(terms, coefficients, x_position):
    """Flatten (terms, coefficients) into fast per-step operations.

    ``x_position`` maps a frame column index to its slot in the regressor
    difference vector (used for contemporaneous-difference terms, whose
    value at generation time is the just-computed regressor step).
    """
    const = 0.0
    ops = []
    for term, coef in zip(terms, coefficients):
        c = float(coef)
        if term.kind == "const":
            const += c
        elif term.kind == "level":
            ops.append(("level", term.var, 0, c))
        elif term.lag == 0:
            ops.append(("dx", x_position[term.var], 0, c))
        else:
            ops.append(("diff", term.var, term.lag, c))
    return const, ops


def _eval_ops(acc, ops, z, t, dx):
    for kind, var, lag, c in ops:
        if kind == "level":
            acc += c * z[:, t - 1, var]
        elif kind == "diff":
            acc += c * (z[:, t - lag, var] - z[:, t - lag - 1, var])
        else:  # contemporaneous regressor difference
            acc += c * dx[:, var]
    return acc


def _regenerate_batch(initial, nu, eps, y_eq, x_eqs, dep, xs):
    """Regenerate level paths for a batch of replicates.

    Parameters
    ----------
    initial : ndarray, shape (B, p, V)
        Starting level rows per replicate.
    nu : ndarray, shape (B, n)
        Innovations of the dependent-variable equation.
    eps : ndarray, shape (B, n, K)
        Innovations of the regressor system.
    y_eq, x_eqs : compiled equations.
    dep, xs : dependent column index and regressor column indices.

    Returns
    -------
    ndarray, shape (B, p + n, V)
    """
    b, p, v = initial.shape
    n = nu.shape[1]
    z = np.empty((b, p + n, v))
    z[:, :p] = initial
    y_const, y_ops = y_eq
    xs = list(xs)
    with np.errstate(over="ignore", invalid="ignore"):
        for t in range(p, p + n):
            dx = eps[:, t - p, :].copy()
            for i, (x_const, x_ops) in enumerate(x_eqs):
                acc = dx[:, i]
                acc += x_const
                _eval_ops(acc, x_ops, z, t, dx)
            dy = nu[:, t - p] + y_const
            dy = _eval_ops(dy, y_ops, z, t, dx)
            z[:, t, dep] = z[:, t - 1, dep] + dy
            z[:, t, xs] = z[:, t - 1, xs] + dx
    return z


def _x_position(frame_dep: int, xs: tuple[int, ...]) -> dict[int, int]:
    return {var: i for i, var in enumerate(xs)}


def regenerate_sample(
    restricted_fit: ArdlFit,
    vecm: VecmFit,
    nu_draws,
    eps_draws,
    initial_block,
) -> TimeSeriesFrame:
    """Rebuild one full sample from given innovations.

    ``initial_block`` must be ``p`` consecutive rows of the original data;
    ``nu_draws`` and ``eps_draws`` supply one innovation row per generated
    observation.  The returned frame has ``p + len(nu_draws)`` rows and
    feeding it back through the restricted design reproduces the draws
    exactly.
    """
    nu = np.asarray(nu_draws, dtype=float)
    eps = np.asarray(eps_draws, dtype=float)
    block = np.asarray(initial_block, dtype=float)
    if nu.ndim != 1 or eps.ndim != 2 or block.ndim != 2:
        raise DimensionMismatch("draws must be (n,), (n, K) and (p, K+1) arrays")
    if eps.shape[0] != nu.shape[0]:
        raise DimensionMismatch("nu and eps draws must have equal length")
    names = restricted_fit.names
    dep = restricted_fit.dependent_index
    xs = tuple(i for i in range(len(names)) if i != dep)
    if block.shape[1] != len(names) or eps.shape[1] != len(xs):
        raise DimensionMismatch("draw widths do not match the variable count")
    needed = max(
        (t.history for t in restricted_fit.terms + vecm.terms), default=0
    )
    if block.shape[0] < max(needed, 1):
        raise DimensionMismatch(
            f"initial block of {block.shape[0]} rows cannot cover lags "
            f"reaching back {needed} rows"
        )

    pos = _x_position(dep, xs)
    y_eq = _compile_equation(
        restricted_fit.terms, restricted_fit.ols.coefficients, pos
    )
    x_eqs = [
        _compile_equation(vecm.terms, vecm.coefficients[i], pos)
        for i in range(len(xs))
    ]
    z = _regenerate_batch(block[None], nu[None], eps[None], y_eq, x_eqs, dep, xs)
    path = z[0]
    if not np.isfinite(path).all() or np.abs(path).max() > EXPLOSION_LIMIT:
        raise NonFinitePropagation("regenerated path diverged")
    return TimeSeriesFrame(path, names, dep)


# --------------------------------------------------------------------------
# batched re-estimation
# --------------------------------------------------------------------------

def _design_batch(z, terms, anchor, dep):
    """Stacked design tensors over rows ``anchor..T-1`` of each replicate."""
    b, t_end, _ = z.shape
    n = t_end - anchor
    x = np.empty((b, n, len(terms)))
    for j, term in enumerate(terms):
        if term.kind == "const":
            x[:, :, j] = 1.0
        elif term.kind == "level":
            x[:, :, j] = z[:, anchor - 1 : t_end - 1, term.var]
        else:
            lag = term.lag
            x[:, :, j] = (
                z[:, anchor - lag : t_end - lag, term.var]
                - z[:, anchor - lag - 1 : t_end - lag - 1, term.var]
            )
    dy = z[:, anchor:, dep] - z[:, anchor - 1 : -1, dep]
    return x, dy


def _ols_batch(x, y):
    """Batched least squares; flags collinear replicates instead of raising.

    Returns (beta, rss, diag_xtx_inv, bad) where ``bad`` marks replicates
    whose design fails the reciprocal-condition threshold.
    """
    k = x.shape[2]
    q, r = np.linalg.qr(x)
    s = np.linalg.svd(r, compute_uv=False)
    bad = (s[:, 0] <= 0.0) | (s[:, -1] < RCOND_MIN * s[:, 0])
    eye = np.eye(k)
    r_safe = np.where(bad[:, None, None], eye, r)
    qty = np.einsum("bnk,bn->bk", q, y)
    beta = np.linalg.solve(r_safe, qty[:, :, None])[:, :, 0]
    resid = y - np.einsum("bnk,bk->bn", x, beta)
    rss = np.einsum("bn,bn->b", resid, resid)
    r_inv = np.linalg.solve(r_safe, eye)
    diag = np.einsum("bij,bij->bi", r_inv, r_inv)
    return beta, rss, diag, bad


def _batch_statistics(z, frame, spec, test):
    """Unrestricted-test statistics of each regenerated replicate.

    Returns (stats, bad): non-finite entries of ``stats`` and flagged
    replicates in ``bad`` are discarded by the caller.
    """
    dep = frame.dependent_index
    k_reg = frame.n_regressors
    m = spec.max_lag

    terms_u = ardl_terms(frame, spec, RESTRICTION_NONE)
    x_u, dy = _design_batch(z, terms_u, m, dep)
    beta_u, rss_u, diag_u, bad = _ols_batch(x_u, dy)
    dof = dy.shape[1] - len(terms_u)
    scale = np.maximum(1.0, np.einsum("bn,bn->b", dy, dy))
    bad = bad | (rss_u < DEGENERATE_RSS_RTOL * scale)

    if test == "t":
        col = terms_u.index(Term("level", dep, 1))
        with np.errstate(invalid="ignore", divide="ignore"):
            se = np.sqrt(rss_u / dof * diag_u[:, col])
            stats = beta_u[:, col] / se
        return stats, bad

    restriction = _TEST_NULL[test]
    terms_r = ardl_terms(frame, spec, restriction)
    keep = [terms_u.index(t) for t in terms_r]
    _, rss_r, _, bad_r = _ols_batch(x_u[:, :, keep], dy)
    q = {
        "f_ov": k_reg + 1 + (1 if spec.case == CASE_II else 0),
        "f_ind": k_reg,
    }[test]
    with np.errstate(invalid="ignore", divide="ignore"):
        stats = np.maximum(rss_r - rss_u, 0.0) / q / (rss_u / dof)
    return stats, bad | bad_r


# --------------------------------------------------------------------------
# the engine
# --------------------------------------------------------------------------

def _null_distribution(frame, spec, restricted, vecm, test, config):
    """Simulated null distribution of one test statistic.

    Returns (sorted statistics, number of discarded replicates).
    """
    t_total = frame.n_obs
    m = spec.max_lag
    p_eff = max(m, vecm.p)
    n = t_total - p_eff

    nu = restricted.ols.residuals[-n:]
    eps = vecm.residuals[-n:]
    dep = frame.dependent_index
    xs = frame.regressor_indices
    pos = _x_position(dep, xs)
    y_eq = _compile_equation(restricted.terms, restricted.ols.coefficients, pos)
    x_eqs = [
        _compile_equation(vecm.terms, vecm.coefficients[i], pos)
        for i in range(len(xs))
    ]

    b_total = config.n_replicates
    max_discards = int(MAX_DISCARD_FRACTION * b_total)
    stats = np.full(b_total, np.nan)
    pending = np.arange(b_total)
    discards = 0
    attempt = 0
    code = _TEST_CODE[test]
    n_starts = t_total - p_eff + 1

    while pending.size:
        batch = pending.size
        idx = np.empty((batch, n), dtype=np.intp)
        starts = np.empty(batch, dtype=np.intp)
        for row, b in enumerate(pending):
            rng = np.random.default_rng(
                np.random.SeedSequence(
                    int(config.seed), spawn_key=(code, int(b), attempt)
                )
            )
            idx[row] = rng.integers(0, n, size=n)
            starts[row] = rng.integers(0, n_starts)

        nu_star = recenter_rows(nu[idx])
        eps_star = eps[idx] - eps[idx].mean(axis=1, keepdims=True)
        initial = frame.values[starts[:, None] + np.arange(p_eff)[None, :]]

        z = _regenerate_batch(initial, nu_star, eps_star, y_eq, x_eqs, dep, xs)
        with np.errstate(invalid="ignore"):
            exploded = ~np.isfinite(z).all(axis=(1, 2)) | (
                np.abs(z).max(axis=(1, 2)) > EXPLOSION_LIMIT
            )

        batch_stats = np.full(batch, np.nan)
        ok = ~exploded
        if ok.any():
            values, bad = _batch_statistics(z[ok], frame, spec, test)
            values[bad] = np.nan
            batch_stats[ok] = values

        good = np.isfinite(batch_stats)
        stats[pending[good]] = batch_stats[good]
        failed = pending[~good]
        discards += failed.size
        if discards > max_discards:
            raise TooManyDiscards(
                f"{discards} of {b_total} replicates discarded "
                f"(limit {max_discards}); the regenerated process is unstable"
            )
        pending = failed
        attempt += 1

    return np.sort(stats), discards


def bootstrap_tests(
    frame: TimeSeriesFrame,
    spec: ArdlSpec,
    config: BootstrapConfig,
    vecm_lags: int | None = None,
    include_y_level: bool = False,
) -> BootstrapReport:
    """Run the requested bootstrap cointegration tests.

    Parameters
    ----------
    frame, spec
        Data and equation specification.
    config
        Replication count, level, seed, tests.
    vecm_lags : int, optional
        Lag order of the regressor system (defaults to the ARDL maximum
        lag; selectable separately in empirical work).
    include_y_level : bool
        Estimate the dependent lagged level inside the regressor system
        instead of imposing weak exogeneity.

    Returns
    -------
    BootstrapReport
        Identical inputs and seed produce a bit-identical report.
    """
    fit_u, observed = estimate_ardl(frame, spec)
    p_v = spec.max_lag if vecm_lags is None else int(vecm_lags)
    vecm = estimate_vecm_marginal(frame, p_v, include_y_level)

    distributions: dict[str, np.ndarray] = {}
    critical_values: dict[str, float] = {}
    p_values: dict[str, float] = {}
    rejected: dict[str, bool] = {}
    discarded: dict[str, int] = {}

    for test in config.tests:
        _, restricted = restricted_residuals(frame, spec, test)
        dist, n_discarded = _null_distribution(
            frame, spec, restricted, vecm, test, config
        )
        tail = _TEST_TAIL[test]
        cv = critical_value(dist, config.alpha, tail)
        obs = observed.value(test)
        distributions[test] = dist
        critical_values[test] = cv
        p_values[test] = p_value(dist, obs, tail)
        rejected[test] = obs > cv if tail == "upper" else obs < cv
        discarded[test] = n_discarded

    return BootstrapReport(
        observed=observed,
        distributions=distributions,
        critical_values=critical_values,
        p_values=p_values,
        rejected=rejected,
        discarded=discarded,
        alpha=config.alpha,
        seed=config.seed,
        n_replicates=config.n_replicates,
    )
