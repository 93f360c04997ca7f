"""Shared fixtures and independent oracle implementations.

The oracles here deliberately use the normal equations and hand-built lag
matrices so they share no code path with the package internals.
"""

import numpy as np
import pytest

from ardlboot import TimeSeriesFrame, make_config, simulate_dgp


def normal_equations_ols(x, y):
    """Brute-force OLS via (X'X)^{-1} X'y; returns a plain dict."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    xtx = x.T @ x
    beta = np.linalg.solve(xtx, x.T @ y)
    resid = y - x @ beta
    rss = float(resid @ resid)
    dof = len(y) - x.shape[1]
    sigma2 = rss / dof
    cov = sigma2 * np.linalg.inv(xtx)
    return {
        "beta": beta,
        "resid": resid,
        "rss": rss,
        "dof": dof,
        "sigma2": sigma2,
        "se": np.sqrt(np.diag(cov)),
    }


def random_frame(rng, n_obs=60, n_vars=3):
    """Small random-walk frame for estimator plumbing tests."""
    steps = rng.standard_normal((n_obs, n_vars))
    values = np.cumsum(steps, axis=0)
    names = tuple(["y"] + [f"x{i}" for i in range(1, n_vars)])
    return TimeSeriesFrame(values, names, dependent_index=0)


@pytest.fixture(scope="session")
def frame_1h():
    """A medium sample generated under the strongly cointegrated process."""
    return simulate_dgp(make_config("1H", "III", n_obs=200, seed=42))


@pytest.fixture(scope="session")
def frame_2b():
    """A sample with stationary regressors (full-rank level block)."""
    return simulate_dgp(make_config("2B", "III", n_obs=200, seed=43))
