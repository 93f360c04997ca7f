"""Augmented Dickey-Fuller unit-root pretest.

The statistic is the t ratio of the lagged level in

    d(y_t) = [const] + [trend * t] + rho * y_{t-1}
             + sum_{j=1}^{lags} phi_j d(y_{t-j}) + e_t

No p-values are computed here: the test is compared against user-supplied
critical values, defaulting to the classic asymptotic Dickey-Fuller
percentiles in ``DF_CRITICAL_VALUES`` below.  Those constants are data,
not a distribution model, and can be overridden at the call site or on the
command line.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InputError, SampleTooShort
from .regression import DesignMatrix, ols_fit, t_statistic

DET_NONE = "none"
DET_DRIFT = "drift"
DET_DRIFT_TREND = "drift_trend"
DETERMINISTICS = (DET_NONE, DET_DRIFT, DET_DRIFT_TREND)

#: Classic asymptotic Dickey-Fuller critical values, by deterministic term.
#: Keys: significance level; values negative because the test is lower-tail.
DF_CRITICAL_VALUES = {
    DET_NONE: {0.01: -2.58, 0.05: -1.95, 0.10: -1.62},
    DET_DRIFT: {0.01: -3.43, 0.05: -2.86, 0.10: -2.57},
    DET_DRIFT_TREND: {0.01: -3.96, 0.05: -3.41, 0.10: -3.12},
}


@dataclass(frozen=True)
class AdfResult:
    statistic: float
    lags: int
    deterministic: str
    n_effective: int

    def rejects(self, critical_value: float) -> bool:
        """Unit root rejected when the statistic falls below the threshold."""
        return self.statistic < critical_value


def adf_test(series, lags: int = 0, deterministic: str = DET_DRIFT) -> AdfResult:
    """Dickey-Fuller regression t statistic of one series.

    Parameters
    ----------
    series : array-like, shape (T,)
    lags : int
        Number of lagged differences augmenting the regression.
    deterministic : str
        "none", "drift" or "drift_trend".
    """
    y = np.asarray(series, dtype=float)
    if y.ndim != 1:
        raise InputError("series must be one-dimensional")
    if lags < 0:
        raise InputError("lags must be >= 0")
    if deterministic not in DETERMINISTICS:
        raise InputError(f"deterministic must be one of {DETERMINISTICS}")
    t_total = y.shape[0]
    n = t_total - lags - 1
    n_det = {DET_NONE: 0, DET_DRIFT: 1, DET_DRIFT_TREND: 2}[deterministic]
    if n <= n_det + 1 + lags + 1:
        raise SampleTooShort(
            f"{t_total} observations cannot support {lags} lags with "
            f"{n_det} deterministic terms"
        )

    dy = np.diff(y)
    start = lags  # first usable index into dy
    target = dy[start:]
    columns = []
    names = []
    if deterministic in (DET_DRIFT, DET_DRIFT_TREND):
        columns.append(np.ones(n))
        names.append("const")
    if deterministic == DET_DRIFT_TREND:
        columns.append(np.arange(start + 1, t_total, dtype=float))
        names.append("trend")
    columns.append(y[start : t_total - 1])
    names.append("level.L1")
    for j in range(1, lags + 1):
        columns.append(dy[start - j : t_total - 1 - j])
        names.append(f"d.level.L{j}")

    design = DesignMatrix(
        np.column_stack(columns), tuple(names),
        has_intercept=deterministic != DET_NONE,
    )
    fit = ols_fit(design, target)
    stat = t_statistic(fit, names.index("level.L1"))
    return AdfResult(
        statistic=stat, lags=lags, deterministic=deterministic, n_effective=n
    )
