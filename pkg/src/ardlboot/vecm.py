"""Error-correction system for the regressors, estimated equation by equation.

Each regressor difference is regressed by OLS on an intercept, lagged
levels and lagged differences of all variables:

    d(x_{i,t}) = const_i + b_i' levels_{t-1}
                 + sum_{j=1}^{p-1} g_{i,j}' d(z_{t-j}) + error_i

By default the lagged level of the dependent variable is excluded
(weak-exogeneity form, so the regressor system carries no feedback from the
dependent variable); ``include_y_level=True`` estimates it freely for
diagnostics.  The residual matrix of this system drives the regeneration of
the regressors inside the bootstrap, and comes from a separate regression,
independent of the ARDL equation residuals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ardl import Term, _term_column
from .exceptions import InputError, SampleTooShort
from .frame import TimeSeriesFrame
from .regression import DesignMatrix, OlsFit, ols_fit


@dataclass(frozen=True)
class VecmFit:
    """Equation-by-equation OLS estimates of the regressor system.

    ``a_xx`` and ``a_xy`` are the *negated* level coefficients (error
    correction convention).  ``gamma_x`` has shape (p-1, K, K+1); its last
    axis is ordered dependent variable first, then the regressors in frame
    order.  ``a_xy`` is all zeros when the dependent level is excluded.
    """

    alpha0x: np.ndarray
    a_xx: np.ndarray
    a_xy: np.ndarray
    gamma_x: np.ndarray
    residuals: np.ndarray
    p: int
    include_y_level: bool
    terms: tuple[Term, ...]
    coefficients: np.ndarray  # (K, k) raw regression coefficients per equation
    fits: tuple[OlsFit, ...]
    names: tuple[str, ...]
    dependent_index: int


def vecm_terms(
    frame: TimeSeriesFrame, p: int, include_y_level: bool
) -> tuple[Term, ...]:
    """Common design columns of every regressor equation."""
    dep = frame.dependent_index
    xs = frame.regressor_indices
    terms: list[Term] = [Term("const")]
    if include_y_level:
        terms.append(Term("level", dep, 1))
    terms.extend(Term("level", x, 1) for x in xs)
    for j in range(1, p):
        terms.append(Term("diff", dep, j))
        terms.extend(Term("diff", x, j) for x in xs)
    return tuple(terms)


def estimate_vecm_marginal(
    frame: TimeSeriesFrame, p: int, include_y_level: bool = False
) -> VecmFit:
    """Estimate the regressor system with lag order ``p``.

    Raises
    ------
    SampleTooShort
        If the effective sample T - p cannot support the design width.
    RankDeficient
        Propagated from the per-equation OLS.
    """
    if p < 1:
        raise InputError("vecm lag order must be >= 1")
    terms = vecm_terms(frame, p, include_y_level)
    n = frame.n_obs - p
    if n <= len(terms):
        raise SampleTooShort(
            f"effective sample of {n} rows cannot support {len(terms)} columns"
        )
    values = frame.values
    dep = frame.dependent_index
    xs = frame.regressor_indices
    k_reg = len(xs)

    data = np.column_stack([_term_column(values, t, p) for t in terms])
    names = tuple(t.name(frame.names) for t in terms)
    design = DesignMatrix(data, names, has_intercept=True, terms=terms)

    fits = []
    for x in xs:
        dx = values[p:, x] - values[p - 1 : -1, x]
        fits.append(ols_fit(design, dx))

    coefficients = np.vstack([f.coefficients for f in fits])
    residuals = np.column_stack([f.residuals for f in fits])

    index = {t: i for i, t in enumerate(terms)}
    alpha0x = coefficients[:, index[Term("const")]]
    a_xx = -coefficients[:, [index[Term("level", x, 1)] for x in xs]]
    if include_y_level:
        a_xy = -coefficients[:, index[Term("level", dep, 1)]]
    else:
        a_xy = np.zeros(k_reg)
    z_order = (dep, *xs)
    gamma_x = np.empty((p - 1, k_reg, k_reg + 1))
    for j in range(1, p):
        for pos, v in enumerate(z_order):
            gamma_x[j - 1, :, pos] = coefficients[:, index[Term("diff", v, j)]]

    return VecmFit(
        alpha0x=alpha0x,
        a_xx=a_xx,
        a_xy=a_xy,
        gamma_x=gamma_x,
        residuals=residuals,
        p=p,
        include_y_level=include_y_level,
        terms=terms,
        coefficients=coefficients,
        fits=tuple(fits),
        names=frame.names,
        dependent_index=dep,
    )
