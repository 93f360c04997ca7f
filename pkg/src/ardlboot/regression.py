"""Ordinary least squares with classical F and t statistics.

Least squares are solved through an orthogonal (QR) factorization rather
than the normal equations: lagged-level designs are often close to
collinear and the factorized solve is better conditioned.  A design whose
reciprocal condition number falls below ``RCOND_MIN`` is rejected as rank
deficient instead of silently returning a pseudo-inverse solution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DegenerateFit,
    DimensionMismatch,
    InconsistentSamples,
    IndexOutOfRange,
    InvalidRestrictionCount,
    NonFiniteInput,
    RankDeficient,
    SampleTooShort,
)

#: Reciprocal condition number below which a design is treated as collinear.
RCOND_MIN = 1e-10

#: Relative residual sum of squares below which a fit is numerically exact.
DEGENERATE_RSS_RTOL = 1e-12


@dataclass(frozen=True)
class DesignMatrix:
    """Named regressor columns of common length.

    Parameters
    ----------
    data : ndarray, shape (n, k)
        One column per regressor.
    names : tuple of str
        Unique column names.
    has_intercept : bool
        Whether one of the columns is a constant term.
    terms : tuple, optional
        Structural description of each column (used by the lag machinery);
        purely informational here.
    """

    data: np.ndarray
    names: tuple[str, ...]
    has_intercept: bool = False
    terms: tuple = ()

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.ndim != 2:
            raise DimensionMismatch("design must be a 2-d array")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "names", tuple(str(n) for n in self.names))
        if data.shape[0] < 1:
            raise DimensionMismatch("design needs at least one row")
        if data.shape[1] != len(self.names):
            raise DimensionMismatch(
                f"{data.shape[1]} columns but {len(self.names)} names"
            )
        if len(set(self.names)) != len(self.names):
            raise DimensionMismatch("design column names must be unique")
        if not np.isfinite(data).all():
            raise NonFiniteInput("design contains NaN or infinite entries")

    @property
    def n_obs(self) -> int:
        return self.data.shape[0]

    @property
    def n_columns(self) -> int:
        return self.data.shape[1]

    def column_index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise IndexOutOfRange(f"no design column named {name!r}") from None


@dataclass(frozen=True)
class OlsFit:
    """Result of an OLS estimation.

    Attributes
    ----------
    coefficients : ndarray, shape (k,)
    residuals : ndarray, shape (n,)
    rss : float
        Residual sum of squares.
    dof : int
        Residual degrees of freedom, n - k.
    stderr : ndarray, shape (k,)
        Classical (homoskedastic) coefficient standard errors.
    sigma2 : float
        rss / dof.
    names : tuple of str
        Design column names, aligned with ``coefficients``.
    """

    coefficients: np.ndarray
    residuals: np.ndarray
    rss: float
    dof: int
    stderr: np.ndarray
    sigma2: float
    names: tuple[str, ...] = ()

    @property
    def n_obs(self) -> int:
        return self.residuals.shape[0]

    def coefficient(self, name: str) -> float:
        try:
            return float(self.coefficients[self.names.index(name)])
        except ValueError:
            raise IndexOutOfRange(f"no coefficient named {name!r}") from None


def ols_fit(design: DesignMatrix, y: np.ndarray) -> OlsFit:
    """Least-squares fit of ``y`` on the design columns.

    Parameters
    ----------
    design : DesignMatrix
    y : ndarray, shape (n,)

    Returns
    -------
    OlsFit

    Raises
    ------
    DimensionMismatch
        If ``y`` does not match the design rows.
    SampleTooShort
        If there are no residual degrees of freedom (n <= k).
    RankDeficient
        If the design is numerically collinear.
    NonFiniteInput
        If ``y`` contains NaN or infinities.
    """
    y = np.asarray(y, dtype=float)
    if y.ndim != 1:
        raise DimensionMismatch("y must be a 1-d vector")
    n, k = design.data.shape
    if y.shape[0] != n:
        raise DimensionMismatch(f"y has {y.shape[0]} rows, design has {n}")
    if not np.isfinite(y).all():
        raise NonFiniteInput("y contains NaN or infinite entries")
    if n <= k:
        raise SampleTooShort(f"{n} observations cannot identify {k} coefficients")

    q, r = np.linalg.qr(design.data)
    singular_values = np.linalg.svd(r, compute_uv=False)
    if singular_values[0] == 0.0 or singular_values[-1] / singular_values[0] < RCOND_MIN:
        raise RankDeficient(
            "design is numerically rank deficient "
            f"(reciprocal condition below {RCOND_MIN:g})"
        )
    coefficients = np.linalg.solve(r, q.T @ y)
    residuals = y - design.data @ coefficients
    rss = float(residuals @ residuals)
    dof = n - k
    sigma2 = rss / dof
    r_inv = np.linalg.solve(r, np.eye(k))
    stderr = np.sqrt(sigma2 * np.sum(r_inv * r_inv, axis=1))
    return OlsFit(
        coefficients=coefficients,
        residuals=residuals,
        rss=rss,
        dof=dof,
        stderr=stderr,
        sigma2=sigma2,
        names=design.names,
    )


def f_statistic(unrestricted: OlsFit, restricted: OlsFit, q: int) -> float:
    """F statistic of ``q`` zero restrictions from two nested fits.

    Uses the residual-sum-of-squares ratio form
    ``((rss_r - rss_u) / q) / (rss_u / dof_u)``, which coincides with the
    Wald form for exact OLS under homoskedastic errors.  A slightly
    negative numerator from floating-point rounding is clamped to zero.
    """
    if int(q) != q or q <= 0:
        raise InvalidRestrictionCount(f"q must be a positive integer, got {q}")
    if unrestricted.n_obs != restricted.n_obs:
        raise InconsistentSamples(
            "restricted and unrestricted fits must use the same observations"
        )
    if restricted.rss < unrestricted.rss * (1.0 - 1e-9) - 1e-12:
        raise InconsistentSamples(
            "restricted rss is below the unrestricted one; fits are not nested"
        )
    if unrestricted.rss <= 0.0 or unrestricted.dof <= 0:
        raise DegenerateFit("unrestricted fit has zero residual variance")
    numerator = max(restricted.rss - unrestricted.rss, 0.0) / q
    return numerator / (unrestricted.rss / unrestricted.dof)


def t_statistic(fit: OlsFit, column_index: int) -> float:
    """t ratio (coefficient / standard error) of one design column."""
    k = fit.coefficients.shape[0]
    if not 0 <= column_index < k:
        raise IndexOutOfRange(f"column {column_index} outside [0, {k - 1}]")
    se = fit.stderr[column_index]
    if se <= 0.0:
        raise DegenerateFit("zero standard error; t ratio undefined")
    return float(fit.coefficients[column_index] / se)


def is_degenerate(fit: OlsFit, y: np.ndarray) -> bool:
    """Whether the fit is numerically exact (undefined test statistics)."""
    scale = max(1.0, float(np.asarray(y) @ np.asarray(y)))
    return fit.rss < DEGENERATE_RSS_RTOL * scale
