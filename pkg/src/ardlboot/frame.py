"""Time-series data container shared by all estimators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionMismatch, InputError, MissingColumn, NonFiniteInput


@dataclass(frozen=True)
class TimeSeriesFrame:
    """A T x (K+1) block of observations with one designated dependent variable.

    Parameters
    ----------
    values : ndarray, shape (T, K+1)
        Observations in time order, one column per variable.
    names : tuple of str
        Unique column names, aligned with ``values``.
    dependent_index : int
        Column holding the dependent variable (default first column).
    """

    values: np.ndarray
    names: tuple[str, ...]
    dependent_index: int = 0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2:
            raise DimensionMismatch("values must be a 2-d array")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "names", tuple(str(n) for n in self.names))
        if values.shape[0] < 1:
            raise DimensionMismatch("need at least one observation")
        if values.shape[1] != len(self.names):
            raise DimensionMismatch(
                f"{values.shape[1]} columns but {len(self.names)} names"
            )
        if len(set(self.names)) != len(self.names):
            raise InputError("column names must be unique")
        if not np.isfinite(values).all():
            raise NonFiniteInput("frame contains NaN or infinite entries")
        if not 0 <= self.dependent_index < values.shape[1]:
            raise InputError(
                f"dependent_index {self.dependent_index} outside [0, {values.shape[1] - 1}]"
            )

    @property
    def n_obs(self) -> int:
        return self.values.shape[0]

    @property
    def n_vars(self) -> int:
        return self.values.shape[1]

    @property
    def n_regressors(self) -> int:
        return self.values.shape[1] - 1

    @property
    def dependent_name(self) -> str:
        return self.names[self.dependent_index]

    @property
    def regressor_indices(self) -> tuple[int, ...]:
        """Frame columns other than the dependent one, in frame order."""
        return tuple(
            i for i in range(self.n_vars) if i != self.dependent_index
        )

    def column(self, name: str) -> np.ndarray:
        try:
            return self.values[:, self.names.index(name)]
        except ValueError:
            raise MissingColumn(f"no column named {name!r}") from None

    def drop_prefix(self, rows: int) -> "TimeSeriesFrame":
        """Frame without its first ``rows`` observations."""
        if not 0 <= rows < self.n_obs:
            raise DimensionMismatch("prefix longer than the sample")
        return TimeSeriesFrame(
            self.values[rows:], self.names, self.dependent_index
        )
