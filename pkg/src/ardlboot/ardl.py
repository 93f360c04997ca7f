"""Error-correction form ARDL designs, estimation and test statistics.

The estimated equation regresses the first difference of the dependent
variable on an intercept, the lagged levels of every variable, lagged
differences, and (in the conditional variant) the contemporaneous
differences of the regressors:

    d(y_t) = const + b_y * y_{t-1} + b_x' x_{t-1}
             + sum_j c_{y,j} d(y_{t-j}) + sum_{i,j} c_{i,j} d(x_{i,t-j})
             + w' d(x_t) + error                     [conditional only]

Three hypotheses are tested on the level part:

* ``f_ov``  -- all level coefficients are zero (plus the intercept under
  deterministic case II, where the intercept is tied to the levels);
* ``t``     -- the coefficient of the lagged dependent level is zero;
* ``f_ind`` -- the coefficients of the lagged regressor levels are zero.

Reported signs follow the error-correction convention: ``a_yy`` and
``a_tilde_yx`` are the *negated* regression coefficients of the lagged
levels, so a stable adjustment has positive ``a_yy``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

from .exceptions import (
    DegenerateAdjustment,
    DegenerateFit,
    DimensionMismatch,
    InputError,
    SampleTooShort,
)
from .frame import TimeSeriesFrame
from .regression import (
    DesignMatrix,
    OlsFit,
    f_statistic,
    is_degenerate,
    ols_fit,
    t_statistic,
)

CASE_II = "II"
CASE_III = "III"
CASES = (CASE_II, CASE_III)

CONDITIONAL = "conditional"
UNCONDITIONAL = "unconditional"
CONDITIONINGS = (CONDITIONAL, UNCONDITIONAL)

# Restriction sets used to re-estimate the model under each null.
RESTRICTION_NONE = "none"
DROP_LEVELS = "levels"          # all lagged levels (+ intercept in case II)
DROP_Y_LEVEL = "y_level"        # lagged dependent level only
DROP_X_LEVELS = "x_levels"      # lagged regressor levels only
RESTRICTIONS = (RESTRICTION_NONE, DROP_LEVELS, DROP_Y_LEVEL, DROP_X_LEVELS)


@dataclass(frozen=True)
class Term:
    """One design column: a constant, a lagged level or a lagged difference.

    ``var`` is a frame column index.  For ``diff`` terms ``lag`` 0 means the
    contemporaneous difference; level terms always use lag 1.
    """

    kind: str  # "const" | "level" | "diff"
    var: int = -1
    lag: int = 0

    def name(self, names: tuple[str, ...]) -> str:
        if self.kind == "const":
            return "const"
        if self.kind == "level":
            return f"{names[self.var]}.L1"
        if self.lag == 0:
            return f"d.{names[self.var]}"
        return f"d.{names[self.var]}.L{self.lag}"

    @property
    def history(self) -> int:
        """Rows of past data the column needs at each observation."""
        if self.kind == "const":
            return 0
        if self.kind == "level":
            return 1
        return self.lag + 1


@dataclass(frozen=True)
class ArdlSpec:
    """Deterministic case, conditioning and lag orders of an ARDL equation.

    ``p_y`` is the lag order of the dependent variable (>= 1): the design
    carries ``p_y - 1`` lagged differences of it.  ``p_x[i]`` is the lag
    order of regressor ``i``: the conditional design carries its
    contemporaneous difference plus ``p_x[i] - 1`` lagged ones, the
    unconditional design only the ``p_x[i] - 1`` lagged ones.  A
    conditional ``p_x[i] = 0`` drops every difference of that regressor.
    """

    case: str
    conditioning: str
    p_y: int
    p_x: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "p_x", tuple(int(p) for p in self.p_x))
        if self.case not in CASES:
            raise InputError(f"case must be one of {CASES}, got {self.case!r}")
        if self.conditioning not in CONDITIONINGS:
            raise InputError(
                f"conditioning must be one of {CONDITIONINGS}, got {self.conditioning!r}"
            )
        if self.p_y < 1:
            raise InputError("p_y must be >= 1")
        floor = 0 if self.conditioning == CONDITIONAL else 1
        if any(p < floor for p in self.p_x):
            raise InputError(
                f"each regressor lag order must be >= {floor} for a "
                f"{self.conditioning} model"
            )

    @property
    def max_lag(self) -> int:
        """Longest level lag the design reaches back to."""
        return max(1, self.p_y, *self.p_x) if self.p_x else max(1, self.p_y)

    @property
    def total_lags(self) -> int:
        return self.p_y + sum(self.p_x)


@dataclass(frozen=True)
class TestStatistics:
    """Observed values of the three cointegration statistics."""

    __test__ = False  # keep pytest from collecting this despite the name

    f_ov: float
    t: float
    f_ind: float

    def value(self, test: str) -> float:
        return {"f_ov": self.f_ov, "t": self.t, "f_ind": self.f_ind}[test]


@dataclass(frozen=True)
class ArdlFit:
    """Estimated ARDL equation in error-correction form.

    ``a_yy`` and ``a_tilde_yx`` are the negated level coefficients; entries
    whose columns were dropped by a restriction are reported as 0.  ``omega``
    holds the contemporaneous-difference coefficients (conditional models
    only).  ``short_run`` maps lagged-difference column names to their
    coefficients.
    """

    spec: ArdlSpec
    restriction: str
    a_yy: float
    a_tilde_yx: np.ndarray
    intercept: float | None
    omega: np.ndarray | None
    short_run: dict[str, float]
    ols: OlsFit
    terms: tuple[Term, ...]
    effective_sample: int
    names: tuple[str, ...]
    dependent_index: int


def ardl_terms(
    frame: TimeSeriesFrame, spec: ArdlSpec, restriction: str = RESTRICTION_NONE
) -> tuple[Term, ...]:
    """Design columns of the (possibly restricted) ARDL equation.

    Column order: intercept, lagged levels (dependent first), lagged
    differences of the dependent variable, then per regressor the
    contemporaneous (conditional only) and lagged differences.
    """
    if restriction not in RESTRICTIONS:
        raise InputError(f"unknown restriction {restriction!r}")
    if len(spec.p_x) != frame.n_regressors:
        raise DimensionMismatch(
            f"spec has {len(spec.p_x)} regressor lag orders, frame has "
            f"{frame.n_regressors} regressors"
        )
    dep = frame.dependent_index
    xs = frame.regressor_indices

    terms: list[Term] = []
    # Case II ties the intercept to the levels, so the overall-test
    # restriction removes it together with them; case III keeps it free.
    if not (restriction == DROP_LEVELS and spec.case == CASE_II):
        terms.append(Term("const"))
    if restriction not in (DROP_LEVELS, DROP_Y_LEVEL):
        terms.append(Term("level", dep, 1))
    if restriction not in (DROP_LEVELS, DROP_X_LEVELS):
        terms.extend(Term("level", x, 1) for x in xs)
    terms.extend(Term("diff", dep, j) for j in range(1, spec.p_y))
    start = 0 if spec.conditioning == CONDITIONAL else 1
    for x, p in zip(xs, spec.p_x):
        terms.extend(Term("diff", x, j) for j in range(start, p))
    return tuple(terms)


def _term_column(values: np.ndarray, term: Term, anchor: int) -> np.ndarray:
    """Column of ``term`` over rows ``anchor .. T-1`` of a level matrix."""
    t_end = values.shape[0]
    if term.kind == "const":
        return np.ones(t_end - anchor)
    if term.kind == "level":
        return values[anchor - 1 : t_end - 1, term.var]
    lag = term.lag
    return (
        values[anchor - lag : t_end - lag, term.var]
        - values[anchor - lag - 1 : t_end - lag - 1, term.var]
    )


def build_ardl_design(
    frame: TimeSeriesFrame,
    spec: ArdlSpec,
    restriction: str = RESTRICTION_NONE,
    anchor: int | None = None,
) -> tuple[DesignMatrix, np.ndarray]:
    """Design matrix and differenced target of the ARDL equation.

    All restricted variants of one equation are anchored at the same first
    usable row (``spec.max_lag`` by default), so that nested fits share an
    identical sample window.

    Returns
    -------
    (DesignMatrix, ndarray)
        The design and the target vector d(y_t) over the effective sample.
    """
    terms = ardl_terms(frame, spec, restriction)
    m = spec.max_lag if anchor is None else int(anchor)
    if m < spec.max_lag:
        raise InputError("anchor cannot be smaller than the maximum lag")
    n = frame.n_obs - m
    if n <= len(terms):
        raise SampleTooShort(
            f"effective sample of {n} rows cannot support {len(terms)} columns"
        )
    values = frame.values
    dep = frame.dependent_index
    data = np.column_stack([_term_column(values, t, m) for t in terms])
    names = tuple(t.name(frame.names) for t in terms)
    design = DesignMatrix(
        data, names, has_intercept=any(t.kind == "const" for t in terms),
        terms=terms,
    )
    dy = values[m:, dep] - values[m - 1 : -1, dep]
    return design, dy


def _fit_to_ardl(
    frame: TimeSeriesFrame,
    spec: ArdlSpec,
    restriction: str,
    terms: tuple[Term, ...],
    fit: OlsFit,
) -> ArdlFit:
    dep = frame.dependent_index
    xs = frame.regressor_indices
    coef = {t: c for t, c in zip(terms, fit.coefficients)}

    a_yy = -coef.get(Term("level", dep, 1), 0.0)
    a_tilde = -np.array([coef.get(Term("level", x, 1), 0.0) for x in xs])
    const = coef.get(Term("const"))
    intercept = float(const) if const is not None else None
    if spec.conditioning == CONDITIONAL:
        omega = np.array([coef.get(Term("diff", x, 0), 0.0) for x in xs])
    else:
        omega = None
    short_run = {
        t.name(frame.names): float(c)
        for t, c in coef.items()
        if t.kind == "diff" and t.lag >= 1
    }
    return ArdlFit(
        spec=spec,
        restriction=restriction,
        a_yy=float(a_yy),
        a_tilde_yx=a_tilde,
        intercept=intercept,
        omega=omega,
        short_run=short_run,
        ols=fit,
        terms=terms,
        effective_sample=fit.n_obs,
        names=frame.names,
        dependent_index=dep,
    )


def estimate_restricted(
    frame: TimeSeriesFrame, spec: ArdlSpec, restriction: str
) -> ArdlFit:
    """OLS fit of the ARDL equation with one null imposed."""
    design, dy = build_ardl_design(frame, spec, restriction)
    fit = ols_fit(design, dy)
    if is_degenerate(fit, dy):
        raise DegenerateFit(
            "ARDL residuals are numerically zero; statistics undefined"
        )
    return _fit_to_ardl(frame, spec, restriction, design.terms, fit)


def estimate_ardl(
    frame: TimeSeriesFrame, spec: ArdlSpec
) -> tuple[ArdlFit, TestStatistics]:
    """Unrestricted fit plus the three observed test statistics.

    The overall F test has K+1 restrictions in case III and K+2 in case II
    (the intercept is removed together with the levels); the regressor-level
    F test has K restrictions; the t statistic is the t ratio of the lagged
    dependent level in the unrestricted fit.
    """
    k_reg = frame.n_regressors
    design_u, dy = build_ardl_design(frame, spec, RESTRICTION_NONE)
    fit_u = ols_fit(design_u, dy)
    if is_degenerate(fit_u, dy):
        raise DegenerateFit(
            "ARDL residuals are numerically zero; statistics undefined"
        )

    design_ov, _ = build_ardl_design(frame, spec, DROP_LEVELS)
    fit_ov = ols_fit(design_ov, dy)
    q_ov = k_reg + 1 + (1 if spec.case == CASE_II else 0)
    f_ov = f_statistic(fit_u, fit_ov, q_ov)

    design_ind, _ = build_ardl_design(frame, spec, DROP_X_LEVELS)
    fit_ind = ols_fit(design_ind, dy)
    f_ind = f_statistic(fit_u, fit_ind, k_reg)

    y_level = design_u.column_index(
        Term("level", frame.dependent_index, 1).name(frame.names)
    )
    t_stat = t_statistic(fit_u, y_level)

    ardl_fit = _fit_to_ardl(frame, spec, RESTRICTION_NONE, design_u.terms, fit_u)
    return ardl_fit, TestStatistics(f_ov=f_ov, t=t_stat, f_ind=f_ind)


def long_run_coefficients(fit: ArdlFit) -> tuple[np.ndarray, float | None]:
    """Long-run level coefficients ``a_tilde_yx / a_yy``.

    For case II the equilibrium constant ``intercept / a_yy`` is returned as
    well; case III has an unrestricted intercept outside the level relation.
    """
    if abs(fit.a_yy) <= 1e-10:
        raise DegenerateAdjustment(
            "adjustment coefficient is numerically zero; no long-run relation"
        )
    theta = fit.a_tilde_yx / fit.a_yy
    delta0 = None
    if fit.spec.case == CASE_II and fit.intercept is not None:
        delta0 = fit.intercept / fit.a_yy
    return theta, delta0


def information_criterion(fit: OlsFit, criterion: str) -> float:
    """Gaussian AIC/BIC up to constants: n log(rss/n) + penalty * k."""
    n = fit.n_obs
    k = fit.coefficients.shape[0]
    if fit.rss <= 0.0:
        raise DegenerateFit("zero residual sum of squares; criterion undefined")
    penalty = 2.0 if criterion == "aic" else math.log(n)
    return n * math.log(fit.rss / n) + penalty * k


def pick_best(candidates: list[tuple[float, ArdlSpec]]) -> ArdlSpec:
    """Lowest score wins; ties break on total lag count, then lexicographic."""
    if not candidates:
        raise InputError("no admissible lag specifications")
    return min(
        candidates,
        key=lambda c: (c[0], c[1].total_lags, (c[1].p_y, *c[1].p_x)),
    )[1]


def select_lags(
    frame: TimeSeriesFrame,
    spec_template: ArdlSpec,
    p_max: int,
    criterion: str = "aic",
) -> ArdlSpec:
    """Grid search over lag orders minimizing an information criterion.

    Every candidate is scored on the common effective sample implied by
    ``p_max`` so that criteria are comparable across lag orders.
    """
    criterion = criterion.lower()
    if criterion not in ("aic", "bic"):
        raise InputError(f"criterion must be 'aic' or 'bic', got {criterion!r}")
    if p_max < 1:
        raise InputError("p_max must be >= 1")
    floor = 0 if spec_template.conditioning == CONDITIONAL else 1
    k_reg = frame.n_regressors
    scored: list[tuple[float, ArdlSpec]] = []
    for p_y in range(1, p_max + 1):
        for p_x in itertools.product(range(floor, p_max + 1), repeat=k_reg):
            spec = replace(spec_template, p_y=p_y, p_x=p_x)
            design, dy = build_ardl_design(
                frame, spec, RESTRICTION_NONE, anchor=p_max
            )
            fit = ols_fit(design, dy)
            scored.append((information_criterion(fit, criterion), spec))
    return pick_best(scored)
