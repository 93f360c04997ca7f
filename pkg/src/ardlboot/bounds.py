"""Published 5% bound-test thresholds and the accept/reject/inconclusive rule.

A bound test brackets the unknown null distribution between the all-
stationary case, threshold ``i0``, and the all-integrated case, ``i1``.
F statistics reject above ``i1``, accept below ``i0`` and are inconclusive
strictly in between; the t statistic mirrors this on the lower tail
(``i0`` > ``i1`` there, both negative).

Two built-in sets are shipped for two regressors at the 5% level: the
``asymptotic`` thresholds and a ``small_sample`` set (published alongside a
56-observation application).  Which of the two applies to a given sample
size is a judgement call; the asymptotic set is the default and other
levels, regressor counts or sample sizes must come from a user threshold
file with columns ``case,test,k,alpha,i0,i1``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

from .exceptions import InputError

VERDICT_REJECT = "reject"
VERDICT_ACCEPT = "accept"
VERDICT_INCONCLUSIVE = "inconclusive"
VERDICT_NA = "n/a"

#: Built-in 5% thresholds, keyed (case, test, number of regressors).
_BUILTIN = {
    "asymptotic": {
        ("II", "f_ov", 2): (3.10, 3.87),
        ("III", "f_ov", 2): (3.79, 4.85),
        ("III", "t", 2): (-2.86, -3.53),
        ("III", "f_ind", 2): (3.01, 5.42),
    },
    "small_sample": {
        ("II", "f_ov", 2): (3.435, 4.26),
        ("III", "f_ov", 2): (4.133, 5.26),
        ("III", "t", 2): (-2.86, -3.53),
        ("III", "f_ind", 2): (3.22, 5.62),
    },
}
BUILTIN_SETS = tuple(_BUILTIN)


@dataclass(frozen=True)
class BoundThresholdTable:
    """(i0, i1) threshold pairs keyed by (case, test, k, alpha)."""

    entries: dict[tuple[str, str, int, float], tuple[float, float]] = field(
        default_factory=dict
    )

    def __post_init__(self):
        for (case, test, k, alpha), (i0, i1) in self.entries.items():
            if test == "t":
                if not i0 > i1:
                    raise InputError(
                        f"t thresholds need i0 > i1, got ({i0}, {i1})"
                    )
            elif not i0 < i1:
                raise InputError(
                    f"F thresholds need i0 < i1, got ({i0}, {i1}) for {test}"
                )

    @classmethod
    def builtin(cls, set_name: str = "asymptotic") -> "BoundThresholdTable":
        if set_name not in _BUILTIN:
            raise InputError(f"unknown threshold set {set_name!r}")
        return cls(
            {
                (case, test, k, 0.05): pair
                for (case, test, k), pair in _BUILTIN[set_name].items()
            }
        )

    @classmethod
    def from_csv(cls, path, base: "BoundThresholdTable | None" = None):
        """Load thresholds from ``case,test,k,alpha,i0,i1`` rows.

        Entries override the optional ``base`` table.
        """
        entries = dict(base.entries) if base is not None else {}
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            required = {"case", "test", "k", "alpha", "i0", "i1"}
            if reader.fieldnames is None or not required <= set(reader.fieldnames):
                raise InputError(
                    f"threshold file must have columns {sorted(required)}"
                )
            for row in reader:
                try:
                    key = (
                        row["case"].strip(),
                        row["test"].strip(),
                        int(row["k"]),
                        float(row["alpha"]),
                    )
                    entries[key] = (float(row["i0"]), float(row["i1"]))
                except ValueError as exc:
                    raise InputError(f"bad threshold row {row}: {exc}") from None
        return cls(entries)

    def lookup(
        self, case: str, test: str, k: int, alpha: float = 0.05
    ) -> tuple[float, float] | None:
        return self.entries.get((case, test, k, alpha))


def bound_verdict(test: str, statistic: float, pair: tuple[float, float] | None) -> str:
    """Classify a statistic against an (i0, i1) threshold pair.

    Inconclusive exactly when the statistic lies strictly between the two
    thresholds.
    """
    if pair is None:
        return VERDICT_NA
    i0, i1 = pair
    if test == "t":
        if statistic <= i1:
            return VERDICT_REJECT
        if statistic >= i0:
            return VERDICT_ACCEPT
        return VERDICT_INCONCLUSIVE
    if statistic >= i1:
        return VERDICT_REJECT
    if statistic <= i0:
        return VERDICT_ACCEPT
    return VERDICT_INCONCLUSIVE
