"""CSV ingestion and machine-readable reports.

CSV input follows RFC 4180 with a mandatory header row, UTF-8 encoded.
All CSV output is written at 17 significant digits so results can be
verified externally without rounding loss.  Report JSON uses sorted keys;
two runs with the same seed produce byte-identical documents except for
the timestamp field.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .bounds import VERDICT_NA
from .exceptions import (
    InputError,
    MissingColumn,
    MissingValue,
    NonNumericCell,
    NonPositiveForLog,
)
from .frame import TimeSeriesFrame

_FLOAT_FMT = "%.17g"


def load_csv(
    path,
    dependent: str,
    columns: list[str] | None = None,
    log_transform: bool = False,
) -> TimeSeriesFrame:
    """Read a time-series frame from a headered CSV file.

    The dependent variable becomes the first frame column, followed by
    ``columns`` in the given order (default: every other column in file
    order).  Row coordinates in error messages are 1-based data rows.
    """
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise InputError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        rows = [row for row in reader if row and any(cell.strip() for cell in row)]

    if dependent not in header:
        raise MissingColumn(f"no column named {dependent!r} in {path}")
    if columns is None:
        columns = [h for h in header if h != dependent]
    for name in columns:
        if name not in header:
            raise MissingColumn(f"no column named {name!r} in {path}")
    selected = [dependent, *columns]
    positions = [header.index(name) for name in selected]

    values = np.empty((len(rows), len(selected)))
    for i, row in enumerate(rows):
        for j, (name, pos) in enumerate(zip(selected, positions)):
            if pos >= len(row) or not row[pos].strip():
                raise MissingValue(i + 1, name)
            try:
                values[i, j] = float(row[pos])
            except ValueError:
                raise NonNumericCell(i + 1, name, row[pos].strip()) from None

    if log_transform:
        if (values <= 0.0).any():
            bad = np.argwhere(values <= 0.0)[0]
            raise NonPositiveForLog(
                f"cannot take logs: non-positive value at row {bad[0] + 1}, "
                f"column {selected[bad[1]]!r}"
            )
        values = np.log(values)
    return TimeSeriesFrame(values, tuple(selected), dependent_index=0)


def write_frame_csv(frame: TimeSeriesFrame, handle) -> None:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(frame.names)
    for row in frame.values:
        writer.writerow([_FLOAT_FMT % v for v in row])


def file_digest(path) -> str:
    hasher = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            hasher.update(chunk)
    return f"sha256:{hasher.hexdigest()}"


# --------------------------------------------------------------------------
# analysis reports
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TestReport:
    """One test inside an analysis report."""

    __test__ = False  # keep pytest from collecting this despite the name

    observed: float
    critical_value: float
    p_value: float
    reject: bool
    bound_i0: float | None = None
    bound_i1: float | None = None
    bound_verdict: str = VERDICT_NA


@dataclass(frozen=True)
class ModelReport:
    """Results of one estimated model (one conditioning)."""

    spec: dict
    tests: dict[str, TestReport]


@dataclass(frozen=True)
class AnalysisReport:
    """Full machine-readable result of a test run."""

    dependent: str
    regressors: tuple[str, ...]
    case: str
    models: dict[str, ModelReport]
    outcome: str | None
    outcome_code: str | None
    provenance: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["regressors"] = list(self.regressors)
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "AnalysisReport":
        models = {
            key: ModelReport(
                spec=dict(m["spec"]),
                tests={t: TestReport(**tr) for t, tr in m["tests"].items()},
            )
            for key, m in doc["models"].items()
        }
        return cls(
            dependent=doc["dependent"],
            regressors=tuple(doc["regressors"]),
            case=doc["case"],
            models=models,
            outcome=doc["outcome"],
            outcome_code=doc["outcome_code"],
            provenance=dict(doc["provenance"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))


def write_report_csv(report: AnalysisReport, handle) -> None:
    """Flat CSV: one row per (model, test)."""
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(
        [
            "conditioning", "test", "observed", "critical_value", "p_value",
            "reject", "bound_i0", "bound_i1", "bound_verdict",
        ]
    )
    for conditioning, model in report.models.items():
        for test, block in model.tests.items():
            writer.writerow(
                [
                    conditioning,
                    test,
                    _FLOAT_FMT % block.observed,
                    _FLOAT_FMT % block.critical_value,
                    _FLOAT_FMT % block.p_value,
                    int(block.reject),
                    "" if block.bound_i0 is None else _FLOAT_FMT % block.bound_i0,
                    "" if block.bound_i1 is None else _FLOAT_FMT % block.bound_i1,
                    block.bound_verdict,
                ]
            )


def write_distributions_csv(distributions: dict[str, np.ndarray], handle) -> None:
    """Bootstrap null distributions, one column per test, for external plots."""
    writer = csv.writer(handle, lineterminator="\n")
    tests = list(distributions)
    writer.writerow(tests)
    length = max(len(d) for d in distributions.values())
    for i in range(length):
        writer.writerow(
            [
                _FLOAT_FMT % distributions[t][i] if i < len(distributions[t]) else ""
                for t in tests
            ]
        )


def write_mc_csv(results, handle) -> None:
    """Monte Carlo frequency table: one row per process/case/spec/test."""
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(
        [
            "dgp", "case", "conditioning", "test", "rejection_rate",
            "rejections", "n_reps", "failures", "alpha",
        ]
    )
    for result in results:
        rates = result.rejection_rates
        for test, count in result.rejections.items():
            rate = rates[test]
            writer.writerow(
                [
                    result.dgp_id,
                    result.case,
                    result.conditioning,
                    test,
                    "nan" if math.isnan(rate) else _FLOAT_FMT % rate,
                    count,
                    result.n_reps,
                    result.failures,
                    _FLOAT_FMT % result.alpha,
                ]
            )
