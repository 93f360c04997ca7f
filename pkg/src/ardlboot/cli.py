"""Command-line interface.

Subcommands: ``test`` (bootstrap + bound comparison on a CSV dataset),
``simulate`` (one generated sample), ``mc`` (size/power study) and ``adf``
(unit-root pretest).  Exit codes: 0 success, 2 input error, 3 estimation
error, 4 bootstrap degeneracy.
"""

from __future__ import annotations

import argparse
import datetime
import sys

from . import __version__
from .adf import DETERMINISTICS, DF_CRITICAL_VALUES, adf_test
from .ardl import (
    CASES,
    CONDITIONAL,
    CONDITIONINGS,
    UNCONDITIONAL,
    ArdlSpec,
    select_lags,
)
from .bootstrap import (
    TESTS,
    BootstrapConfig,
    bootstrap_tests,
    classify_outcome,
)
from .bounds import BUILTIN_SETS, BoundThresholdTable, bound_verdict
from .dataio import (
    AnalysisReport,
    ModelReport,
    TestReport,
    file_digest,
    load_csv,
    write_distributions_csv,
    write_frame_csv,
    write_mc_csv,
    write_report_csv,
)
from .dgp import DGP_IDS, make_config, monte_carlo, simulate_dgp
from .exceptions import (
    ArdlBootError,
    BootstrapError,
    EstimationError,
    InputError,
)


def _comma_ints(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _comma_names(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ardlboot",
        description="Bootstrap cointegration tests for ARDL models",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_test = sub.add_parser("test", help="run the cointegration tests on a CSV dataset")
    p_test.add_argument("--data", required=True, help="input CSV with header row")
    p_test.add_argument("--dep", required=True, help="dependent variable column")
    p_test.add_argument("--columns", type=_comma_names, default=None,
                        help="regressor columns in order (default: all others)")
    p_test.add_argument("--log", action="store_true", help="natural-log transform")
    p_test.add_argument("--case", choices=CASES, default="III")
    p_test.add_argument("--conditioning", choices=(*CONDITIONINGS, "both"),
                        default="both")
    p_test.add_argument("--both", action="store_true",
                        help="shorthand for --conditioning both")
    p_test.add_argument("--lags", type=_comma_ints, default=None,
                        metavar="P_Y,P_X1,...", help="explicit lag orders")
    p_test.add_argument("--auto-lags", type=int, default=None, metavar="P_MAX",
                        help="select lag orders up to P_MAX by information criterion")
    p_test.add_argument("--criterion", choices=("aic", "bic"), default="aic")
    p_test.add_argument("--vecm-lags", type=int, default=None,
                        help="lag order of the regressor system (default: ARDL max lag)")
    p_test.add_argument("--boot", type=int, default=1999, help="bootstrap replicates")
    p_test.add_argument("--alpha", type=float, default=0.05)
    p_test.add_argument("--seed", type=int, default=0)
    p_test.add_argument("--threshold-set", choices=BUILTIN_SETS, default="asymptotic",
                        help="built-in 5%% bound thresholds (two regressors)")
    p_test.add_argument("--thresholds", default=None,
                        help="CSV overriding bound thresholds (case,test,k,alpha,i0,i1)")
    p_test.add_argument("--json", default="-", metavar="PATH",
                        help="write the JSON report here ('-' = stdout)")
    p_test.add_argument("--csv", default=None, metavar="PATH",
                        help="also write a flat CSV report")
    p_test.add_argument("--dump-distributions", default=None, metavar="PATH",
                        help="write bootstrap null distributions (conditional model)")

    p_sim = sub.add_parser("simulate", help="generate one sample from a study process")
    p_sim.add_argument("--dgp", choices=DGP_IDS, required=True)
    p_sim.add_argument("--case", choices=CASES, default="III")
    p_sim.add_argument("-T", "--n-obs", type=int, default=200)
    p_sim.add_argument("--burn-in", type=int, default=50)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("-o", "--output", default="-", help="output CSV ('-' = stdout)")

    p_mc = sub.add_parser("mc", help="Monte Carlo size/power study")
    p_mc.add_argument("--dgp", choices=DGP_IDS, required=True)
    p_mc.add_argument("--case", choices=CASES, default="III")
    p_mc.add_argument("--spec", choices=CONDITIONINGS, default=CONDITIONAL,
                      help="conditioning of the estimated model")
    p_mc.add_argument("--reps", type=int, default=200)
    p_mc.add_argument("--boot", type=int, default=200)
    p_mc.add_argument("--alpha", type=float, default=0.05)
    p_mc.add_argument("-T", "--n-obs", type=int, default=200)
    p_mc.add_argument("--burn-in", type=int, default=50)
    p_mc.add_argument("--seed", type=int, default=0)
    p_mc.add_argument("--tests", type=_comma_names, default=list(TESTS))
    p_mc.add_argument("--threads", type=int, default=1,
                      help="worker processes (does not change results)")
    p_mc.add_argument("-o", "--output", default="-", help="output CSV ('-' = stdout)")
    p_mc.add_argument("--dump-distributions", default=None, metavar="PATH",
                      help="write pooled bootstrap distributions")

    p_adf = sub.add_parser("adf", help="augmented Dickey-Fuller pretest")
    p_adf.add_argument("--data", required=True)
    p_adf.add_argument("--column", required=True)
    p_adf.add_argument("--log", action="store_true")
    p_adf.add_argument("--diff", action="store_true",
                       help="test the first difference of the column")
    p_adf.add_argument("--lags", type=int, default=0)
    p_adf.add_argument("--det", choices=DETERMINISTICS, default="drift")
    p_adf.add_argument("--critical-value", type=float, default=None,
                       help="override the built-in 5%% threshold")
    p_adf.add_argument("--json", action="store_true")

    return parser


def _open_out(path: str):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _write_out(path: str, writer_fn) -> None:
    handle, close = _open_out(path)
    try:
        writer_fn(handle)
    finally:
        if close:
            handle.close()


def _resolve_spec(args, frame, conditioning: str) -> ArdlSpec:
    k = frame.n_regressors
    if args.lags is not None:
        if len(args.lags) != k + 1:
            raise InputError(
                f"--lags needs {k + 1} integers (dependent + {k} regressors)"
            )
        return ArdlSpec(args.case, conditioning, args.lags[0], tuple(args.lags[1:]))
    p_max = args.auto_lags if args.auto_lags is not None else 4
    floor = 0 if conditioning == CONDITIONAL else 1
    template = ArdlSpec(args.case, conditioning, 1, (max(1, floor),) * k)
    return select_lags(frame, template, p_max, args.criterion)


def cmd_test(args) -> int:
    frame = load_csv(args.data, args.dep, args.columns, args.log)
    table = BoundThresholdTable.builtin(args.threshold_set)
    if args.thresholds:
        table = BoundThresholdTable.from_csv(args.thresholds, base=table)
    config = BootstrapConfig(
        n_replicates=args.boot, alpha=args.alpha, seed=args.seed, tests=TESTS
    )
    conditionings = (
        (CONDITIONAL, UNCONDITIONAL)
        if args.both or args.conditioning == "both"
        else (args.conditioning,)
    )

    models: dict[str, ModelReport] = {}
    reports = {}
    for conditioning in conditionings:
        spec = _resolve_spec(args, frame, conditioning)
        report = bootstrap_tests(frame, spec, config, vecm_lags=args.vecm_lags)
        reports[conditioning] = report
        tests: dict[str, TestReport] = {}
        for test in TESTS:
            observed = report.observed.value(test)
            pair = table.lookup(args.case, test, frame.n_regressors, 0.05)
            tests[test] = TestReport(
                observed=observed,
                critical_value=report.critical_values[test],
                p_value=report.p_values[test],
                reject=report.rejected[test],
                bound_i0=None if pair is None else pair[0],
                bound_i1=None if pair is None else pair[1],
                bound_verdict=bound_verdict(test, observed, pair),
            )
        models[conditioning] = ModelReport(
            spec={
                "case": spec.case,
                "conditioning": spec.conditioning,
                "p_y": spec.p_y,
                "p_x": list(spec.p_x),
            },
            tests=tests,
        )

    outcome = outcome_code = None
    if len(conditionings) == 2:
        c, uc = reports[CONDITIONAL], reports[UNCONDITIONAL]
        leaf = classify_outcome(
            c.rejected["f_ov"],
            uc.rejected["f_ov"],
            c.rejected["t"],
            c.rejected["f_ind"],
            uc.rejected["f_ind"],
        )
        outcome, outcome_code = leaf.label, leaf.code

    report = AnalysisReport(
        dependent=frame.dependent_name,
        regressors=tuple(n for n in frame.names if n != frame.dependent_name),
        case=args.case,
        models=models,
        outcome=outcome,
        outcome_code=outcome_code,
        provenance={
            "seed": args.seed,
            "n_replicates": args.boot,
            "alpha": args.alpha,
            "input_digest": file_digest(args.data),
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "version": __version__,
        },
    )
    _write_out(args.json, lambda h: h.write(report.to_json() + "\n"))
    if args.csv:
        _write_out(args.csv, lambda h: write_report_csv(report, h))
    if args.dump_distributions:
        key = CONDITIONAL if CONDITIONAL in reports else conditionings[0]
        _write_out(
            args.dump_distributions,
            lambda h: write_distributions_csv(reports[key].distributions, h),
        )
    return 0


def cmd_simulate(args) -> int:
    config = make_config(args.dgp, args.case, n_obs=args.n_obs,
                         burn_in=args.burn_in, seed=args.seed)
    frame = simulate_dgp(config)
    _write_out(args.output, lambda h: write_frame_csv(frame, h))
    return 0


def cmd_mc(args) -> int:
    unknown = [t for t in args.tests if t not in TESTS]
    if unknown:
        raise InputError(f"unknown tests {unknown}; choose from {TESTS}")
    config = make_config(args.dgp, args.case, n_obs=args.n_obs,
                         burn_in=args.burn_in, seed=args.seed)
    boot = BootstrapConfig(
        n_replicates=args.boot, alpha=args.alpha, seed=args.seed,
        tests=tuple(args.tests),
    )
    result = monte_carlo(
        args.dgp, args.case, args.spec, args.reps,
        config=config, boot=boot, workers=args.threads,
        collect_distributions=bool(args.dump_distributions),
    )
    _write_out(args.output, lambda h: write_mc_csv([result], h))
    if args.dump_distributions:
        _write_out(
            args.dump_distributions,
            lambda h: write_distributions_csv(result.distributions, h),
        )
    return 0


def cmd_adf(args) -> int:
    frame = load_csv(args.data, args.column, columns=[], log_transform=args.log)
    series = frame.values[:, 0]
    if args.diff:
        series = series[1:] - series[:-1]
    result = adf_test(series, lags=args.lags, deterministic=args.det)
    threshold = (
        args.critical_value
        if args.critical_value is not None
        else DF_CRITICAL_VALUES[args.det][0.05]
    )
    doc = {
        "column": args.column,
        "differenced": bool(args.diff),
        "statistic": result.statistic,
        "lags": result.lags,
        "deterministic": result.deterministic,
        "n_effective": result.n_effective,
        "critical_value_5pct": threshold,
        "reject_unit_root_5pct": result.rejects(threshold),
    }
    if args.json:
        import json

        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        for key, value in doc.items():
            sys.stdout.write(f"{key}: {value}\n")
    return 0


_COMMANDS = {
    "test": cmd_test,
    "simulate": cmd_simulate,
    "mc": cmd_mc,
    "adf": cmd_adf,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InputError as exc:
        print(f"ardlboot: input error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"ardlboot: input error: {exc}", file=sys.stderr)
        return 2
    except EstimationError as exc:
        print(f"ardlboot: estimation error: {exc}", file=sys.stderr)
        return 3
    except BootstrapError as exc:
        print(f"ardlboot: bootstrap error: {exc}", file=sys.stderr)
        return 4
    except ArdlBootError as exc:
        print(f"ardlboot: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
