"""The ``bbo`` command line: seeded trials, aggregation, comparison tables,
throughput measurement, and golden-trace repeatability checks.

Exit codes: 0 success, 2 usage error, 3 runtime failure.
"""

import argparse
import json
import sys

from ..core.errors import BboError
from .aggregate import aggregate_median, write_curve_csv
from .compare import compare_optimizers, parse_compare_config
from .golden import GoldenTrace, check_golden, load_golden, record_golden
from .throughput import throughput
from .trials import TrialConfig, load_trial_dir, run_trials

USAGE_ERROR = 2
RUNTIME_ERROR = 3


def _add_termination_args(parser):
    parser.add_argument("--fitness-threshold", type=float, default=1e-10)
    parser.add_argument("--max-evals", type=int, default=None)
    parser.add_argument("--max-runtime", type=float, default=None)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bbo",
        description="Population-based black-box optimization benchmark harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run seeded trials of one optimizer")
    run_p.add_argument("--optimizer", required=True)
    run_p.add_argument(
        "--instance",
        required=True,
        help="<fid>:<ndim>[:<seed>] or cls:<loss_id>:<dataset_path>",
    )
    run_p.add_argument("--trials", type=int, default=10)
    run_p.add_argument("--seed", type=int, default=0)
    _add_termination_args(run_p)
    run_p.add_argument("--out", required=True, help="output directory")
    run_p.add_argument("--x-fill", type=float, default=None, help="initial mean fill value")
    run_p.add_argument("--sigma", type=float, default=None)
    run_p.add_argument("--population-size", type=int, default=None)
    run_p.add_argument("--verbose", type=int, default=0)

    agg_p = sub.add_parser("aggregate", help="median curve over a trial directory")
    agg_p.add_argument("--in", dest="in_dir", required=True)
    agg_p.add_argument("--out", required=True, help="output curve CSV")

    cmp_p = sub.add_parser("compare", help="ranking table over optimizers x instances")
    cmp_p.add_argument("--config", required=True, help="key = value config file")
    cmp_p.add_argument("--out", required=True, help="output table CSV")

    thr_p = sub.add_parser("throughput", help="evaluations per second measurement")
    thr_p.add_argument("--optimizer", required=True)
    thr_p.add_argument("--instance", required=True)
    thr_p.add_argument("--seconds", type=float, default=5.0)

    gold_p = sub.add_parser("golden", help="record or check a golden trace")
    gold_p.add_argument("action", choices=["check", "record"])
    gold_p.add_argument("--file", required=True)
    gold_p.add_argument("--optimizer", default=None)
    gold_p.add_argument("--instance", default=None)
    gold_p.add_argument("--seed", type=int, default=0)
    _add_termination_args(gold_p)
    gold_p.add_argument("--x-fill", type=float, default=None)
    gold_p.add_argument("--sigma", type=float, default=None)
    gold_p.add_argument("--population-size", type=int, default=None)
    gold_p.add_argument(
        "--tolerance", choices=["bit-exact", "relative"], default="bit-exact"
    )
    return parser


def _cmd_run(args) -> int:
    config = TrialConfig(
        optimizer=args.optimizer,
        instance=args.instance,
        n_trials=args.trials,
        base_seed=args.seed,
        fitness_threshold=args.fitness_threshold,
        max_function_evaluations=args.max_evals,
        max_runtime=args.max_runtime,
        out_dir=args.out,
        x_fill=args.x_fill,
        sigma=args.sigma,
        population_size=args.population_size,
        verbose=args.verbose,
    )
    trial_set = run_trials(config)
    for i, result in enumerate(trial_set.results):
        print(
            f"trial {i}: best={result.best_so_far_y:.6e} "
            f"evals={result.n_function_evaluations} "
            f"reason={result.termination_reason} "
            f"runtime={result.runtime_seconds:.2f}s"
        )
    print(f"wrote {len(trial_set.results)} trial file pairs to {args.out}")
    return 0


def _cmd_aggregate(args) -> int:
    traces = load_trial_dir(args.in_dir)
    grid, median = aggregate_median(traces)
    write_curve_csv(args.out, grid, median)
    print(f"aggregated {len(traces)} trials onto {len(grid)} grid points -> {args.out}")
    return 0


def _cmd_compare(args) -> int:
    configs = parse_compare_config(args.config)
    table = compare_optimizers(configs)
    table.write_csv(args.out)
    print(table.text())
    print(f"wrote table to {args.out}")
    return 0


def _cmd_throughput(args) -> int:
    report = throughput(args.optimizer, args.instance, args.seconds)
    print(json.dumps(report, indent=2))
    return 0


def _cmd_golden(args, parser) -> int:
    if args.action == "record":
        for required in ("optimizer", "instance"):
            if getattr(args, required) is None:
                parser.error(f"golden record requires --{required}")
        config = GoldenTrace(
            optimizer=args.optimizer,
            instance=args.instance,
            seed=args.seed,
            tolerance_mode=args.tolerance,
            fitness_threshold=args.fitness_threshold,
            max_function_evaluations=args.max_evals,
            max_runtime=args.max_runtime,
            x_fill=args.x_fill,
            sigma=args.sigma,
            population_size=args.population_size,
        )
        recorded = record_golden(config, args.file)
        print(f"recorded {len(recorded.checkpoints)} checkpoints -> {args.file}")
        return 0
    report = check_golden(args.file)
    golden = load_golden(args.file)
    status = "PASS" if report.passed else "FAIL"
    print(f"{status} {golden.optimizer} on {golden.instance}: {report.message}")
    return 0 if report.passed else RUNTIME_ERROR


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            code = _cmd_run(args)
        elif args.command == "aggregate":
            code = _cmd_aggregate(args)
        elif args.command == "compare":
            code = _cmd_compare(args)
        elif args.command == "throughput":
            code = _cmd_throughput(args)
        else:
            code = _cmd_golden(args, parser)
    except BboError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RUNTIME_ERROR
    return code


if __name__ == "__main__":
    sys.exit(main())
