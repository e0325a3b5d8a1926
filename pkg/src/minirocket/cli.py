"""Command-line front end: fit, train, predict, selftest, bench.

Exit codes: 0 on success, 1 on validation or usage errors, 2 on internal
assertion failures (a failed self-test or a violated scaling check).
"""

import argparse
import os
import statistics
import sys
import time

import numpy as np

from .classify import choose_classifier, logistic_fit, predict, ridge_fit
from .data import (
    load_delimited,
    load_model,
    load_parameters,
    save_model,
    save_parameters,
    save_predictions_csv,
)
from .fit import fit_biases, fit_biases_deterministic
from .kernels import (
    DEFAULT_MAX_DILATIONS_PER_KERNEL,
    DEFAULT_NUM_FEATURES,
    NUM_KERNELS,
    plan_dilations,
)
from .oracle import equivalence_fuzz, transform_naive
from .transform import transform

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INTERNAL = 2

SELFTEST_TOLERANCE = 1e-6
SCALING_BOUNDS = (1.4, 2.6)

THREADS_ENV_VAR = "MINIROCKET_THREADS"


class CommandError(Exception):
    """Validation failure that should exit with code 1."""


class _Parser(argparse.ArgumentParser):
    # usage errors map to exit code 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _configure_threads(requested):
    import numba

    if requested is None:
        requested = int(os.environ.get(THREADS_ENV_VAR, "1"))
    if requested < 1:
        raise CommandError("--threads must be at least 1")
    numba.set_num_threads(min(requested, numba.config.NUMBA_NUM_THREADS))


def _int_list(text: str):
    try:
        values = [int(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _print_plan(plan):
    print(f"input length:      {plan.input_length}")
    print(f"features/kernel:   {plan.features_per_kernel}")
    print(f"total features:    {NUM_KERNELS} kernels x {plan.features_per_kernel} = {plan.total_features}")
    print(f"dilations:         {plan.dilations.size}")
    print(f"{'dilation':>10}  {'features/kernel':>16}")
    for d, f in zip(plan.dilations, plan.features_per_dilation):
        print(f"{int(d):>10}  {int(f):>16}")


def cmd_fit(args) -> int:
    if args.deterministic and args.seed is not None:
        raise CommandError("--seed cannot be combined with --deterministic")
    dataset = load_delimited(args.train, delimiter=args.delimiter)
    plan = plan_dilations(dataset.input_length, args.num_features, args.max_dilations)
    if args.deterministic:
        params = fit_biases_deterministic(dataset, plan)
    else:
        params = fit_biases(dataset, plan, seed=args.seed if args.seed is not None else 0)
    save_parameters(params, args.out)
    print(f"variant:           {params.variant}" + ("" if params.seed is None else f" (seed {params.seed})"))
    _print_plan(plan)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_train(args) -> int:
    params = load_parameters(args.params)
    dataset = load_delimited(args.data, delimiter=args.delimiter)
    kind = args.classifier
    if kind == "auto":
        kind = choose_classifier(len(dataset))
    print(f"classifier:        {kind}" + (" (auto)" if args.classifier == "auto" else ""))

    if kind == "ridge":
        start = time.perf_counter()
        features = transform(dataset, params)
        transform_seconds = time.perf_counter() - start
        start = time.perf_counter()
        model = ridge_fit(features, dataset.labels)
        classifier_seconds = time.perf_counter() - start
    else:
        transform_clock = [0.0]

        def timed_transform(batch):
            start = time.perf_counter()
            result = transform(batch, params)
            transform_clock[0] += time.perf_counter() - start
            return result

        start = time.perf_counter()
        model = logistic_fit(timed_transform, dataset, seed=args.seed)
        total = time.perf_counter() - start
        transform_seconds = transform_clock[0]
        classifier_seconds = total - transform_seconds

    save_model(model, args.model_out)
    print(f"transform time:    {transform_seconds:.3f} s")
    print(f"classifier time:   {classifier_seconds:.3f} s")
    print(f"wrote {args.model_out}")
    return EXIT_OK


def cmd_predict(args) -> int:
    params = load_parameters(args.params)
    model = load_model(args.model)
    if model.num_features != params.plan.total_features:
        raise CommandError(
            f"model expects {model.num_features} features but parameters "
            f"produce {params.plan.total_features}"
        )
    dataset = load_delimited(args.data, delimiter=args.delimiter, labeled=not args.unlabeled)
    features = transform(dataset, params)
    predictions = predict(model, features)
    if args.out:
        save_predictions_csv(predictions, args.out)
        print(f"wrote {args.out}")
    if not args.unlabeled:
        accuracy = float(np.mean(predictions == dataset.labels))
        print(f"accuracy:          {accuracy:.4f} ({len(dataset)} examples)")
    return EXIT_OK


def cmd_selftest(args) -> int:
    if args.cases < 1:
        raise CommandError("--cases must be at least 1")
    worst = equivalence_fuzz(args.cases, seed=args.seed)
    status = "ok" if worst <= SELFTEST_TOLERANCE else "FAILED"
    print(
        f"selftest {status}: {args.cases} cases, max per-feature |delta| = "
        f"{worst:.3e} (tolerance {SELFTEST_TOLERANCE:.0e})"
    )
    return EXIT_OK if worst <= SELFTEST_TOLERANCE else EXIT_INTERNAL


def _median_seconds(fn, repeats: int) -> float:
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def cmd_bench(args) -> int:
    if args.repeats < 1:
        raise CommandError("--repeats must be at least 1")
    rng = np.random.default_rng(args.seed)

    # warm-up so compilation is not timed
    warm = rng.normal(size=(2, 64))
    warm_params = fit_biases(warm, plan_dilations(64, 840), seed=0)
    transform(warm, warm_params)

    rows = []
    for length in args.lengths:
        for n in args.examples:
            values = rng.normal(size=(n, length))
            params = fit_biases(values, plan_dilations(length, args.num_features), seed=0)
            fast = _median_seconds(lambda: transform(values, params), args.repeats)
            naive = _median_seconds(lambda: transform_naive(values, params), args.repeats)
            rows.append((length, n, fast * 1e3, naive * 1e3, naive / fast))

    print(f"{'length':>8} {'examples':>9} {'fast_ms':>12} {'naive_ms':>12} {'speedup':>9}")
    for length, n, fast_ms, naive_ms, speedup in rows:
        print(f"{length:>8} {n:>9} {fast_ms:>12.2f} {naive_ms:>12.2f} {speedup:>9.2f}")

    csv_lines = ["length,examples,fast_ms,naive_ms,speedup"]
    csv_lines += [
        f"{length},{n},{fast_ms:.6f},{naive_ms:.6f},{speedup:.4f}"
        for length, n, fast_ms, naive_ms, speedup in rows
    ]
    if args.out:
        with open(args.out, "w") as handle:
            handle.write("\n".join(csv_lines) + "\n")
        print(f"wrote {args.out}")
    else:
        print("\n".join(csv_lines))

    # linear-scaling check over doubled lengths (and doubled example counts)
    low, high = SCALING_BOUNDS
    ok = True
    by_key = {(length, n): fast_ms for length, n, fast_ms, _, _ in rows}
    for (length, n), fast_ms in sorted(by_key.items()):
        for factor_key, label in (((2 * length, n), "length"), ((length, 2 * n), "examples")):
            if factor_key in by_key:
                ratio = by_key[factor_key] / fast_ms
                in_range = low <= ratio <= high
                ok = ok and in_range
                print(
                    f"scaling {label} {length}x{n} -> {factor_key[0]}x{factor_key[1]}: "
                    f"ratio {ratio:.2f} "
                    f"({'ok' if in_range else f'outside [{low}, {high}]'})"
                )
    return EXIT_OK if ok else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="minirocket", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="fit transform parameters on a training set")
    fit.add_argument("train", help="training dataset file")
    fit.add_argument("--num-features", type=int, default=DEFAULT_NUM_FEATURES)
    fit.add_argument("--max-dilations", type=int, default=DEFAULT_MAX_DILATIONS_PER_KERNEL)
    fit.add_argument("--seed", type=int, default=None, help="default-variant seed (default 0)")
    fit.add_argument("--deterministic", action="store_true",
                     help="fit biases on the whole training set; no seed")
    fit.add_argument("--delimiter", default="\t")
    fit.add_argument("--out", required=True, help="output parameters file")
    fit.add_argument("--threads", type=int, default=None)
    fit.set_defaults(func=cmd_fit)

    train = sub.add_parser("train", help="train a classifier on transformed features")
    train.add_argument("params", help="fitted parameters file")
    train.add_argument("data", help="training dataset file")
    train.add_argument("--classifier", choices=("auto", "ridge", "logistic"), default="auto")
    train.add_argument("--seed", type=int, default=0, help="shuffle seed for logistic training")
    train.add_argument("--delimiter", default="\t")
    train.add_argument("--model-out", required=True, help="output model file")
    train.add_argument("--threads", type=int, default=None)
    train.set_defaults(func=cmd_train)

    pred = sub.add_parser("predict", help="predict labels for a dataset")
    pred.add_argument("params", help="fitted parameters file")
    pred.add_argument("data", help="dataset file")
    pred.add_argument("--model", required=True, help="trained model file")
    pred.add_argument("--unlabeled", action="store_true",
                      help="dataset file has no label column")
    pred.add_argument("--delimiter", default="\t")
    pred.add_argument("--out", default=None, help="write predictions CSV here")
    pred.add_argument("--threads", type=int, default=None)
    pred.set_defaults(func=cmd_predict)

    selftest = sub.add_parser("selftest", help="fuzz the optimized transform against the oracle")
    selftest.add_argument("--cases", type=int, default=200)
    selftest.add_argument("--seed", type=int, default=0)
    selftest.add_argument("--threads", type=int, default=None)
    selftest.set_defaults(func=cmd_selftest)

    bench = sub.add_parser("bench", help="time the optimized transform against the oracle")
    bench.add_argument("--lengths", type=_int_list, default=[256, 512, 1024])
    bench.add_argument("--examples", type=_int_list, default=[50])
    bench.add_argument("--repeats", type=int, default=3)
    bench.add_argument("--num-features", type=int, default=DEFAULT_NUM_FEATURES)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--out", default=None, help="write the CSV here")
    bench.add_argument("--threads", type=int, default=None)
    bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _configure_threads(args.threads)
        return args.func(args)
    except (CommandError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
