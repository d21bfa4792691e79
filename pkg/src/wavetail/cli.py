"""Command-line entry point ``wavetail``.

Exit codes: 0 pass, 1 verdict failure, 2 usage or config error,
3 numerical budget exceeded.
"""

import argparse
import csv
import json
import math
import sys

from . import loopint
from .errors import ConfigError, ConvergenceError, CrossCheckError, DegenerateSamplesError, WavetailError
from .harness import CSV_HEADER, ExperimentConfig, fit_rate, run_experiment, selftest, write_csv

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
_KIND_FOR = {"cone-run": "cone", "ab-run": "ab", "free2d-run": "free2d"}


def _parser():
    p = argparse.ArgumentParser(prog="wavetail", description="Long-time wave decay experiments.")
    sub = p.add_subparsers(dest="command", required=True)

    li = sub.add_parser("loop-integral", help="keyhole integral of exp(-i t lam) lam^nu log^k(b lam)")
    li.add_argument("--nu", type=float, required=True)
    li.add_argument("--k", type=int, default=0)
    li.add_argument("--b-re", type=float, default=1.0)
    li.add_argument("--b-im", type=float, default=0.0)
    li.add_argument("--t", type=float, required=True)
    li.add_argument("--contour", choices=("finite", "infinite"), default="infinite")
    li.add_argument("--c", type=float, default=1.0, help="circle radius of the finite contour")
    li.add_argument("--delta", type=float, default=None)

    for name in _KIND_FOR:
        run = sub.add_parser(name, help=f"run a {_KIND_FOR[name]} experiment")
        run.add_argument("--config", required=True)
        run.add_argument("--csv", default=None, help="override out.path")

    fit = sub.add_parser("fit", help="fit a decay law to samples from a CSV file")
    fit.add_argument("--input", required=True)
    fit.add_argument("--family", choices=("pure", "log"), default="pure")

    sub.add_parser("selftest", help="run built-in identity checks")
    return p


def _loop_integral(args):
    b = complex(args.b_re, args.b_im)
    spec = loopint.ModelIntegralSpec(args.nu, args.k, b, args.t)
    delta = args.delta if args.delta is not None else loopint.default_delta(b, args.t)
    c = args.c if args.contour == "finite" else math.inf
    value = loopint.loop_integral_numeric(spec, loopint.ContourSpec(delta, c))
    print(json.dumps({"re": value.real, "im": value.imag, "contour": args.contour, "delta": delta}))
    return EXIT_OK


def _run(args):
    try:
        with open(args.config, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot load config {args.config}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    kind = _KIND_FOR[args.command]
    model = doc.setdefault("model", {})
    if model.setdefault("kind", kind) != kind:
        raise ConfigError(f"{args.command} needs model.kind = {kind!r}, config has {model['kind']!r}")
    cfg = ExperimentConfig.from_dict(doc)
    result = run_experiment(cfg)
    write_csv(result, args.csv)
    for v in result.verdicts:
        print(v.line())
    if result.budget_failure:
        return EXIT_BUDGET
    return EXIT_OK if result.passed else EXIT_VERDICT


def _read_samples(path):
    with open(path, encoding="utf-8", newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise DegenerateSamplesError("input file is empty")
    groups = {}
    if ",".join(rows[0]) == CSV_HEADER:
        for r in rows[1:]:
            groups.setdefault(int(r[0]), []).append((float(r[1]), complex(float(r[2]), float(r[3]))))
        return groups
    try:
        float(rows[0][0])
    except ValueError:
        rows = rows[1:]
    samples = []
    for r in rows:
        im = float(r[2]) if len(r) > 2 else 0.0
        samples.append((float(r[0]), complex(float(r[1]), im)))
    return {0: samples}


def _fit(args):
    try:
        groups = _read_samples(args.input)
    except OSError as exc:
        raise ConfigError(f"cannot read {args.input}: {exc}") from exc
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"malformed sample file {args.input}: {exc}") from exc
    family = "pure_power" if args.family == "pure" else "power_log"
    for pid in sorted(groups):
        fit = fit_rate([s for s in groups[pid] if s[0] >= 1], family)
        print(
            json.dumps(
                {
                    "point_id": pid,
                    "power": fit.power,
                    "logpow": fit.logpow,
                    "constant": [fit.constant.real, fit.constant.imag],
                    "residual": fit.residual,
                }
            )
        )
    return EXIT_OK


def _selftest(_args):
    report = selftest()
    for line in report.lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_VERDICT


def main(argv=None):
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {"loop-integral": _loop_integral, "fit": _fit, "selftest": _selftest}
    handler = handlers.get(args.command, _run)
    try:
        return handler(args)
    except (ConvergenceError, CrossCheckError) as exc:
        print(f"error: numerical budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (WavetailError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
