"""
Command line interface: simulate, aggregate, evaluate, report

Exit codes are 0 on success, 2 for usage, config, or input errors, and 3
for runtime failures
"""

# stdlib
import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

# library
import numpy as np
import pandas as pd

# module
from ensagg import __version__
from ensagg.aggregation import AggMethod, EnsembleForecast, aggregate, fit_vi_coefficients
from ensagg.configuration import parse_overrides
from ensagg.distributions import from_dict, loads
from ensagg.exceptions import ConfigError, DomainError, InvalidDistribution, ShapeError
from ensagg.experiment import load_config, run, summarize, write_json, write_outputs
from ensagg.scoring import score_cases, summarize_cases
from ensagg.static.core import METHODS, PI_LEVEL
from ensagg.structs import CoefficientFit

LOG = logging.getLogger("ensagg")

USAGE_ERRORS = (
    ConfigError,
    ShapeError,
    InvalidDistribution,
    DomainError,
    OSError,
    json.JSONDecodeError,
    KeyError,
)


def _read_json(path: str):
    return json.loads(Path(path).read_text(encoding="utf8"))


def _read_obs(path: str) -> np.ndarray:
    """Observation column y, or the first column of a headed CSV"""
    frame = pd.read_csv(path)
    column = "y" if "y" in frame.columns else frame.columns[0]
    return frame[column].to_numpy(dtype=float)


def _emit(data: object, out: Optional[str]):
    text = json.dumps(data, indent=2)
    if out:
        Path(out).write_text(text + "\n", encoding="utf8")
    else:
        print(text)


def cmd_simulate(args: argparse.Namespace) -> int:
    overrides = parse_overrides(args.overrides or [])
    if args.seed is not None:
        overrides.update({"scenario.seed": args.seed, "net.seed": args.seed})
    if args.threads is not None:
        overrides["threads"] = args.threads
    if args.out:
        overrides["output_dir"] = args.out
    preset = args.preset if args.config is None else None
    config = load_config(args.config, preset, overrides)
    LOG.info(
        "%s: %d reps, variants %s, methods %s",
        config.scenario.id,
        config.repetitions,
        ",".join(config.variants),
        ",".join(config.methods),
    )
    result = run(config)
    write_outputs(result, summarize(result), config.output_dir)
    print(config.output_dir)
    return 0


def _coefficients(args: argparse.Namespace, method: AggMethod):
    if not method.needs_estimation:
        return None
    if args.coeffs:
        return CoefficientFit.from_dict(_read_json(args.coeffs)).coeffs
    if args.valid_ensembles and args.valid_obs:
        data = _read_json(args.valid_ensembles)
        valid = [EnsembleForecast.from_dict(e) for e in data]
        fit = fit_vi_coefficients(method, valid, _read_obs(args.valid_obs))
        LOG.info("Estimated a=%.4f w0=%.4f", fit.coeffs.a, fit.coeffs.w0)
        return fit.coeffs
    raise ConfigError("coeffs", f"{method.variant} needs --coeffs or validation data")


def cmd_aggregate(args: argparse.Namespace) -> int:
    data = _read_json(args.input)
    many = isinstance(data, dict) and "ensembles" in data
    ensembles = [EnsembleForecast.from_dict(e) for e in (data["ensembles"] if many else [data])]
    method = AggMethod(args.method)
    coeffs = _coefficients(args, method)
    aggregated = [aggregate(ens, method, coeffs).to_dict() for ens in ensembles]
    _emit(aggregated if many else aggregated[0], args.out)
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    forecasts = loads(Path(args.forecasts).read_text(encoding="utf8"))
    if not isinstance(forecasts, list):
        forecasts = [forecasts]
    obs = _read_obs(args.obs)
    if len(forecasts) != obs.size:
        raise ShapeError(f"{len(forecasts)} forecasts but {obs.size} observations")
    cases = score_cases(forecasts, obs, args.level, args.seed or 0)
    report = summarize_cases(cases, obs)
    row = pd.DataFrame([report.row("forecast", 1, 0)])
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    cases.to_frame().to_csv(out / "cases.csv", index=False)
    row.to_csv(out / "report.csv", index=False)
    print(row.to_csv(index=False), end="")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    # pylint: disable=import-outside-toplevel
    from ensagg.report import write_report

    results = args.results or args.out
    if not results:
        raise ConfigError("results", "report needs --results or --out")
    paths = write_report(results, args.out)
    print(paths["chart"].parent)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ensagg", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="debug logging")
    common.add_argument("--out", help="output directory (aggregate: output file)")
    common.add_argument("--seed", type=int, help="base random seed")
    common.add_argument(
        "--threads", type=int, default=None, help="worker processes (default: available cores)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser("simulate", parents=[common], help="run the simulation study")
    source = simulate.add_mutually_exclusive_group()
    source.add_argument("--config", help="JSON run configuration")
    source.add_argument("--preset", default="desk", help="packaged configuration")
    simulate.add_argument("--overrides", nargs="*", metavar="KEY=VALUE", help="dotted overrides")
    simulate.set_defaults(func=cmd_simulate)

    agg = sub.add_parser("aggregate", parents=[common], help="aggregate an ensemble file")
    agg.add_argument("--input", required=True, help="ensemble JSON")
    agg.add_argument("--method", required=True, choices=METHODS)
    agg.add_argument("--coeffs", help="coefficient JSON {variant, a, w0, n}")
    agg.add_argument("--valid-ensembles", help="JSON list of validation ensembles")
    agg.add_argument("--valid-obs", help="CSV of validation observations")
    agg.set_defaults(func=cmd_aggregate)

    ev = sub.add_parser("evaluate", parents=[common], help="score forecasts against observations")
    ev.add_argument("--forecasts", required=True, help="JSON list of distributions")
    ev.add_argument("--obs", required=True, help="CSV of observations")
    ev.add_argument("--level", type=float, default=PI_LEVEL, help="prediction interval level")
    ev.set_defaults(func=cmd_evaluate)

    rep = sub.add_parser("report", parents=[common], help="tables, chart, and checks of a study")
    rep.add_argument("--results", help="simulate output directory")
    rep.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        format="%(asctime)s - %(levelname)s - %(message)s",
        level=logging.DEBUG if args.verbose else logging.INFO,
    )
    if args.command == "simulate" and args.threads is None:
        args.threads = os.cpu_count() or 1
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        LOG.error("%s", exc)
        return 2
    except Exception as exc:  # pylint: disable=broad-except
        LOG.exception("Failed: %s", exc)
        return 3


if __name__ == "__main__":
    sys.exit(main())
