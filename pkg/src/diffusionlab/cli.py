"""Command-line experiment driver.

One experiment per invocation; composition belongs to shell scripts.

    diffusionlab run <experiment> [--config FILE] [--seed N] [--out DIR]
                     [--param key=value]... [--no-figures]

Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 usage error
(nothing is written), 3 runtime failure.  Parameter precedence: built-in
defaults, then the config file, then --param/--seed flags, and finally the
DIFFUSION_SEED environment variable, which overrides everything.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .experiments import EXPERIMENTS, ConfigError, resolve_params, run_experiment
from .figures import render
from .reporting import emit

__all__ = ["main"]

EXIT_PASS = 0
EXIT_VERDICT_FAIL = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diffusionlab",
        description="Run one named diffusion experiment and write its "
                    "report, tables, and figures.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one experiment",
                         description="Experiments: " + ", ".join(EXPERIMENTS))
    run.add_argument("experiment", choices=sorted(EXPERIMENTS),
                     help="experiment name")
    run.add_argument("--config", type=Path, default=None,
                     help="JSON config file with a 'parameters' table")
    run.add_argument("--seed", type=int, default=None,
                     help="override the seed parameter")
    run.add_argument("--out", type=Path, default=None,
                     help="output directory (default results/<experiment>)")
    run.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                     help="override one parameter; repeatable")
    run.add_argument("--no-figures", action="store_true",
                     help="skip figure rendering, emit only CSV/JSON")
    return parser


def _load_config_file(path: Path, experiment: str) -> tuple[dict, Path | None]:
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    allowed = {"experiment", "parameters", "out"}
    unknown = set(raw) - allowed
    if unknown:
        raise ConfigError(f"config file {path} has unknown keys {sorted(unknown)}; "
                          f"allowed: {sorted(allowed)}")
    if "experiment" in raw and raw["experiment"] != experiment:
        raise ConfigError(f"config file names experiment '{raw['experiment']}' "
                          f"but '{experiment}' was requested")
    params = raw.get("parameters", {})
    if not isinstance(params, dict):
        raise ConfigError("'parameters' must be an object of key/value pairs")
    out = Path(raw["out"]) if "out" in raw else None
    return params, out


def _parse_param_flags(flags: list[str]) -> dict:
    overrides = {}
    for flag in flags:
        key, sep, value = flag.partition("=")
        if not sep or not key:
            raise ConfigError(f"--param expects KEY=VALUE, got '{flag}'")
        overrides[key] = value
    return overrides


def _run(args: argparse.Namespace) -> int:
    overrides: dict = {}
    out_dir: Path | None = args.out
    if args.config is not None:
        file_params, file_out = _load_config_file(args.config, args.experiment)
        overrides.update(file_params)
        if out_dir is None:
            out_dir = file_out
    overrides.update(_parse_param_flags(args.param))
    if args.seed is not None:
        overrides["seed"] = args.seed
    env_seed = os.environ.get("DIFFUSION_SEED")
    if env_seed is not None and env_seed != "":
        try:
            overrides["seed"] = int(env_seed)
        except ValueError:
            raise ConfigError(f"DIFFUSION_SEED must be an integer, got "
                              f"'{env_seed}'") from None

    # validate everything before any output is written
    resolve_params(args.experiment, overrides)
    if out_dir is None:
        out_dir = Path("results") / args.experiment

    result = run_experiment(args.experiment, overrides)
    written = emit(result, out_dir)
    if not args.no_figures:
        written += render(result, out_dir)
    for path in written:
        print(path)
    for name, ok in result.verdicts.items():
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return EXIT_PASS if result.passed else EXIT_VERDICT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return _run(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001  (runtime failures map to exit 3)
        print(f"runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
