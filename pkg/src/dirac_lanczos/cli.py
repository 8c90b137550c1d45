"""Command-line entry point: ``dirac-lanczos run`` and ``dirac-lanczos oracle``."""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
import warnings

from .config import RunConfig, load_config
from .errors import (
    ConfigError,
    DiracLanczosError,
    InvalidParameter,
    NoConvergence,
    NumericalOverflow,
)
from .hamiltonian import FINE_STRUCTURE, DiracParams
from .reference import exact_energy
from .runner import EXIT_CONFIG_ERROR, EXIT_NUMERICAL_FAILURE, emit_outputs, run


def _add_run_parser(sub) -> None:
    p = sub.add_parser("run", help="run the Lanczos solver and write CSV/JSON reports")
    p.add_argument("--config", help="key = value config file; flags override its entries")
    p.add_argument("--include-timing", action="store_true",
                   help="add per-iteration wall times to the JSON report (breaks byte-reproducibility)")
    p.add_argument("-v", "--verbose", action="store_true")
    for f in dataclasses.fields(RunConfig):
        p.add_argument("--" + f.name.replace("_", "-"), dest=f.name, default=None, metavar="VALUE")


def _add_oracle_parser(sub) -> None:
    p = sub.add_parser("oracle", help="print the closed-form bound-state energy")
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--principal-n", type=int, required=True)
    p.add_argument("--alpha", type=float, default=FINE_STRUCTURE)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirac-lanczos",
        description="Lanczos solver for bound states of the radial Coulomb-Dirac equation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    _add_run_parser(sub)
    _add_oracle_parser(sub)
    return parser


def _cmd_run(args) -> int:
    overrides = {f.name: getattr(args, f.name) for f in dataclasses.fields(RunConfig)}
    try:
        config = load_config(args.config, overrides)
        report = run(config)
    except (ConfigError, InvalidParameter) as exc:
        print(f"dirac-lanczos: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except (NumericalOverflow, NoConvergence) as exc:
        print(f"dirac-lanczos: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL_FAILURE
    except DiracLanczosError as exc:
        print(f"dirac-lanczos: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL_FAILURE
    emit_outputs(report, config.output_prefix, include_timing=args.include_timing)
    return report.exit_code


def _cmd_oracle(args) -> int:
    try:
        params = DiracParams(args.z, args.kappa, args.alpha)
        print(format(exact_energy(params, args.principal_n), ".17g"))
    except InvalidParameter as exc:
        print(f"dirac-lanczos: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING)
    logging.captureWarnings(True)
    if args.command == "run":
        return _cmd_run(args)
    return _cmd_oracle(args)


if __name__ == "__main__":
    sys.exit(main())
