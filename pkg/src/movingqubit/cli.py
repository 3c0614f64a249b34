"""Command line: sweep, figure, verify, regime.

Exit codes: 0 success, 1 a verification check failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .figures import FIGURE_IDS, reproduce_figure
from .regime import validate_regime
from .sweep import ConfigError, load_config, run_sweep

EXIT_OK, EXIT_FAILED, EXIT_BAD_INPUT = 0, 1, 2


def _cmd_sweep(args) -> int:
    config = load_config(args.config)
    result = run_sweep(config)
    for path in result.write(args.out, force=args.force):
        print(path)
    return EXIT_OK


def _cmd_figure(args) -> int:
    for path in reproduce_figure(args.id, args.out, force=args.force):
        print(path)
    return EXIT_OK


def _cmd_verify(args) -> int:
    from .verify import verify

    config = load_config(args.config) if args.config else None
    report = verify(config)
    json.dump(report, sys.stdout, indent=2)
    print()
    return EXIT_OK if report["passed"] else EXIT_FAILED


def _cmd_regime(args) -> int:
    config = load_config(args.config)
    for beta in config.beta_list:
        problems = validate_regime(config.params.with_(beta=beta), mass=args.mass)
        status = "ok" if not problems else "; ".join(problems)
        print(f"beta={beta:g}: {status}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="movingqubit", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a velocity sweep from a config file")
    p.add_argument("config")
    p.add_argument("--out", help="output directory (default: from config)")
    p.add_argument("--force", action="store_true", help="overwrite existing files")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("figure", help="regenerate the data for one figure")
    p.add_argument("id", choices=FIGURE_IDS)
    p.add_argument("--out", default=".")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("verify", help="cross-check closed forms against independent oracles")
    p.add_argument("--config")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("regime", help="check the classical-motion conditions")
    p.add_argument("config")
    p.add_argument("--mass", type=float, default=None, help="atomic mass in kg (enables de Broglie and recoil checks)")
    p.set_defaults(func=_cmd_regime)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ConfigError, FileExistsError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
