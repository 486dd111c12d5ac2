"""Command-line interface.

    spdcpol run <spec> [--out DIR] [--format csv|json] [--seed N]
    spdcpol bell-angles <spec> --state psi+|psi- [--out DIR] [--format csv|json] [--seed N]
    spdcpol materials list

``<spec>`` is a scenario file path or a preset name (fig2a, fig2b, fig2c,
fig3). Exit codes: 0 success, 2 configuration error, 3 numerical-convergence
error.
"""

from __future__ import annotations

import argparse
import sys

from .biphoton import BellState
from .errors import ConfigError, PhaseMatchingError, QuadratureError
from .materials import builtin_materials
from .output import to_csv, write_table
from .scenario import PRESETS, list_bell_angles, load_scenario, run_scenario

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICS = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spdcpol",
        description="Type-II collinear SPDC polarization-entanglement "
                    "simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario and emit its tables")
    run.add_argument("spec", help=f"scenario file or preset "
                                  f"({', '.join(PRESETS)})")
    run.add_argument("--out", default="out", help="output directory")
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    run.add_argument("--seed", type=int, default=None,
                     help="override the scenario seed")

    bell = sub.add_parser("bell-angles",
                          help="list the angles where Bell states appear")
    bell.add_argument("spec", help="scenario file or preset")
    bell.add_argument("--state", choices=("psi+", "psi-"), required=True)
    bell.add_argument("--out", default=None,
                      help="write the table here instead of stdout")
    bell.add_argument("--format", choices=("csv", "json"), default="csv")
    bell.add_argument("--seed", type=int, default=None)

    materials = sub.add_parser("materials", help="material catalogue")
    materials.add_argument("action", choices=("list",))
    return parser


def _cmd_run(args) -> int:
    spec = load_scenario(args.spec, seed=args.seed)
    tables = run_scenario(spec)
    for table in tables:
        path = write_table(table, args.out, fmt=args.format)
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_bell_angles(args) -> int:
    spec = load_scenario(args.spec, seed=args.seed)
    which = BellState.PSI_PLUS if args.state == "psi+" else BellState.PSI_MINUS
    table = list_bell_angles(spec, which)
    if table.note:
        print(f"note: {table.note}")
    if args.out is None:
        sys.stdout.write(to_csv(table))
    else:
        path = write_table(table, args.out, fmt=args.format)
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_materials(args) -> int:
    for name, record in sorted(builtin_materials().items()):
        band = f"band {record.band[0] * 1e6:g}-{record.band[1] * 1e6:g} um"
        ordinary = record.ordinary
        extraordinary = record.extraordinary
        print(f"{name}: {band}")
        print(f"  ordinary:      a={ordinary.a:g} b={ordinary.b:g} "
              f"c={ordinary.c:g} d={ordinary.d:g}")
        print(f"  extraordinary: a={extraordinary.a:g} b={extraordinary.b:g} "
              f"c={extraordinary.c:g} d={extraordinary.d:g}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "bell-angles":
            return _cmd_bell_angles(args)
        return _cmd_materials(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (QuadratureError, PhaseMatchingError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICS


if __name__ == "__main__":
    sys.exit(main())
