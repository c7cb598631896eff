"""Command line: ``sovquant verify | sphere-demo | list-checks``."""

import argparse
import sys

from ..errors import ConfigError
from .checks import CHECKS, CORE_CHECKS, DESCRIPTIONS
from .config import load_config
from .runner import BUILTINS, builtin_scenario, run_scenario, sphere_demo

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sovquant",
        description="Exact verification of a star product with separation of variables across a Levi nondegenerate hypersurface.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a scenario configuration")
    source = verify.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", help="path to a JSON scenario file")
    source.add_argument("--builtin", choices=sorted(BUILTINS), help="run a built-in scenario instead")
    _add_common(verify)

    demo = sub.add_parser("sphere-demo", help="full suite on the unit sphere in C^n")
    demo.add_argument("--n", type=int, choices=(1, 2, 3), required=True)
    demo.add_argument("--seed", type=int, default=0)
    _add_common(demo)

    sub.add_parser("list-checks", help="print the available checks")
    return parser


def _add_common(p):
    p.add_argument("--nu-order", type=int, help="override the nu-order R")
    p.add_argument("--jet-order", type=int, help="override the jet order J (J >= 2R + 2)")
    p.add_argument("--report", help="write the JSON report to this path")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="print the report as JSON")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="print a text summary (default)")
    p.set_defaults(fmt="text")


def _emit(report, args, out):
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report.dumps() + "\n")
    print(report.dumps() if args.fmt == "json" else report.to_text(), file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "list-checks":
        for name in CHECKS:
            extra = "" if name in CORE_CHECKS else " (extra)"
            print(f"{name:20} {DESCRIPTIONS[name]}{extra}", file=out)
        return EXIT_OK
    try:
        if args.command == "verify":
            if args.config:
                config = load_config(args.config).with_orders(args.jet_order, args.nu_order)
            else:
                config = builtin_scenario(args.builtin, nu_order=args.nu_order, jet_order=args.jet_order)
            report = run_scenario(config)
        else:
            report = sphere_demo(args.n, args.nu_order, args.jet_order, args.seed)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return _emit(report, args, out)


if __name__ == "__main__":
    sys.exit(main())
