"""Command line entry point ``mtcl``.

Exit status: 0 when every check passes, 1 when a verification check fails,
2 for usage or configuration errors, 3 for numerical failures (truncation
or CFL).
"""

from __future__ import annotations

import argparse
import sys

from mtcl.errors import MTCLError, NumericalError
from mtcl.scenario import COMMANDS, SUITES, parse_scenario, run

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def build_parser():
    p = _Parser(prog="mtcl", description="Two-time Hamilton-Jacobi and conservation-law solver and verifier.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--scenario", required=True, help="scenario file")
    p.add_argument("--suite", default="all", choices=SUITES, help="verification suite (verify only)")
    p.add_argument("--out", default=None, help="output directory (default: $MTCL_OUT, then the scenario's [output] dir)")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for lattice evaluation")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("mtcl: error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = parse_scenario(args.scenario)
        result = run(cfg, args.command, suite=args.suite, out=args.out, jobs=args.jobs)
    except NumericalError as e:
        print(f"mtcl: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (MTCLError, ValueError, OSError) as e:
        print(f"mtcl: error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    for rep in result.reports:
        for line in rep.lines():
            print(line)
    for path in result.files:
        print(f"wrote {path}")
    return EXIT_OK if result.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
