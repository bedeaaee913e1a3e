#!/usr/bin/env python3
"""Run the built-in worked examples and print a verdict table.

Exits nonzero when any example fails, so the script doubles as a quick
regression gate:

    python3 scripts/run_example_suite.py
    python3 scripts/run_example_suite.py --budget 50000 --json
"""

import argparse
import json
import sys

from desirability.fixtures import run_all


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--budget",
        type=int,
        default=100000,
        help="cap for enumerative queries inside the examples",
    )
    parser.add_argument("--json", action="store_true", help="JSON output")
    args = parser.parse_args(argv)

    results = run_all(args.budget)
    if args.json:
        print(
            json.dumps(
                [
                    {"name": r.name, "passed": r.passed, "detail": r.detail}
                    for r in results
                ],
                indent=2,
                sort_keys=True,
            )
        )
    else:
        width = max(len(r.name) for r in results)
        for r in results:
            print(
                "%s  %-*s  %s"
                % ("PASS" if r.passed else "FAIL", width, r.name, r.detail)
            )
        print(
            "result: %d/%d passed"
            % (sum(r.passed for r in results), len(results))
        )
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
