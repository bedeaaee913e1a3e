#!/usr/bin/env python3
"""Scan random gambles for the strong-vs-independent price gap.

For a pair of credal marginals, the strong product prices every gamble
at least as high as the most conservative independent joint; this scan
draws random gambles on the joint space, prints both prices, and
reports the largest observed gap.

    python3 scripts/strong_gap_scan.py --trials 40 --seed 1
"""

import argparse
import random
import sys
from fractions import Fraction

from desirability import (
    CredalSet,
    Gamble,
    Scope,
    Variable,
    format_rational,
    inex_lower_prevision,
    strong_product_lower,
)


def _random_credal(r: random.Random, scope: Scope) -> CredalSet:
    vertices = []
    for _ in range(r.choice([1, 2])):
        top = Fraction(r.randint(1, 9), 10)
        vertices.append((top, 1 - top))
    return CredalSet.of(scope, vertices)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=20, help="gambles to draw")
    parser.add_argument("--seed", type=int, default=0, help="RNG seed")
    parser.add_argument(
        "--span", type=int, default=2, help="gamble entries stay in [-span, span]"
    )
    args = parser.parse_args(argv)

    r = random.Random(args.seed)
    x1 = Variable("X1", ("a", "b"))
    x2 = Variable("X2", ("a", "b"))
    joint = Scope.of([x1, x2])
    blocks = [_random_credal(r, Scope.of([v])) for v in (x1, x2)]
    for k, block in enumerate(blocks):
        print(
            "block %d vertices: %s"
            % (
                k,
                "; ".join(
                    "(" + ",".join(format_rational(m) for m in p) + ")"
                    for p in block.vertices
                ),
            )
        )

    widest = Fraction(0)
    witness = None
    violations = 0
    for _ in range(args.trials):
        f = Gamble.on(
            joint,
            [
                Fraction(r.randint(-4 * args.span, 4 * args.span), 4)
                for _ in range(joint.size)
            ],
        )
        weak = inex_lower_prevision(blocks, f)
        strong = strong_product_lower(blocks, f)
        gap = strong - weak
        if gap < 0:
            violations += 1
        if gap > widest:
            widest, witness = gap, f
        print(
            "gamble (%s): independent %s | strong %s | gap %s"
            % (
                ",".join(format_rational(v) for v in f.values),
                format_rational(weak),
                format_rational(strong),
                format_rational(gap),
            )
        )

    if witness is not None:
        print(
            "widest gap %s at (%s)"
            % (
                format_rational(widest),
                ",".join(format_rational(v) for v in witness.values),
            )
        )
    else:
        print("no gap observed")
    if violations:
        print("ERROR: %d gambles priced below the independent floor" % violations)
    return 0 if violations == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
