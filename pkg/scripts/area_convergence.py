#!/usr/bin/env python3
"""Convergence study: sampled loop area versus the closed-form cycle work.

Doubles the per-stroke sample count and prints the area error together with
the observed convergence order between consecutive rows (expected: 2, the
trapezoid rate).
"""

import argparse
import math

from qcarnot import CarnotSpec, build_carnot_cycle, evaluate_cycle, polyline_work, sample_cycle


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--top-level", type=int, default=2)
    parser.add_argument("--l1", type=float, default=1.0)
    parser.add_argument("--l3", type=float, default=4.0)
    parser.add_argument("--min-samples", type=int, default=64)
    parser.add_argument("--doublings", type=int, default=7)
    args = parser.parse_args()

    cycle = build_carnot_cycle(CarnotSpec(args.top_level, args.l1, args.l3))
    W = evaluate_cycle(cycle).W
    print(f"closed-form W = {W!r}")
    print(f"{'samples':>8}  {'|area - W|':>12}  {'order':>7}")

    previous = None
    count = args.min_samples
    for _ in range(args.doublings):
        error = abs(polyline_work(sample_cycle(cycle, count)) - W)
        order = "" if previous is None else f"{math.log(previous / error) / math.log(2):7.4f}"
        print(f"{count:>8}  {error:12.4e}  {order:>7}")
        previous = error
        count *= 2


if __name__ == "__main__":
    main()
