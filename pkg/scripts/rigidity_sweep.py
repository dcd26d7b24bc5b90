#!/usr/bin/env python3
"""Run seeded rigidity trials in bulk and summarize.

Each trial scrambles a strongly slide-free reduced graph with random legal
moves, reduces the result, and checks it is the original up to relabeling
and sign flips.  Any failure prints a full replayable witness.
"""

import argparse
import time

from gbsdeform import ExpansionBounds, RandomGraphSpec, format_move, rigidity_trial


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0, help="base seed")
    ap.add_argument("--moves", type=int, default=8)
    ap.add_argument("--max-vertices", type=int, default=5)
    ap.add_argument("--max-n", type=int, default=9)
    args = ap.parse_args()

    bounds = ExpansionBounds(max_n=args.max_n)
    passed = 0
    start = time.perf_counter()
    for i in range(args.trials):
        seed = args.seed + i
        nv = 2 + seed % (args.max_vertices - 1)
        spec = RandomGraphSpec(num_vertices=nv, num_edges=nv - 1 + seed % 2,
                               index_range=(2, 9), require="strongly_slide_free")
        trial = rigidity_trial(spec, num_moves=args.moves, seed=seed, bounds=bounds)
        if trial.passed:
            passed += 1
        else:
            print(f"FAIL seed={seed}")
            print("  start:", trial.start)
            for move in trial.moves:
                print("  ", format_move(move))
    elapsed = time.perf_counter() - start
    print(f"{passed}/{args.trials} trials passed in {elapsed:.2f}s")


if __name__ == "__main__":
    main()
