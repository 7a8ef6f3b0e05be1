#!/usr/bin/env python3
"""Optimized vs exhaustive orthogonality on every (corpus net, test tuple) interaction."""

import argparse
import time

from mllnet.correctness import test_tuples
from mllnet.enumkit import testable_corpus
from mllnet.net import interaction
from mllnet.search import reaches_zero


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-connectives", type=int, default=3)
    ap.add_argument("--max-leaves", type=int, default=5)
    args = ap.parse_args()

    t0 = time.perf_counter()
    total = mismatches = largest = 0
    for gamma, net in testable_corpus(args.max_connectives, args.max_leaves):
        for t in test_tuples(gamma):
            st = interaction(net, t)
            fast = reaches_zero(st, True)
            full = reaches_zero(st, False)
            total += 1
            largest = max(largest, full.states)
            mismatches += fast.verdict != full.verdict
    print(f"{total} interactions, {mismatches} mismatches, largest exhaustive search {largest} states, "
          f"{time.perf_counter() - t0:.0f}s")


if __name__ == "__main__":
    main()
