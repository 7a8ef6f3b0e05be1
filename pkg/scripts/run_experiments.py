#!/usr/bin/env python3
"""Run the experiment drivers and write one JSON report per experiment.

    python3 scripts/run_experiments.py --seed 0 --out reports/
"""

import argparse
import json
import time
from pathlib import Path

from mllnet import experiments


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--out", default="reports")
    ap.add_argument("--only", choices=["adequacy", "completeness", "properties"], action="append")
    ap.add_argument("--max-rules", type=int, default=4)
    ap.add_argument("--samples", type=int, default=200)
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in args.only or ["adequacy", "completeness", "properties"]:
        t0 = time.perf_counter()
        rep = experiments.run(name, seed=args.seed, max_rules=args.max_rules, samples=args.samples)
        data = rep.to_json()
        (out / f"{name}.json").write_text(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
        print(f"{rep.render()}\n  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
