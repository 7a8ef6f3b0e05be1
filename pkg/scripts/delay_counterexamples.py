#!/usr/bin/env python3
"""Print sampled paths on which an irreversible step cannot be delayed."""

import argparse

from mllnet import experiments


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--samples", type=int, default=200)
    args = ap.parse_args()

    rep = experiments.path_properties(args.seed, args.samples)
    print(rep.notes[-1])
    for f in rep.failures:
        print(f"# sample {f['sample']}: {f['kind']}")
        print(f["net"].rstrip())
        print("# path: " + ", ".join(f["path"]))


if __name__ == "__main__":
    main()
