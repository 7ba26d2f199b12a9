"""Scan random invertible matrices for the inverse-entry / minor-invertibility equivalence."""
import argparse
import json

from diagwitness.oracle import minor_scan
from diagwitness.parsing import parse_ring


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ring", default="F5")
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bound", type=int, default=3)
    args = ap.parse_args()
    res = minor_scan(parse_ring(args.ring), args.n, args.samples, args.seed, args.bound)
    print(json.dumps({"ring": args.ring, "n": args.n, "passed": res.passed, "checked": res.checked,
                      "counterexample": res.counterexample}, sort_keys=True))


if __name__ == "__main__":
    main()
