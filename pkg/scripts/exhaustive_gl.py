"""Witness every matrix of GL(n, R) for small finite R and cross-check with the closure oracle.

    python scripts/exhaustive_gl.py --ring F3 --n 2
    python scripts/exhaustive_gl.py --all
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from diagwitness.oracle import exhaustive_check
from diagwitness.parsing import parse_ring


@dataclass
class ExhaustiveConfig:
    ring: str = "F2"
    n: int = 2
    budget: int = 10**6
    closure: bool = True


SUITE = [
    ExhaustiveConfig("F2", 2),
    ExhaustiveConfig("F3", 2),
    ExhaustiveConfig("F2", 3),
    ExhaustiveConfig("Z/4", 2),
    ExhaustiveConfig("Z/6", 2),
    ExhaustiveConfig("Z/8", 2, closure=False),
    ExhaustiveConfig("F2[x]/(x^2)", 2),
]


def run(cfg: ExhaustiveConfig) -> dict:
    t = time.time()
    summary = exhaustive_check(parse_ring(cfg.ring), cfg.n, cfg.budget, with_closure=cfg.closure)
    return {"config": asdict(cfg), "seconds": round(time.time() - t, 2), **summary.to_json()}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ring", default="F2")
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--budget", type=int, default=10**6)
    ap.add_argument("--no-closure", action="store_true")
    ap.add_argument("--all", action="store_true", help="run the built-in suite")
    args = ap.parse_args()
    configs = SUITE if args.all else [ExhaustiveConfig(args.ring, args.n, args.budget, not args.no_closure)]
    for cfg in configs:
        print(json.dumps(run(cfg), sort_keys=True))


if __name__ == "__main__":
    main()
