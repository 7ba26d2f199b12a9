"""Seeded witness runs over Q and the rational quaternions, with word-length statistics."""
import argparse
import json
import random
import statistics
import time
from dataclasses import asdict, dataclass

from diagwitness.oracle import random_invertible
from diagwitness.parsing import parse_ring
from diagwitness.witness import witness


@dataclass
class SampleConfig:
    ring: str = "Q"
    n: int = 3
    samples: int = 200
    bound: int = 3
    seed: int = 0


def run(cfg: SampleConfig) -> dict:
    R = parse_ring(cfg.ring)
    rng = random.Random(cfg.seed)
    lengths, fallbacks, chars = [], 0, 0
    t = time.time()
    for _ in range(cfg.samples):
        a = random_invertible(R, cfg.n, rng, cfg.bound)
        rep = witness(a)
        lengths.append(len(rep.word))
        fallbacks += rep.fallback_used
        # rough size of the largest coordinate appearing in the word
        for f in rep.word.factors:
            for x in getattr(f, "entries", ()):
                chars = max(chars, len(R.format(x)))
    return {
        "config": asdict(cfg),
        "seconds": round(time.time() - t, 2),
        "fallbacks": fallbacks,
        "length_max": max(lengths),
        "length_median": statistics.median(lengths),
        "max_entry_chars": chars,
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ring", default="Q")
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--bound", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(json.dumps(run(SampleConfig(args.ring, args.n, args.samples, args.bound, args.seed)), sort_keys=True))


if __name__ == "__main__":
    main()
