"""Command-line entry point.

Exit codes: 0 ok, 1 verification failure, 2 bad input (parse error or a
singular matrix), 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from .matrix import Gen, evaluate_word
from .nets import inverse_closure_check, pattern_of, validate_net
from .oracle import (
    BudgetExceeded,
    exhaustive_check,
    minor_scan,
    random_invertible,
)
from .parsing import ParseError, parse_matrix, parse_ring, parse_word
from .rings import IntegerMod, PrimeField, Rationals, RationalQuaternions
from .witness import NotInvertible, WitnessError, witness

OK, FAILED, BAD_INPUT, OVER_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(payload: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _word_text(word, ring) -> str:
    return " ".join("a" if f is Gen else "diag(" + ", ".join(ring.format(x) for x in f.entries) + ")" for f in word.factors)


def _load(args):
    if args.ring is None or args.matrix is None:
        raise UsageError("--ring and --matrix are required")
    ring = parse_ring(args.ring)
    return ring, parse_matrix(ring, args.matrix)


def cmd_witness(args) -> int:
    ring, a = _load(args)
    report = witness(a)
    payload = {"ring": str(ring), "matrix": a.to_strings(), **report.to_json(ring)}
    lines = [
        f"ring: {ring}",
        f"word ({len(report.word)} factors): {_word_text(report.word, ring)}",
        f"verified: {report.verified}",
        f"fallback used: {report.fallback_used}",
        f"stage checks: {report.checks}",
    ]
    lines += [f"  {s.name}: length {s.length}, snapshot {s.snapshot}" for s in report.stages]
    _emit(payload, args.format, lines)
    return OK if report.verified else FAILED


def cmd_verify(args) -> int:
    ring, a = _load(args)
    if args.word is None:
        raise UsageError("--word is required")
    word = parse_word(ring, args.word)
    try:
        product = evaluate_word(word, a)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    ok = product.is_identity()
    payload = {"ring": str(ring), "verified": ok, "length": len(word), "product": product.to_strings()}
    _emit(payload, args.format, [f"verified: {ok}", f"product: {product}"])
    return OK if ok else FAILED


def cmd_net(args) -> int:
    ring, a = _load(args)
    if not ring.is_division_ring:
        raise ParseError(f"net patterns need a division ring, got {ring}")
    if a.inverse() is None:
        raise NotInvertible("matrix not invertible")
    p = pattern_of(a)
    valid = validate_net(p)
    closed = inverse_closure_check(a, p)
    payload = {"ring": str(ring), "pattern": p.to_json(), "is_net": valid, "inverse_in_net": closed}
    lines = ["pattern:"] + ["  " + " ".join("*" if x else "0" for x in row) for row in p.allow]
    lines += [f"is net: {valid}", f"inverse in net: {closed}"]
    _emit(payload, args.format, lines)
    return OK


def cmd_oracle(args) -> int:
    if args.ring is None:
        raise UsageError("--ring is required")
    ring = parse_ring(args.ring)
    if not ring.is_finite:
        raise ParseError(f"oracle needs a finite ring, got {ring}")
    summary = exhaustive_check(ring, args.n, budget=args.budget)
    payload = {"ring": str(ring), "n": args.n, **summary.to_json()}
    lines = [f"{k}: {v}" for k, v in sorted(payload.items()) if k != "failures"]
    _emit(payload, args.format, lines)
    if summary.budget_hit:
        return OVER_BUDGET
    return OK if summary.passed == summary.checked else FAILED


def selftest(seed: int = 0) -> dict:
    """Quick invariant sweep: minor criterion, stage checks, oracle agreement."""
    results = {}
    for name, ring, n, samples, bound in [
        ("minor-scan/F5/3", PrimeField(5), 3, 100, 3),
        ("minor-scan/HQ/2", RationalQuaternions(), 2, 50, 2),
    ]:
        results[name] = minor_scan(ring, n, samples, seed, bound).passed
    rng = random.Random(seed)
    ok = True
    for ring, n, bound in [(Rationals(), 3, 3), (RationalQuaternions(), 2, 1), (IntegerMod(9), 2, 3)]:
        for _ in range(10):
            a = random_invertible(ring, n, rng, bound)
            report = witness(a)
            ok = ok and report.verified and evaluate_word(report.word, a).is_identity()
    results["stages/sampled"] = ok
    for ring in (PrimeField(2), PrimeField(3), IntegerMod(4)):
        s = exhaustive_check(ring, 2)
        results[f"oracle/{ring}/2"] = s.passed == s.checked and s.closure_groups == s.checked
    return results


def cmd_selftest(args) -> int:
    results = selftest(args.seed)
    passed = all(results.values())
    lines = [f"{'PASS' if v else 'FAIL'} {k}" for k, v in results.items()]
    _emit({"results": results, "passed": passed}, args.format, lines)
    return OK if passed else FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diagwitness", description="Identity witnesses in <a, D> over Artinian rings.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--seed", type=int, default=0)
    handlers = {
        "witness": cmd_witness,
        "verify": cmd_verify,
        "net": cmd_net,
        "oracle": cmd_oracle,
        "selftest": cmd_selftest,
    }
    for name, fn in handlers.items():
        p = sub.add_parser(name, parents=[common])
        p.set_defaults(func=fn)
        if name != "selftest":
            p.add_argument("--ring")
        if name in ("witness", "verify", "net"):
            p.add_argument("--matrix", help="inline matrix or a path to a file holding one")
        if name == "verify":
            p.add_argument("--word", help="word JSON, inline or a file path")
        if name == "oracle":
            p.add_argument("--n", type=int, default=2)
            p.add_argument("--budget", type=int, default=10**6)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError, NotInvertible) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return OVER_BUDGET
    except WitnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
