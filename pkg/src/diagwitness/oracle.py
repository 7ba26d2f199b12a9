"""Brute-force ground truth, independent of the witness construction.

Closure is computed by plain breadth-first right multiplication, so the only
code it shares with the witness pipeline is matrix arithmetic.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field

from .matrix import Matrix, evaluate_word, invert_matrix, minor
from .rings import Ring
from .witness import SearchConfig, witness


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class ClosureResult:
    elements: set
    contains_identity: bool
    is_group: bool
    generator_count: int


def all_diagonals(ring: Ring, n: int) -> list:
    if not ring.is_finite:
        raise TypeError(f"cannot enumerate the diagonal group over {ring}")
    units = list(ring.units())
    return [tuple(d) for d in itertools.product(units, repeat=n)]


def closure_bfs(gens: list, budget: int = 10**6) -> ClosureResult:
    """Every product of generators and invertible diagonals using at least one generator.

    The diagonal group is a group, so a leading run of diagonals collapses to
    one diagonal: seed with d*g and close under right multiplication.
    """
    if not gens:
        raise ValueError("closure needs at least one generator")
    ring, n = gens[0].ring, gens[0].n
    if any(g.ring != ring or g.n != n for g in gens):
        raise ValueError("generators must share ring and dimension")
    if not ring.is_finite:
        raise TypeError("closure_bfs only runs over finite rings")
    diags = all_diagonals(ring, n)
    seen: set = set()
    queue: deque = deque()

    def push(x: Matrix) -> None:
        if x not in seen:
            if len(seen) >= budget:
                raise BudgetExceeded(f"closure exceeded {budget} elements")
            seen.add(x)
            queue.append(x)

    for g in gens:
        for d in diags:
            push(Matrix.diagonal(ring, d) @ g)
    while queue:
        x = queue.popleft()
        for g in gens:
            push(x @ g)
        for d in diags:
            push(x.scale_columns(d))
    e = Matrix.identity(ring, n)
    has_e = e in seen
    group = has_e and all((inv := invert_matrix(x)) is not None and inv in seen for x in seen)
    return ClosureResult(seen, has_e, group, len(gens))


def random_invertible(ring: Ring, n: int, rng: random.Random, bound: int = 3) -> Matrix:
    """Rejection sampling; only reproducibility matters, not uniformity."""
    while True:
        a = Matrix.of(ring, [[ring.random_element(rng, bound) for _ in range(n)] for _ in range(n)])
        if invert_matrix(a) is not None:
            return a


def enumerate_gl(ring: Ring, n: int, budget: int = 10**6):
    if not ring.is_finite:
        raise TypeError(f"{ring} is infinite")
    total = ring.size ** (n * n)
    if total > budget:
        raise BudgetExceeded(f"{total} candidate matrices exceed budget {budget}")
    elements = list(ring.elements())
    for flat in itertools.product(elements, repeat=n * n):
        a = Matrix.of(ring, [flat[i * n : (i + 1) * n] for i in range(n)])
        if invert_matrix(a) is not None:
            yield a


@dataclass
class CheckSummary:
    checked: int = 0
    passed: int = 0
    max_word_length: int = 0
    budget_hit: bool = False
    closure_groups: int = 0
    fallbacks: int = 0
    stage_checks: int = 0
    max_radical_iterations: int = 0
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "checked": self.checked,
            "passed": self.passed,
            "max_word_length": self.max_word_length,
            "budget_hit": self.budget_hit,
            "closure_groups": self.closure_groups,
            "fallbacks": self.fallbacks,
            "stage_checks": self.stage_checks,
            "max_radical_iterations": self.max_radical_iterations,
            "failures": self.failures,
        }


def check_matrix(a: Matrix, summary: CheckSummary, budget: int, with_closure: bool, config=None) -> None:
    summary.checked += 1
    report = witness(a, config=config)
    ok = report.verified and evaluate_word(report.word, a).is_identity()
    summary.max_word_length = max(summary.max_word_length, len(report.word))
    summary.fallbacks += report.fallback_used
    summary.stage_checks += report.checks
    summary.max_radical_iterations = max(summary.max_radical_iterations, report.radical_iterations)
    if with_closure:
        try:
            closure = closure_bfs([a], budget)
        except BudgetExceeded:
            summary.budget_hit = True
            ok = False
        else:
            ok = ok and closure.contains_identity
            summary.closure_groups += closure.is_group
    if ok:
        summary.passed += 1
    elif len(summary.failures) < 10:
        summary.failures.append(a.to_strings())


def exhaustive_check(
    ring: Ring, n: int, budget: int = 10**6, with_closure: bool = True, config: SearchConfig | None = None
) -> CheckSummary:
    summary = CheckSummary()
    try:
        for a in enumerate_gl(ring, n, budget):
            check_matrix(a, summary, budget, with_closure, config)
    except BudgetExceeded:
        summary.budget_hit = True
    return summary


def sampled_check(
    ring: Ring, n: int, samples: int, seed: int = 0, bound: int = 3, config: SearchConfig | None = None
) -> CheckSummary:
    rng = random.Random(seed)
    summary = CheckSummary()
    for _ in range(samples):
        check_matrix(random_invertible(ring, n, rng, bound), summary, 0, False, config)
    return summary


@dataclass
class MinorScanResult:
    passed: bool
    checked: int
    counterexample: dict | None = None


def minor_scan(ring: Ring, n: int, samples: int, seed: int = 0, bound: int = 3) -> MinorScanResult:
    """Entry (j, i) of a^-1 is nonzero exactly when a minus row i and column j is invertible."""
    if not ring.is_division_ring:
        raise TypeError("the minor criterion is stated over division rings")
    if n < 2:
        raise ValueError("need n >= 2")
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        a = random_invertible(ring, n, rng, bound)
        inv = invert_matrix(a)
        for i in range(n):
            for j in range(n):
                checked += 1
                lhs = not inv.is_zero_at(j, i)
                rhs = invert_matrix(minor(a, i, j)) is not None
                if lhs != rhs:
                    cx = {"matrix": a.to_strings(), "i": i, "j": j, "inverse_nonzero": lhs, "minor_invertible": rhs}
                    return MinorScanResult(False, checked, cx)
    return MinorScanResult(True, checked)
