"""Explicit words in <a, D> that evaluate to the identity matrix.

The construction runs in three layers:

* over a division ring, the support of `a` is massaged by products `a d a`
  with generic diagonals `d` until every row can be cleared by a single
  solved diagonal (the left null space of a small linear system);
* over a semisimple ring, the division-ring construction runs in each simple
  component in turn, with diagonals that are 1 in every other component;
* over a general Artinian ring, the semisimple word lands in the principal
  congruence subgroup mod J, and each row is then pushed one radical power
  deeper per step until it vanishes.

Every "choose a generic d" step is a deterministic verify-and-retry search
over unit tuples. On finite rings an exhausted search falls back to a^ord.
"""
from __future__ import annotations

import hashlib
import itertools
import logging
from dataclasses import dataclass, field
from math import lcm
from typing import Iterator

from .matrix import (
    Diag,
    Gen,
    InternalError,
    Matrix,
    Word,
    element_order,
    evaluate_word,
    flatten,
    invert_matrix,
    left_null_space,
    minor,
    project_matrix,
    substitute_word,
    unflatten_diag,
)
from .nets import inverse_closure_check, pattern_of, validate_net
from .rings import MatrixRing, Ring

log = logging.getLogger(__name__)


class WitnessError(RuntimeError):
    pass


class SearchExhausted(WitnessError):
    """No acceptable diagonal was found; finite rings fall back to a^ord."""


class StageViolation(InternalError):
    pass


class NotInvertible(ValueError):
    pass


@dataclass
class SearchConfig:
    # 0 means derive the cap from n (enough scalars to dodge every root).
    scalar_cap: int = 0
    finite_budget: int = 4096
    null_space_factor: int = 2


@dataclass(frozen=True)
class StageRecord:
    name: str
    length: int
    snapshot: str


@dataclass
class WitnessReport:
    word: Word
    verified: bool
    stages: list
    fallback_used: bool
    checks: int = 0
    radical_iterations: int = 0

    def to_json(self, ring: Ring) -> dict:
        return {
            "word": self.word.to_json(ring),
            "verified": self.verified,
            "fallback_used": self.fallback_used,
            "length": len(self.word),
            "stages": [{"name": s.name, "length": s.length, "snapshot": s.snapshot} for s in self.stages],
            "checks": self.checks,
            "max_radical_iterations": self.radical_iterations,
        }


@dataclass
class Trace:
    """Stage log and postcondition counter shared across one witness run."""

    stages: list = field(default_factory=list)
    checks: int = 0
    radical_iterations: int = 0
    fallback: bool = False
    prefix: str = ""

    def check(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok:
            raise StageViolation(message)

    def record(self, name: str, word: Word, matrix: Matrix) -> None:
        digest = hashlib.sha256(matrix.key().encode()).hexdigest()[:16]
        self.stages.append(StageRecord(self.prefix + name, len(word), digest))


def _zero(a: Matrix, i: int, j: int) -> bool:
    return a.ring.is_zero(a.rows[i][j])


def nonzero_diagonal(a: Matrix) -> bool:
    return not any(_zero(a, i, i) for i in range(a.n))


def row_is_good(a: Matrix, i: int) -> bool:
    """a_ii != 0 and a_ij = 0 forces a_ir a_rj = 0 for every r."""
    if _zero(a, i, i):
        return False
    n = a.n
    for j in range(n):
        if _zero(a, i, j) and any(not _zero(a, i, r) and not _zero(a, r, j) for r in range(n)):
            return False
    return True


def all_rows_good(a: Matrix) -> bool:
    return all(row_is_good(a, i) for i in range(a.n))


def inverse_matches(a: Matrix, inv: Matrix, rows=None) -> bool:
    """a_ij != 0 implies inv_ij != 0 on the given rows."""
    rows = range(a.n) if rows is None else rows
    return all(_zero(a, i, j) or not _zero(inv, i, j) for i in rows for j in range(a.n))


def is_biregular(a: Matrix, inv: Matrix | None = None) -> bool:
    inv = invert_matrix(a) if inv is None else inv
    return all_rows_good(a) and inverse_matches(a, inv)


def diagonal_prefix(a: Matrix, l: int) -> bool:
    """Rows 0..l-1 have no off-diagonal entries."""
    return all(_zero(a, i, j) for i in range(l) for j in range(a.n) if j != i)


def _require_division_ring(a: Matrix) -> None:
    if not a.ring.is_division_ring:
        raise TypeError(f"{a.ring} is not a division ring")


def _scalars(ring: Ring, n: int, config: SearchConfig) -> list:
    if ring.is_finite:
        return list(ring.units())
    cap = config.scalar_cap or 2 * (n**3 + n) + 2
    return list(itertools.islice(ring.scalars(), cap))


def diagonal_candidates(ring: Ring, n: int, count: int, config: SearchConfig) -> Iterator[tuple]:
    """Deterministic stream of `count` diagonals (each an n-tuple of units).

    First d = (t, t^2, ..., t^n) for successive scalars t. Then, on finite
    rings, independent unit tuples up to a budget; on infinite rings with
    several diagonals, Kronecker-spread powers t^(r (n+1)^s), which separate
    every monomial of a multilinear condition.
    """
    seen = set()
    scalars = _scalars(ring, n, config)
    for t in scalars:
        cand = (tuple(ring.power(t, r) for r in range(1, n + 1)),) * count
        if cand not in seen:
            seen.add(cand)
            yield cand
    if ring.is_finite:
        units = list(ring.units())
        for flat in itertools.islice(itertools.product(units, repeat=n * count), config.finite_budget):
            cand = tuple(tuple(flat[s * n : (s + 1) * n]) for s in range(count))
            if cand not in seen:
                yield cand
    elif count > 1:
        for t in scalars[1:]:
            yield tuple(tuple(ring.power(t, r * (n + 1) ** s) for r in range(1, n + 1)) for s in range(count))


def _alternating(diagonals) -> Word:
    factors = [Gen]
    for d in diagonals:
        factors += [Diag(d), Gen]
    return Word(tuple(factors))


def _ada(a: Matrix, d) -> Matrix:
    return a.scale_columns(d) @ a


def support_permutation(a: Matrix) -> tuple:
    """rho with a[i, rho[i]] != 0 for every i, built by expanding along row 0."""
    _require_division_ring(a)
    R = a.ring
    rows, cols = list(range(a.n)), list(range(a.n))
    rho = [0] * a.n
    sub = a
    while rows:
        inv = invert_matrix(sub)
        if inv is None:
            raise NotInvertible("matrix not invertible")
        j = next(c for c in range(sub.n) if not R.is_zero(R.mul(sub.rows[0][c], inv.rows[c][0])))
        rho[rows.pop(0)] = cols.pop(j)
        if rows:
            sub = minor(sub, 0, j)
    return tuple(rho)


def permutation_order(rho) -> int:
    seen, order = set(), 1
    for start in range(len(rho)):
        if start in seen:
            continue
        length, i = 0, start
        while i not in seen:
            seen.add(i)
            i = rho[i]
            length += 1
        order = lcm(order, length)
    return order


def ensure_nonzero_diagonal(a: Matrix, config: SearchConfig | None = None, trace: Trace | None = None):
    _require_division_ring(a)
    config = config or SearchConfig()
    trace = trace or Trace()
    if nonzero_diagonal(a):
        trace.check(nonzero_diagonal(evaluate_word(Word.gen(), a)), "nonzero diagonal lost")
        return Word.gen(), a
    m = permutation_order(support_permutation(a))
    for diagonals in diagonal_candidates(a.ring, a.n, m - 1, config):
        w = _alternating(diagonals)
        b = evaluate_word(w, a)
        if nonzero_diagonal(b):
            trace.check(nonzero_diagonal(b), "nonzero diagonal lost")
            return w, b
    raise SearchExhausted("no diagonals give a nonzero diagonal")


def _first_bad_row(a: Matrix):
    return next((i for i in range(a.n) if not row_is_good(a, i)), None)


def _reachable_zeros(a: Matrix, i: int) -> list:
    n = a.n
    return [
        j
        for j in range(n)
        if _zero(a, i, j) and any(not _zero(a, i, r) and not _zero(a, r, j) for r in range(n))
    ]


def make_rows_good(a: Matrix, config: SearchConfig | None = None, trace: Trace | None = None):
    """Grow the support with products a d a until every row is good.

    Accepted diagonals keep every nonzero entry nonzero and fill at least one
    zero of the worked row that a two-step path reaches, so the support
    strictly grows and the loop ends after at most n^2 steps.
    """
    _require_division_ring(a)
    if not nonzero_diagonal(a):
        raise ValueError("make_rows_good needs a nonzero diagonal")
    config = config or SearchConfig()
    trace = trace or Trace()
    word, cur = Word.gen(), a
    for _ in range(a.n * a.n + 1):
        i = _first_bad_row(cur)
        if i is None:
            trace.check(all_rows_good(cur), "a row is still bad")
            return word, cur
        targets = _reachable_zeros(cur, i)
        supp = cur.support()
        for (d,) in diagonal_candidates(a.ring, a.n, 1, config):
            b = _ada(cur, d)
            if supp <= b.support() and any(not _zero(b, i, j) for j in targets):
                break
        else:
            raise SearchExhausted(f"no diagonal repairs row {i}")
        word = substitute_word(Word((Gen, Diag(d), Gen)), word)
        cur = b
    raise StageViolation("row repair did not terminate")


def make_biregular(a: Matrix, config: SearchConfig | None = None, trace: Trace | None = None):
    """Reach c with good rows whose nonzero entries are matched in c^-1.

    First both c and c^-1 get nonzero diagonals (a product of ord(rho')
    copies, rho' a support permutation of the inverse). Then the row repair
    runs on c and on c^-1 together, accepting only diagonals that keep both
    supports. Once the rows of c and of c^-1 are all good, both supports are
    nets containing each other, so they coincide.
    """
    _require_division_ring(a)
    if not nonzero_diagonal(a):
        raise ValueError("make_biregular needs a nonzero diagonal")
    config = config or SearchConfig()
    trace = trace or Trace()
    R, n = a.ring, a.n
    word, cur = Word.gen(), a
    inv = invert_matrix(cur)
    if not is_biregular(cur, inv):
        if not nonzero_diagonal(inv):
            m = permutation_order(support_permutation(inv))
            for diagonals in diagonal_candidates(R, n, m - 1, config):
                w = _alternating(diagonals)
                b = evaluate_word(w, cur)
                b_inv = invert_matrix(b)
                if nonzero_diagonal(b) and nonzero_diagonal(b_inv):
                    break
            else:
                raise SearchExhausted("no diagonals give c and c^-1 nonzero diagonals")
            word, cur, inv = substitute_word(w, word), b, b_inv
        for _ in range(2 * n * n + 1):
            i = _first_bad_row(cur)
            on_inverse = i is None
            if on_inverse:
                i = _first_bad_row(inv)
                if i is None:
                    break
            targets = _reachable_zeros(inv if on_inverse else cur, i)
            supp, supp_inv = cur.support(), inv.support()
            for (d,) in diagonal_candidates(R, n, 1, config):
                b = _ada(cur, d)
                b_inv = _ada(inv, tuple(R.inverse(x) for x in d))
                gained = b_inv if on_inverse else b
                if supp <= b.support() and supp_inv <= b_inv.support() and any(
                    not _zero(gained, i, j) for j in targets
                ):
                    break
            else:
                raise SearchExhausted(f"no diagonal repairs row {i} of {'c^-1' if on_inverse else 'c'}")
            word = substitute_word(Word((Gen, Diag(d), Gen)), word)
            cur, inv = b, b_inv
        else:
            raise StageViolation("joint row repair did not terminate")
    trace.check(all_rows_good(cur), "condition (i) fails after make_biregular")
    trace.check(inverse_matches(cur, inv), "condition (ii) fails after make_biregular")
    p = pattern_of(cur)
    trace.check(validate_net(p), "support of c is not a net")
    trace.check(inverse_closure_check(cur, p), "inverse left the net subgroup")
    return word, cur


def _spiral(k: int) -> Iterator[tuple]:
    for level in itertools.count(1):
        cands = [c for c in itertools.product(range(-level, level + 1), repeat=k) if max(map(abs, c)) == level]
        cands.sort(key=lambda c: (sum(1 for x in c if x), [x == 0 for x in c], [abs(x) for x in c], [x < 0 for x in c]))
        yield from cands


def row_ready(a: Matrix, l: int, inv: Matrix | None = None) -> bool:
    inv = invert_matrix(a) if inv is None else inv
    return row_is_good(a, l) and inverse_matches(a, inv, rows=[l])


def eliminate_row(a: Matrix, l: int, config: SearchConfig | None = None, trace: Trace | None = None):
    """Clear the off-diagonal part of row l with one product a d a.

    Writing x_r = a_lr d_r for the nonzero positions r of row l, the
    conditions (ada)_lj = 0 (j != l) form a homogeneous left-linear system
    with one more unknown than equations; an all-nonzero solution x gives
    d_r = a_lr^-1 x_r.
    """
    _require_division_ring(a)
    config = config or SearchConfig()
    trace = trace or Trace()
    R, n = a.ring, a.n
    if all(_zero(a, l, j) for j in range(n) if j != l):
        return Word.gen(), a
    if _zero(a, l, l) or not diagonal_prefix(a, l):
        raise ValueError("eliminate_row needs a nonzero pivot and diagonal-only earlier rows")
    if not row_ready(a, l):
        raise ValueError(f"row {l} is not biregular")
    support = [r for r in range(n) if not _zero(a, l, r)]
    columns = [j for j in support if j != l]
    basis = left_null_space(R, [[a.rows[r][j] for j in columns] for r in support])
    budget = config.null_space_factor * n * len(basis)
    for coeffs in itertools.islice(_spiral(len(basis)), budget):
        scalars = [R.from_int(c) for c in coeffs]
        x = [R.sum(R.mul(c, v[k]) for c, v in zip(scalars, basis)) for k in range(len(support))]
        if any(R.is_zero(v) for v in x):
            continue
        c = R.content(x)
        x = [R.mul(c, v) for v in x]
        d = [R.one] * n
        for k, r in enumerate(support):
            d[r] = R.mul(R.inverse(a.rows[l][r]), x[k])
        b = _ada(a, d)
        trace.check(diagonal_prefix(b, l + 1), f"row {l} not cleared")
        trace.check(invert_matrix(b) is not None, "elimination produced a singular matrix")
        return Word((Gen, Diag(tuple(d)), Gen)), b
    raise SearchExhausted(f"no all-nonzero solution for row {l}")


def _normalize_diagonal(word: Word, b: Matrix, trace: Trace) -> Word:
    trace.check(b.is_diagonal(), "residual matrix is not diagonal")
    R = b.ring
    d = tuple(R.inverse(x) for x in b.diagonal_entries())
    trace.check(all(x is not None for x in d), "residual diagonal is not a unit")
    if any(x != R.one for x in d):
        word = word.append(Diag(d))
    return word


def _division_ring_word(a: Matrix, config: SearchConfig, trace: Trace) -> Word:
    word, b = Word.gen(), a
    trace.record("input", word, b)
    stages = (
        ("ensure_nonzero_diagonal", ensure_nonzero_diagonal),
        ("make_rows_good", make_rows_good),
        ("make_biregular", make_biregular),
    )
    for l in range(a.n):
        if l == 0 or not row_ready(b, l):
            for name, stage in stages:
                w, b = stage(b, config, trace)
                word = substitute_word(w, word)
                trace.record(name, word, b)
            trace.check(diagonal_prefix(b, l), "cleared rows were disturbed")
        w, b = eliminate_row(b, l, config, trace)
        word = substitute_word(w, word)
        trace.record(f"eliminate_row[{l}]", word, b)
    word = _normalize_diagonal(word, b, trace)
    trace.record("normalize", word, Matrix.identity(a.ring, a.n))
    return word


def _field_word(a: Matrix, config: SearchConfig, trace: Trace) -> Word:
    try:
        return _division_ring_word(a, config, trace)
    except SearchExhausted as exc:
        if not a.ring.is_finite:
            raise WitnessError(f"generic search failed over {a.ring}: {exc}") from exc
        log.debug("falling back to a^ord over %s: %s", a.ring, exc)
        trace.fallback = True
        word = Word.gen(element_order(a))
        trace.record("finite-fallback", word, Matrix.identity(a.ring, a.n))
        return word


def _finish(a: Matrix, word: Word, trace: Trace) -> WitnessReport:
    word = word.simplify(a.ring)
    if not evaluate_word(word, a).is_identity():
        raise WitnessError("witness word does not evaluate to the identity")
    return WitnessReport(word, True, list(trace.stages), trace.fallback, trace.checks, trace.radical_iterations)


def _check_input(a: Matrix) -> None:
    if a.n < 1:
        raise ValueError("empty matrix")
    if invert_matrix(a) is None:
        raise NotInvertible("matrix not invertible")


def field_witness(a: Matrix, config: SearchConfig | None = None) -> WitnessReport:
    _require_division_ring(a)
    _check_input(a)
    trace = Trace()
    return _finish(a, _field_word(a, config or SearchConfig(), trace), trace)


def _quotient_word(a: Matrix, config: SearchConfig, trace: Trace) -> Word:
    """Word whose evaluation is e in every simple component of R/J."""
    R = a.ring
    dec = R.decompose()
    ones = [c.one for c in dec.components]
    word = Word.gen()
    for t, comp in enumerate(dec.components):
        b = project_matrix(evaluate_word(word, a), dec, t)
        if b.is_identity():
            continue

        def lift(x, t=t):
            parts = list(ones)
            parts[t] = x
            return dec.lift(tuple(parts))

        trace.prefix = f"component[{t}]:"
        if isinstance(comp, MatrixRing):
            local = _field_word(flatten(b), config, trace)
            factors = [f if f is Gen else Diag(unflatten_diag(f.entries, comp)) for f in local.factors]
        else:
            local = _field_word(b, config, trace)
            factors = list(local.factors)
        trace.prefix = ""
        lifted = Word(tuple(f if f is Gen else Diag(tuple(lift(x) for x in f.entries)) for f in factors))
        word = substitute_word(lifted, word)
        current = evaluate_word(word, a)
        trace.check(project_matrix(current, dec, t).is_identity(), f"component {t} not reduced to e")
        trace.record(f"component[{t}]", word, current)
    return word


def semisimple_witness(a: Matrix, config: SearchConfig | None = None) -> WitnessReport:
    if a.ring.nilpotency_exponent() != 1:
        raise ValueError(f"{a.ring} is not semisimple")
    _check_input(a)
    trace = Trace()
    word = _quotient_word(a, config or SearchConfig(), trace)
    word = _normalize_diagonal(word, evaluate_word(word, a), trace)
    return _finish(a, word, trace)


def _in_radical(R: Ring, x) -> bool:
    return R.is_zero(x) or R.radical_degree(x) >= 1


def radical_reduce_row(b: Matrix, l: int, trace: Trace | None = None):
    """One step b -> b d b with d_l = b_ll^-1 and d_j = -b_jj^-1 (j != l).

    The two terms of (bdb)_lj through r = l and r = j cancel, leaving a sum
    of products of two radical entries.
    """
    trace = trace or Trace()
    R, n = b.ring, b.n
    off = [j for j in range(n) if j != l]
    if not all(R.is_unit(b.rows[i][i]) for i in range(n)):
        raise ValueError("diagonal entries must be units")
    if not all(_in_radical(R, b.rows[i][j]) for i in range(n) for j in range(n) if i != j):
        raise ValueError("off-diagonal entries must lie in the radical")
    if not diagonal_prefix(b, l):
        raise ValueError("earlier rows must be diagonal-only")
    if all(_zero(b, l, j) for j in off):
        return Word.gen(), b
    before = min(R.radical_degree(b.rows[l][j]) for j in off if not _zero(b, l, j))
    d = [R.neg(R.inverse(b.rows[j][j])) for j in range(n)]
    d[l] = R.inverse(b.rows[l][l])
    c = _ada(b, d)
    remaining = [R.radical_degree(c.rows[l][j]) for j in off if not _zero(c, l, j)]
    trace.check(not remaining or min(remaining) > before, f"row {l} did not sink deeper into the radical")
    trace.check(diagonal_prefix(c, l), "earlier rows were disturbed")
    trace.check(all(R.is_unit(c.rows[i][i]) for i in range(n)), "diagonal lost a unit")
    return Word((Gen, Diag(tuple(d)), Gen)), c


def witness(a: Matrix, spec: Ring | None = None, config: SearchConfig | None = None) -> WitnessReport:
    """Top-level dispatch on the ring: division, semisimple, or general Artinian."""
    if spec is not None and spec != a.ring:
        raise ValueError("matrix is not over the given ring")
    if a.n < 2:
        raise ValueError("witnesses need n >= 2")
    _check_input(a)
    config = config or SearchConfig()
    R = a.ring
    if R.is_division_ring:
        return field_witness(a, config)
    s = R.nilpotency_exponent()
    if s == 1:
        return semisimple_witness(a, config)
    trace = Trace()
    word = _quotient_word(a, config, trace)
    b = evaluate_word(word, a)
    trace.check(
        all(_in_radical(R, R.sub(b.rows[i][j], R.one if i == j else R.zero)) for i in range(a.n) for j in range(a.n)),
        "quotient word did not land in the congruence subgroup",
    )
    for l in range(a.n):
        steps = 0
        while not all(_zero(b, l, j) for j in range(a.n) if j != l):
            steps += 1
            if steps > s:
                raise StageViolation(f"row {l} needed more than {s} radical steps")
            w, b = radical_reduce_row(b, l, trace)
            word = substitute_word(w, word)
        trace.radical_iterations = max(trace.radical_iterations, steps)
        trace.record(f"radical_row[{l}]", word, b)
    word = _normalize_diagonal(word, b, trace)
    return _finish(a, word, trace)
