from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diagwitness.matrix import Diag, Gen, Matrix, Word, evaluate_word, invert_matrix
from diagwitness.nets import inverse_closure_check, pattern_of, validate_net
from diagwitness.rings import (
    IntegerMod,
    MatrixRing,
    PolyQuotient,
    PrimeField,
    RationalQuaternions,
    Rationals,
)
from diagwitness.witness import (
    NotInvertible,
    SearchConfig,
    Trace,
    all_rows_good,
    diagonal_candidates,
    diagonal_prefix,
    eliminate_row,
    ensure_nonzero_diagonal,
    field_witness,
    inverse_matches,
    is_biregular,
    make_biregular,
    make_rows_good,
    nonzero_diagonal,
    permutation_order,
    radical_reduce_row,
    row_is_good,
    semisimple_witness,
    support_permutation,
    witness,
)
from strategies import ALL_RINGS, rand_invertible, seeds

F3, F5, F7 = PrimeField(3), PrimeField(5), PrimeField(7)
Q, HQ = Rationals(), RationalQuaternions()


def M(ring, rows):
    return Matrix.parse(ring, rows)


def W(*factors):
    return Word(tuple(Gen if f is Gen else Diag(tuple(f)) for f in factors))


# worked examples from the construction contract

def test_field_witness_examples():
    assert field_witness(M(F7, [[1, 1], [0, 1]])).word == W(Gen, (1, 6), Gen, (1, 6))
    assert field_witness(M(Q, [[2, 0], [0, 3]])).word == W(Gen, (Fraction(1, 2), Fraction(1, 3)))
    assert field_witness(M(F3, [[0, 1], [1, 0]])).word == W(Gen, Gen)


def test_top_level_examples():
    assert witness(M(IntegerMod(4), [[1, 2], [0, 1]])).word == W(Gen, (1, 3), Gen, (1, 3))
    assert witness(M(IntegerMod(6), [[5, 3], [0, 5]])).word == W(Gen, Gen)
    for R in ALL_RINGS:
        assert witness(Matrix.identity(R, 2)).word == W(Gen)


def test_support_permutation_examples():
    assert support_permutation(M(F3, [[0, 1], [1, 0]])) == (1, 0)
    assert support_permutation(Matrix.identity(F3, 3)) == (0, 1, 2)
    assert support_permutation(M(F7, [[1, 1], [0, 1]])) == (0, 1)
    with pytest.raises(NotInvertible):
        support_permutation(M(F5, [[1, 1], [1, 1]]))


@given(st.sampled_from([F3, F7, Q, HQ]), st.integers(2, 4), seeds)
def test_support_permutation_hits_nonzero_entries(R, n, seed):
    a = rand_invertible(R, n, seed, bound=2)
    rho = support_permutation(a)
    assert sorted(rho) == list(range(n))
    assert all(not a.is_zero_at(i, rho[i]) for i in range(n))


def test_permutation_order():
    assert permutation_order((1, 2, 0, 4, 3)) == 6
    assert permutation_order((0, 1)) == 1


def test_ensure_nonzero_diagonal_examples():
    a = M(F5, [[1, 2], [3, 4]])
    assert ensure_nonzero_diagonal(a) == (W(Gen), a)
    for R in (F5, Q):
        w, b = ensure_nonzero_diagonal(M(R, [[0, 1], [1, 0]]))
        assert w == W(Gen, (1, 1), Gen) and b.is_identity()


def test_make_rows_good_examples():
    a = M(F5, [[1, 0, 1], [1, 1, 0], [0, 1, 1]])
    assert not row_is_good(a, 0)
    zeros_before = sum(a.is_zero_at(0, j) for j in range(3))
    w, b = make_rows_good(a)
    assert all_rows_good(b) and evaluate_word(w, a) == b
    assert sum(b.is_zero_at(0, j) for j in range(3)) < zeros_before
    u = M(F7, [[1, 3, 5], [0, 1, 2], [0, 0, 1]])
    assert make_rows_good(u) == (W(Gen), u)


def test_make_biregular_examples():
    a = M(F7, [[1, 1, 1], [0, 1, 1], [0, 0, 1]])
    assert not inverse_matches(a, invert_matrix(a))
    w, c = make_biregular(a)
    assert len(w) == 3 and w.gen_count == 2
    inv = invert_matrix(c)
    assert all(not c.is_zero_at(i, j) and not inv.is_zero_at(i, j) for i in range(3) for j in range(i, 3))
    assert all(c.is_zero_at(i, j) for i in range(3) for j in range(i))
    d = M(Q, [[2, 0], [0, 5]])
    assert make_biregular(d) == (W(Gen), d)
    full = M(Q, [[2, 1], [1, 1]])
    assert make_biregular(full) == (W(Gen), full)


def test_eliminate_row_examples():
    w, b = eliminate_row(M(F7, [[1, 1], [0, 1]]), 0)
    assert w == W(Gen, (1, 6), Gen)
    assert b == M(F7, [[1, 0], [0, 6]])
    a = M(Q, [[2, 0], [0, 3]])
    assert eliminate_row(a, 0) == (W(Gen), a)


def test_radical_reduce_row_examples():
    Z4 = IntegerMod(4)
    w, c = radical_reduce_row(M(Z4, [[1, 2], [0, 1]]), 0)
    assert w == W(Gen, (1, 3), Gen) and c == M(Z4, [[1, 0], [0, 3]])
    b = M(Z4, [[1, 0], [2, 3]])
    assert radical_reduce_row(b, 0) == (W(Gen), b)
    with pytest.raises(ValueError):
        radical_reduce_row(M(Z4, [[1, 1], [0, 1]]), 0)


def test_radical_reduce_row_deepens():
    R = IntegerMod(27)
    b = M(R, [[1, 3, 6], [3, 2, 9], [0, 3, 4]])
    trace = Trace()
    steps = 0
    while not all(b.is_zero_at(0, j) for j in (1, 2)):
        _, b = radical_reduce_row(b, 0, trace)
        steps += 1
    assert steps <= R.nilpotency_exponent() and diagonal_prefix(b, 1)


def test_semisimple_matrix_ring_witness():
    R = MatrixRing(F3, 2)
    a = Matrix.parse(R, [[[[1, 1], [0, 1]], [[0, 0], [1, 0]]], [[[0, 0], [0, 0]], [[1, 0], [0, 1]]]])
    report = semisimple_witness(a)
    assert evaluate_word(report.word, a).is_identity()
    for f in report.word.factors:
        if f is not Gen:
            for block in f.entries:
                assert all(block[r][c] == 0 for r in range(2) for c in range(2) if r != c)
                assert R.is_unit(block)
    with pytest.raises(ValueError):
        semisimple_witness(Matrix.identity(IntegerMod(4), 2))


def test_rejects_bad_input():
    with pytest.raises(NotInvertible, match="matrix not invertible"):
        witness(M(F5, [[1, 1], [1, 1]]))
    with pytest.raises(ValueError):
        witness(M(F5, [[2]]))
    with pytest.raises(TypeError):
        field_witness(Matrix.identity(IntegerMod(4), 2))


def test_diagonal_candidates_are_units_and_deterministic():
    cfg = SearchConfig()
    for R in (F5, Q, HQ, IntegerMod(9)):
        first = list(_take(diagonal_candidates(R, 3, 2, cfg), 30))
        assert first == list(_take(diagonal_candidates(R, 3, 2, cfg), 30))
        assert all(len(c) == 2 and all(R.is_unit(x) for d in c for x in d) for c in first)


def _take(it, k):
    for _, x in zip(range(k), it):
        yield x


# soundness and stage properties

SAMPLED = [F3, F5, F7, Q, HQ, IntegerMod(4), IntegerMod(9), IntegerMod(12), PolyQuotient(2, (0, 0, 0, 1)),
           MatrixRing(PrimeField(2), 2)]


@given(st.sampled_from(SAMPLED), st.integers(2, 3), seeds)
def test_witness_soundness(R, n, seed):
    a = rand_invertible(R, n, seed, bound=2 if R is HQ else 3)
    report = witness(a)
    assert report.verified
    assert report.word.gen_count >= 1
    assert all(all(R.is_unit(x) for x in f.entries) for f in report.word.factors if f is not Gen)
    assert evaluate_word(report.word, a).is_identity()
    if R.is_division_ring and not R.is_finite:
        assert not report.fallback_used
    assert report.radical_iterations <= R.nilpotency_exponent()


@given(st.sampled_from([F5, F7, Q, HQ]), st.integers(2, 4), seeds)
def test_division_stages_postconditions(R, n, seed):
    a = rand_invertible(R, n, seed, bound=2)
    try:
        w1, b = ensure_nonzero_diagonal(a)
        assert nonzero_diagonal(b) and evaluate_word(w1, a) == b
        w2, c = make_rows_good(b)
        assert all_rows_good(c) and evaluate_word(w2, b) == c
        w3, d = make_biregular(c)
    except Exception as exc:  # only the finite fields may run out of candidates
        assert R.is_finite, exc
        return
    assert is_biregular(d) and evaluate_word(w3, c) == d
    p = pattern_of(d)
    assert validate_net(p) and inverse_closure_check(d, p)


@given(st.sampled_from([Q, HQ]), st.integers(2, 4), seeds)
def test_first_elimination_clears_row(R, n, seed):
    a = rand_invertible(R, n, seed, bound=2)
    _, b = ensure_nonzero_diagonal(a)
    _, c = make_rows_good(b)
    _, d = make_biregular(c)
    w, e = eliminate_row(d, 0)
    assert diagonal_prefix(e, 1) and invert_matrix(e) is not None
    assert evaluate_word(w, d) == e


@given(st.sampled_from(SAMPLED), seeds)
def test_witness_is_deterministic(R, seed):
    a = rand_invertible(R, 2, seed, bound=2)
    assert witness(a).to_json(R) == witness(a).to_json(R)


@given(st.sampled_from([Q, F7, IntegerMod(8)]), seeds)
def test_stage_log_is_consistent(R, seed):
    a = rand_invertible(R, 3, seed)
    report = witness(a)
    assert report.checks > 0
    assert all(s.length >= 1 and len(s.snapshot) == 16 for s in report.stages)
