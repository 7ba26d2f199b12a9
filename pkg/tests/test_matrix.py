from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diagwitness.matrix import (
    Diag,
    Gen,
    Matrix,
    Word,
    element_order,
    evaluate_word,
    flatten,
    invert_matrix,
    left_null_space,
    minor,
    substitute_word,
    unflatten,
    unflatten_diag,
)
from diagwitness.rings import (
    IntegerMod,
    MatrixRing,
    PrimeField,
    Quaternion,
    RationalQuaternions,
    Rationals,
)
from strategies import ALL_RINGS, FINITE_RINGS, is_identity_rows, naive_mul, rand_invertible, rand_matrix, rings, seeds

dims = st.integers(min_value=1, max_value=4)
HQ = RationalQuaternions()


@given(rings, dims, seeds)
def test_matmul_matches_naive(R, n, seed):
    a, b = rand_matrix(R, n, seed), rand_matrix(R, n, seed + 1)
    assert [list(r) for r in (a @ b).rows] == naive_mul(a, b)


@given(rings, dims, seeds)
def test_inverse_two_sided(R, n, seed):
    a = rand_matrix(R, n, seed, bound=2)
    inv = invert_matrix(a)
    if inv is not None:
        assert is_identity_rows(R, naive_mul(a, inv))
        assert is_identity_rows(R, naive_mul(inv, a))


@pytest.mark.parametrize("R", FINITE_RINGS, ids=str)
def test_invertibility_matches_bijectivity(R):
    # over a finite ring, a is invertible iff v -> a v is a bijection of R^2
    import itertools
    import random

    elements = list(R.elements())
    vectors = list(itertools.product(elements, repeat=2))
    rng = random.Random(1)
    for _ in range(150):
        a = Matrix.of(R, [[rng.choice(elements) for _ in range(2)] for _ in range(2)])
        image = {tuple(R.sum(R.mul(a.rows[i][k], v[k]) for k in range(2)) for i in range(2)) for v in vectors}
        assert (invert_matrix(a) is not None) == (len(image) == len(vectors))


def test_inverse_examples():
    Z4 = IntegerMod(4)
    a = Matrix.parse(Z4, [[1, 2], [0, 1]])
    assert invert_matrix(a) == a
    assert invert_matrix(Matrix.parse(PrimeField(5), [[1, 1], [1, 1]])) is None
    i, j = HQ.parse("i"), HQ.parse("j")
    inv = invert_matrix(Matrix.diagonal(HQ, [i, j]))
    assert inv == Matrix.diagonal(HQ, [HQ.neg(i), HQ.neg(j)])
    for R in ALL_RINGS:
        assert invert_matrix(Matrix.identity(R, 3)).is_identity()


def test_newton_lift_over_deep_radical():
    R = IntegerMod(27)
    a = Matrix.parse(R, [[1, 3, 9], [3, 1, 0], [0, 9, 4]])
    inv = invert_matrix(a)
    assert (a @ inv).is_identity() and (inv @ a).is_identity()


def test_minor_examples():
    Q = Rationals()
    assert minor(Matrix.parse(Q, [[1, 2], [3, 4]]), 0, 1) == Matrix.parse(Q, [[3]])
    assert minor(Matrix.identity(Q, 3), 1, 1).is_identity()
    m = Matrix.parse(Q, [[0, 1, 2], [3, 4, 5], [6, 7, 8]])
    assert minor(m, 1, 0) == Matrix.parse(Q, [[1, 2], [7, 8]])
    with pytest.raises(IndexError):
        minor(m, 3, 0)


def test_word_examples():
    F3 = PrimeField(3)
    a = Matrix.parse(F3, [[0, 1], [1, 0]])
    assert evaluate_word(Word((Gen, Gen)), a).is_identity()
    Z4 = IntegerMod(4)
    b = Matrix.parse(Z4, [[1, 2], [0, 1]])
    assert evaluate_word(Word((Gen, Diag((1, 3)), Gen, Diag((1, 3)))), b).is_identity()
    d = (2, 1)
    assert evaluate_word(Word((Diag(d), Gen)), Matrix.identity(F3, 2)) == Matrix.diagonal(F3, d)
    with pytest.raises(ValueError):
        Word((Diag(d),))
    with pytest.raises(ValueError):
        evaluate_word(Word((Gen, Diag((1, 0)))), a)
    with pytest.raises(ValueError):
        evaluate_word(Word((Gen, Diag((1, 1, 1)))), a)


def test_substitute_examples():
    w = Word((Gen, Diag((1, 2)), Gen))
    assert substitute_word(Word((Gen,)), w) == w
    assert substitute_word(Word((Gen, Diag((2, 2)))), Word((Gen, Gen))) == Word((Gen, Gen, Diag((2, 2))))


words = st.lists(st.one_of(st.just(None), st.tuples(st.sampled_from([1, 2, 3, 4]), st.sampled_from([1, 2, 3, 4]))), min_size=0, max_size=5)


def _word(spec):
    factors = [Gen if f is None else Diag(f) for f in spec]
    return Word(tuple(factors) + (Gen,))


@given(words, words, seeds)
def test_substitution_and_concatenation_are_homomorphic(o, i, seed):
    R = PrimeField(5)
    a = rand_invertible(R, 2, seed)
    outer, inner = _word(o), _word(i)
    assert evaluate_word(substitute_word(outer, inner), a) == evaluate_word(outer, evaluate_word(inner, a))
    assert evaluate_word(outer + inner, a) == evaluate_word(outer, a) @ evaluate_word(inner, a)


@given(words, seeds)
def test_simplify_preserves_value(spec, seed):
    R = PrimeField(5)
    a = rand_invertible(R, 2, seed)
    w = _word(spec)
    s = w.simplify(R)
    assert evaluate_word(s, a) == evaluate_word(w, a)
    assert len(s) <= len(w)


@given(st.sampled_from(ALL_RINGS), seeds)
def test_word_json_roundtrip(R, seed):
    import random

    rng = random.Random(seed)
    units = [u for u in (R.random_element(rng, 3) for _ in range(40)) if R.is_unit(u)][:2]
    if len(units) < 2:
        return
    w = Word((Gen, Diag(tuple(units)), Gen))
    assert Word.from_json(w.to_json(R), R) == w


def test_flatten_examples():
    M = MatrixRing(PrimeField(3), 2)
    assert flatten(Matrix.identity(M, 2)).is_identity()
    d = (1, 2, 2, 1)
    blocks = unflatten_diag(d, M)
    assert blocks == (((1, 0), (0, 2)), ((2, 0), (0, 1)))
    assert flatten(Matrix.diagonal(M, blocks)) == Matrix.diagonal(PrimeField(3), d)


@given(seeds)
def test_flatten_is_multiplicative_and_invertible(seed):
    M = MatrixRing(PrimeField(2), 2)
    a, b = rand_matrix(M, 2, seed), rand_matrix(M, 2, seed + 7)
    assert flatten(a @ b) == flatten(a) @ flatten(b)
    assert unflatten(flatten(a), M) == a


@given(seeds)
def test_element_order_divides_flattened_order(seed):
    M = MatrixRing(PrimeField(2), 2)
    a = rand_invertible(M, 2, seed)
    k = element_order(a)
    assert a.power(k).is_identity()
    assert element_order(flatten(a)) % k == 0


def test_element_order_examples():
    assert element_order(Matrix.parse(PrimeField(3), [[0, 1], [1, 0]])) == 2
    assert element_order(Matrix.identity(PrimeField(2), 2)) == 1
    assert element_order(Matrix.parse(PrimeField(5), [[1, 1], [0, 1]])) == 5
    with pytest.raises(ValueError):
        element_order(Matrix.parse(PrimeField(5), [[1, 1], [1, 1]]))


@given(st.sampled_from([PrimeField(5), Rationals(), HQ]), st.integers(1, 4), st.integers(1, 4), seeds)
def test_left_null_space_solves(R, m, cols, seed):
    import random

    rng = random.Random(seed)
    rows = [[R.random_element(rng, 2) for _ in range(cols)] for _ in range(m)]
    basis = left_null_space(R, rows)
    for v in basis:
        assert len(v) == m
        for j in range(cols):
            assert R.is_zero(R.sum(R.mul(v[r], rows[r][j]) for r in range(m)))
    # rank-nullity: basis size is m minus the rank of the rows
    rank = m - len(basis)
    assert 0 <= rank <= min(m, cols)


def test_left_null_space_is_left_not_right():
    i, j = HQ.parse("i"), HQ.parse("j")
    rows = [[i], [j]]
    (v,) = left_null_space(HQ, rows)
    total = HQ.add(HQ.mul(v[0], i), HQ.mul(v[1], j))
    assert HQ.is_zero(total)
    assert v[0] == HQ.one
    assert v[1] == Quaternion(Fraction(0), Fraction(0), Fraction(0), Fraction(1))
