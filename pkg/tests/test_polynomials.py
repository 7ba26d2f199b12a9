from hypothesis import given
from hypothesis import strategies as st

from diagwitness import polynomials as P

primes = st.sampled_from([2, 3, 5, 7])


def polys(p, max_len=6):
    return st.lists(st.integers(0, p - 1), max_size=max_len).map(lambda c: P.trim(c, p))


@st.composite
def poly_pair(draw):
    p = draw(primes)
    return p, draw(polys(p)), draw(polys(p))


@given(poly_pair())
def test_divmod_reconstructs(data):
    p, f, g = data
    if not g:
        return
    q, r = P.divmod_poly(f, g, p)
    assert P.add(P.mul(q, g, p), r, p) == f
    assert len(r) < len(g)


@given(poly_pair())
def test_ext_gcd_bezout(data):
    p, f, g = data
    h, s, t = P.ext_gcd(f, g, p)
    assert P.add(P.mul(s, f, p), P.mul(t, g, p), p) == h
    if h:
        assert not P.mod(f, h, p) and not P.mod(g, h, p)


@given(st.sampled_from([2, 3, 5]), st.data())
def test_factor_multiplies_back(p, data):
    f = data.draw(polys(p, 6))
    if P.degree(f) < 1:
        return
    prod = (1,)
    for g, e in P.factor(f, p):
        assert P.is_irreducible(g, p)
        for _ in range(e):
            prod = P.mul(prod, g, p)
    assert prod == P.monic(f, p)


def test_irreducible_counts():
    # number of monic irreducibles of degree 2 over F_q is (q^2 - q) / 2
    for q in (2, 3, 5):
        count = sum(P.is_irreducible(g, q) for g in P.monic_polys(2, q))
        assert count == (q * q - q) // 2


def test_inverse_mod():
    m = (1, 1, 1)  # x^2 + x + 1 over F2
    for f in [(1,), (0, 1), (1, 1)]:
        inv = P.inverse_mod(f, m, 2)
        assert P.mod(P.mul(f, inv, 2), m, 2) == (1,)
    assert P.inverse_mod((0, 1), (0, 0, 1), 2) is None


def test_valuation_and_crt():
    assert P.valuation((0, 0, 1), (0, 1), 3) == 2
    assert P.valuation((), (0, 1), 3) is None
    moduli = [(0, 1), (1, 1)]
    x = P.crt([(1,), (0,)], moduli, 2)
    assert P.mod(x, moduli[0], 2) == (1,) and P.mod(x, moduli[1], 2) == ()
