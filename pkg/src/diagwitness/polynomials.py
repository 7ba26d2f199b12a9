"""Dense univariate polynomials over F_p.

A polynomial is a tuple of coefficients, lowest degree first, with no
trailing zeros. The zero polynomial is the empty tuple.
"""
from __future__ import annotations

import itertools
from typing import Iterator

Poly = tuple[int, ...]


def trim(coeffs, p: int) -> Poly:
    out = [c % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(f: Poly) -> int:
    return len(f) - 1


def add(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return trim(
        [(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], p
    )


def neg(f: Poly, p: int) -> Poly:
    return trim([-c for c in f], p)


def sub(f: Poly, g: Poly, p: int) -> Poly:
    return add(f, neg(g, p), p)


def mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out, p)


def scale(f: Poly, c: int, p: int) -> Poly:
    return trim([c * a for a in f], p)


def monic(f: Poly, p: int) -> Poly:
    if not f:
        raise ZeroDivisionError("zero polynomial has no leading coefficient")
    return scale(f, pow(f[-1], -1, p), p)


def divmod_poly(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    q = [0] * max(len(f) - len(g) + 1, 0)
    lead_inv = pow(g[-1], -1, p)
    for k in range(len(f) - len(g), -1, -1):
        c = r[k + len(g) - 1] * lead_inv % p
        q[k] = c
        if c:
            for i, b in enumerate(g):
                r[k + i] = (r[k + i] - c * b) % p
    return trim(q, p), trim(r[: len(g) - 1], p)


def mod(f: Poly, g: Poly, p: int) -> Poly:
    return divmod_poly(f, g, p)[1]


def gcd(f: Poly, g: Poly, p: int) -> Poly:
    while g:
        f, g = g, mod(f, g, p)
    return monic(f, p) if f else ()


def ext_gcd(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly, Poly]:
    """Return (h, s, t) with s*f + t*g = h = gcd(f, g), h monic."""
    r0, r1 = f, g
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = divmod_poly(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return (), s0, t0
    c = pow(r0[-1], -1, p)
    return scale(r0, c, p), scale(s0, c, p), scale(t0, c, p)


def inverse_mod(f: Poly, m: Poly, p: int) -> Poly | None:
    h, s, _ = ext_gcd(mod(f, m, p), m, p)
    if h != (1,):
        return None
    return mod(s, m, p)


def monic_polys(deg: int, p: int) -> Iterator[Poly]:
    for high_first in itertools.product(range(p), repeat=deg):
        yield tuple(reversed(high_first)) + (1,)


def is_irreducible(f: Poly, p: int) -> bool:
    if degree(f) < 1:
        return False
    f = monic(f, p)
    for d in range(1, degree(f) // 2 + 1):
        for g in monic_polys(d, p):
            if not mod(f, g, p):
                return False
    return True


def factor(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Factor f into monic irreducibles by trial division (desk-scale only)."""
    if degree(f) < 1:
        raise ValueError("cannot factor a constant polynomial")
    f = monic(f, p)
    out: list[tuple[Poly, int]] = []
    d = 1
    while degree(f) >= 1:
        if 2 * d > degree(f):
            out.append((f, 1))
            break
        for g in monic_polys(d, p):
            e = 0
            while True:
                q, r = divmod_poly(f, g, p)
                if r:
                    break
                f, e = q, e + 1
            if e:
                out.append((g, e))
        d += 1
    merged: dict[Poly, int] = {}
    for g, e in out:
        merged[g] = merged.get(g, 0) + e
    return sorted(merged.items(), key=lambda ge: (len(ge[0]), ge[0][::-1]))


def valuation(f: Poly, g: Poly, p: int) -> int | None:
    """Multiplicity of g in f; None for the zero polynomial."""
    if not f:
        return None
    v = 0
    while True:
        q, r = divmod_poly(f, g, p)
        if r:
            return v
        f, v = q, v + 1


def crt(residues: list[Poly], moduli: list[Poly], p: int) -> Poly:
    """Smallest-degree solution of x = r_i mod m_i for pairwise coprime m_i."""
    x: Poly = ()
    m: Poly = (1,)
    for r, mi in zip(residues, moduli):
        inv = inverse_mod(m, mi, p)
        if inv is None:
            raise ValueError("moduli are not coprime")
        k = mod(mul(sub(r, x, p), inv, p), mi, p)
        x = add(x, mul(m, k, p), p)
        m = mul(m, mi, p)
    return mod(x, m, p)


def to_index(f: Poly, p: int) -> int:
    return sum(c * p**i for i, c in enumerate(f))
