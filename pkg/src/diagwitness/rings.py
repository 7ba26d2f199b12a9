"""Exact arithmetic over a closed tower of Artinian rings.

Ring descriptors are frozen dataclasses; elements are plain immutable Python
values (ints, tuples, Fractions) whose meaning depends on the descriptor.
Every operation takes and returns canonical forms, so structural equality
is ring equality.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, prod
from typing import Any, Callable, Iterator, NamedTuple

from . import polynomials as P

Element = Any


class Decomposition(NamedTuple):
    """Simple components of R/J with projection and lift maps."""

    components: list
    project: Callable[[Element], tuple]
    lift: Callable[[tuple], Element]


class Quaternion(NamedTuple):
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction


def factor_int(m: int) -> list[tuple[int, int]]:
    out = []
    q = 2
    while q * q <= m:
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            out.append((q, e))
        q += 1
    if m > 1:
        out.append((m, 1))
    return out


def is_prime(p: int) -> bool:
    return p >= 2 and factor_int(p) == [(p, 1)]


def int_crt(residues, moduli) -> int:
    x, m = 0, 1
    for r, mi in zip(residues, moduli):
        k = (r - x) * pow(m, -1, mi) % mi
        x += m * k
        m *= mi
    return x % m


def split_top(text: str, sep: str) -> list[str]:
    """Split on `sep` at bracket depth zero."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _strip_brackets(text: str, open_: str, close: str) -> str:
    text = text.strip()
    if not (text.startswith(open_) and text.endswith(close)):
        raise ValueError(f"expected {open_}...{close}, got {text!r}")
    return text[1:-1]


def _signed_terms(text: str) -> list[tuple[int, str]]:
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty element")
    if not re.fullmatch(r"([+-]?[^+-]+)+", text):
        raise ValueError(f"malformed element {text!r}")
    return [(-1 if sign == "-" else 1, body) for sign, body in re.findall(r"([+-]?)([^+-]+)", text)]


# Decimal conversion in chunks, so witnesses with huge entries stay below
# the interpreter's int/str conversion limit without touching global state.
_CHUNK_BITS = 12000
_CHUNK_DIGITS = 3000


def int_to_str(n: int) -> str:
    if n < 0:
        return "-" + int_to_str(-n)
    if n.bit_length() < _CHUNK_BITS:
        return str(n)
    half = int(n.bit_length() * 0.30103) // 2
    hi, lo = divmod(n, 10**half)
    return int_to_str(hi) + int_to_str(lo).zfill(half)


def str_to_int(text: str) -> int:
    text = text.strip()
    if text.startswith(("-", "+")):
        sign = -1 if text[0] == "-" else 1
        return sign * str_to_int(text[1:])
    if not text.isdigit():
        raise ValueError(f"bad integer {text!r}")
    if len(text) <= _CHUNK_DIGITS:
        return int(text)
    half = len(text) // 2
    return str_to_int(text[:-half]) * 10**half + str_to_int(text[-half:])


def _fraction(text: str) -> Fraction:
    num, slash, den = text.strip().partition("/")
    try:
        return Fraction(str_to_int(num), str_to_int(den) if slash else 1)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}") from exc


def _rational_content(values) -> Fraction | None:
    nonzero = [v for v in values if v]
    if not nonzero:
        return None
    den = reduce(lambda acc, v: acc * v.denominator // gcd(acc, v.denominator), nonzero, 1)
    num = reduce(gcd, (abs(v.numerator) * (den // v.denominator) for v in nonzero))
    return Fraction(den, num)


def _format_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return int_to_str(x.numerator)
    return f"{int_to_str(x.numerator)}/{int_to_str(x.denominator)}"


class Ring:
    """Shared behaviour; subclasses supply the arithmetic."""

    is_division_ring = False
    is_finite = True

    zero: Element
    one: Element

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def is_zero(self, x) -> bool:
        return x == self.zero

    def is_unit(self, x) -> bool:
        return self.inverse(x) is not None

    def power(self, x, k: int):
        out, base = self.one, x
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def sum(self, xs):
        return reduce(self.add, xs, self.zero)

    def nilpotency_exponent(self) -> int:
        return 1

    def valuation(self, x) -> int | None:
        """Radical degree of x, or None for x = 0."""
        return None if self.is_zero(x) else 0

    def radical_degree(self, x) -> int:
        v = self.valuation(x)
        return self.nilpotency_exponent() if v is None else min(v, self.nilpotency_exponent())

    def decompose(self) -> Decomposition:
        return Decomposition([self], lambda x: (x,), lambda t: t[0])

    def units(self) -> Iterator[Element]:
        for x in self.elements():
            if self.is_unit(x):
                yield x

    def elements(self) -> Iterator[Element]:
        raise TypeError(f"{self} is infinite")

    def scalars(self) -> Iterator[Element]:
        """Units used as generic scalars by the diagonal searches."""
        return self.units()

    def content(self, xs) -> Element:
        """Central unit c making c*xs a primitive integral vector (1 if meaningless)."""
        return self.one

    @property
    def size(self) -> int | None:
        return None

    def parse(self, obj) -> Element:
        raise NotImplementedError

    def format(self, x) -> str:
        return str(x)


@dataclass(frozen=True)
class PrimeField(Ring):
    p: int

    is_division_ring = True

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"F{self.p}: modulus is not prime")

    def __str__(self):
        return f"F{self.p}"

    zero = 0
    one = 1

    def add(self, x, y):
        return (x + y) % self.p

    def neg(self, x):
        return -x % self.p

    def mul(self, x, y):
        return x * y % self.p

    def from_int(self, k: int):
        return k % self.p

    def inverse(self, x):
        return pow(x, -1, self.p) if x else None

    def elements(self):
        return iter(range(self.p))

    @property
    def size(self):
        return self.p

    def random_element(self, rng, bound=None):
        return rng.randrange(self.p)

    def parse(self, obj):
        return int(str(obj).strip()) % self.p


@dataclass(frozen=True)
class IntegerMod(Ring):
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("Z/m needs m >= 2")

    def __str__(self):
        return f"Z/{self.m}"

    zero = 0
    one = 1

    @cached_property
    def _factors(self):
        return factor_int(self.m)

    def add(self, x, y):
        return (x + y) % self.m

    def neg(self, x):
        return -x % self.m

    def mul(self, x, y):
        return x * y % self.m

    def from_int(self, k: int):
        return k % self.m

    def inverse(self, x):
        if gcd(x, self.m) != 1:
            return None
        return pow(x, -1, self.m)

    def elements(self):
        return iter(range(self.m))

    @property
    def size(self):
        return self.m

    def nilpotency_exponent(self):
        return max(e for _, e in self._factors)

    def valuation(self, x):
        vals = []
        for q, e in self._factors:
            r = x % q**e
            if r:
                v = 0
                while r % q == 0:
                    r //= q
                    v += 1
                vals.append(v)
        return min(vals) if vals else None

    def decompose(self):
        primes = [q for q, _ in self._factors]
        return Decomposition(
            [PrimeField(q) for q in primes],
            lambda x: tuple(x % q for q in primes),
            lambda t: int_crt(t, primes),
        )

    def random_element(self, rng, bound=None):
        return rng.randrange(self.m)

    def parse(self, obj):
        return int(str(obj).strip()) % self.m


class _PolyRing(Ring):
    """F_p[x]/(f); elements are trimmed coefficient tuples of degree < deg f."""

    p: int

    @property
    def _f(self) -> P.Poly:
        raise NotImplementedError

    zero: P.Poly = ()

    @property
    def one(self):
        return P.trim((1,), self.p) if P.degree(self._f) >= 1 else ()

    def add(self, x, y):
        return P.add(x, y, self.p)

    def neg(self, x):
        return P.neg(x, self.p)

    def mul(self, x, y):
        return P.mod(P.mul(x, y, self.p), self._f, self.p)

    def from_int(self, k: int):
        return P.trim((k,), self.p)

    def inverse(self, x):
        if not x:
            return None
        return P.inverse_mod(x, self._f, self.p)

    def elements(self):
        for coeffs in itertools.product(range(self.p), repeat=P.degree(self._f)):
            yield P.trim(tuple(reversed(coeffs)), self.p)

    @property
    def size(self):
        return self.p ** P.degree(self._f)

    def random_element(self, rng, bound=None):
        return P.trim([rng.randrange(self.p) for _ in range(P.degree(self._f))], self.p)

    def parse(self, obj):
        return P.mod(parse_poly(str(obj), self.p), self._f, self.p)

    def format(self, x):
        return format_poly(x)


def parse_poly(text: str, p: int | None = None) -> tuple[int, ...]:
    """Parse `c0+c1*x+c2*x^2` (also `x**2`, implicit unit coefficients)."""
    coeffs: dict[int, int] = {}
    for sign, body in _signed_terms(text):
        if "x" in body:
            head, _, tail = body.partition("x")
            head = head.rstrip("*")
            c = int(head) if head else 1
            tail = tail.lstrip("*^")
            e = int(tail) if tail else 1
        else:
            c, e = int(body), 0
        coeffs[e] = coeffs.get(e, 0) + sign * c
    dense = [coeffs.get(i, 0) for i in range(max(coeffs) + 1)] if coeffs else []
    if p is None:
        while dense and dense[-1] == 0:
            dense.pop()
        return tuple(dense)
    return P.trim(dense, p)


def format_poly(f) -> str:
    if not f:
        return "0"
    terms = []
    for i, c in enumerate(f):
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = "x" if i == 1 else f"x^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


@dataclass(frozen=True)
class ExtensionField(_PolyRing):
    p: int
    modulus: tuple

    is_division_ring = True

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        f = P.monic(P.trim(self.modulus, self.p), self.p)
        if not P.is_irreducible(f, self.p):
            raise ValueError(f"{format_poly(f)} is reducible over F{self.p}")
        object.__setattr__(self, "modulus", f)

    @property
    def _f(self):
        return self.modulus

    def __str__(self):
        return f"F{self.p}[x]/({format_poly(self.modulus)})"


@dataclass(frozen=True)
class PolyQuotient(_PolyRing):
    p: int
    f: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        f = P.trim(self.f, self.p)
        if P.degree(f) < 1:
            raise ValueError("quotient modulus must have degree >= 1")
        object.__setattr__(self, "f", P.monic(f, self.p))

    @property
    def _f(self):
        return self.f

    def __str__(self):
        return f"F{self.p}[x]/({format_poly(self.f)})"

    @cached_property
    def _factors(self):
        return P.factor(self.f, self.p)

    def nilpotency_exponent(self):
        return max(e for _, e in self._factors)

    def valuation(self, x):
        vals = []
        for g, e in self._factors:
            v = P.valuation(x, g, self.p)
            if v is not None and v < e:
                vals.append(v)
        return min(vals) if vals else None

    def decompose(self):
        gs = [g for g, _ in self._factors]
        return Decomposition(
            [ExtensionField(self.p, g) for g in gs],
            lambda x: tuple(P.mod(x, g, self.p) for g in gs),
            lambda t: P.crt(list(t), gs, self.p),
        )


@dataclass(frozen=True)
class Rationals(Ring):
    is_division_ring = True
    is_finite = False

    zero = Fraction(0)
    one = Fraction(1)

    def __str__(self):
        return "Q"

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def from_int(self, k: int):
        return Fraction(k)

    def inverse(self, x):
        return 1 / x if x else None

    def units(self):
        return (Fraction(t) for t in itertools.count(1))

    def content(self, xs):
        return _rational_content(list(xs)) or self.one

    def random_element(self, rng, bound=3):
        return Fraction(rng.randint(-bound, bound))

    def parse(self, obj):
        if isinstance(obj, (int, Fraction)):
            return Fraction(obj)
        return _fraction(str(obj).strip())

    def format(self, x):
        return _format_fraction(x)


_Q0 = Fraction(0)


@dataclass(frozen=True)
class RationalQuaternions(Ring):
    is_division_ring = True
    is_finite = False

    zero = Quaternion(_Q0, _Q0, _Q0, _Q0)
    one = Quaternion(Fraction(1), _Q0, _Q0, _Q0)

    def __str__(self):
        return "HQ"

    def add(self, x, y):
        return Quaternion(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d)

    def neg(self, x):
        return Quaternion(-x.a, -x.b, -x.c, -x.d)

    def mul(self, x, y):
        a1, b1, c1, d1 = x
        a2, b2, c2, d2 = y
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def from_int(self, k: int):
        return Quaternion(Fraction(k), _Q0, _Q0, _Q0)

    def inverse(self, x):
        norm = x.a * x.a + x.b * x.b + x.c * x.c + x.d * x.d
        if not norm:
            return None
        return Quaternion(x.a / norm, -x.b / norm, -x.c / norm, -x.d / norm)

    def units(self):
        # Level L: the central unit L, then non-real integer quaternions of sup-norm L.
        for level in itertools.count(1):
            yield self.from_int(level)
            for coords in itertools.product(range(-level, level + 1), repeat=4):
                if max(map(abs, coords)) == level and any(coords[1:]):
                    yield Quaternion(*map(Fraction, coords))

    def scalars(self):
        return (self.from_int(t) for t in itertools.count(1))

    def content(self, xs):
        return self.from_int(_rational_content([c for x in xs for c in x]) or 1)

    def random_element(self, rng, bound=2):
        return Quaternion(*(Fraction(rng.randint(-bound, bound)) for _ in range(4)))

    def parse(self, obj):
        if isinstance(obj, int):
            return self.from_int(obj)
        parts = {"": _Q0, "i": _Q0, "j": _Q0, "k": _Q0}
        for sign, body in _signed_terms(str(obj)):
            unit = body[-1] if body[-1] in "ijk" else ""
            coeff = body[:-1].rstrip("*") if unit else body
            parts[unit] += sign * (_fraction(coeff) if coeff else Fraction(1))
        return Quaternion(parts[""], parts["i"], parts["j"], parts["k"])

    def format(self, x):
        terms = []
        for value, unit in zip(x, ("", "i", "j", "k")):
            if not value:
                continue
            if unit and abs(value) == 1:
                body = unit
            else:
                body = _format_fraction(abs(value)) + (f"*{unit}" if unit else "")
            terms.append(("-" if value < 0 else "+") + body)
        if not terms:
            return "0"
        return "".join(terms).lstrip("+")


def _dovetail(streams: list[Iterator]) -> Iterator[tuple]:
    """Enumerate tuples from several streams, diagonal first within each level."""
    caches: list[list] = [[] for _ in streams]
    done = [False] * len(streams)

    def have(i, idx):
        while len(caches[i]) <= idx and not done[i]:
            try:
                caches[i].append(next(streams[i]))
            except StopIteration:
                done[i] = True
        return idx < len(caches[i])

    for level in itertools.count():
        present = [have(i, level) for i in range(len(streams))]
        if not any(present):
            return
        if not all(have(i, 0) for i in range(len(streams))):
            return
        ranges = [range(min(level + 1, len(c))) for c in caches]
        diag = (level,) * len(streams)
        if all(present):
            yield tuple(c[level] for c in caches)
        for idx in itertools.product(*ranges):
            if max(idx) == level and idx != diag:
                yield tuple(c[j] for c, j in zip(caches, idx))


@dataclass(frozen=True)
class Product(Ring):
    specs: tuple

    def __post_init__(self):
        object.__setattr__(self, "specs", tuple(self.specs))
        if not self.specs:
            raise ValueError("product of no rings")

    def __str__(self):
        return "x".join(str(s) for s in self.specs)

    @property
    def is_finite(self):
        return all(s.is_finite for s in self.specs)

    @property
    def zero(self):
        return tuple(s.zero for s in self.specs)

    @property
    def one(self):
        return tuple(s.one for s in self.specs)

    def add(self, x, y):
        return tuple(s.add(a, b) for s, a, b in zip(self.specs, x, y))

    def neg(self, x):
        return tuple(s.neg(a) for s, a in zip(self.specs, x))

    def mul(self, x, y):
        return tuple(s.mul(a, b) for s, a, b in zip(self.specs, x, y))

    def from_int(self, k: int):
        return tuple(s.from_int(k) for s in self.specs)

    def inverse(self, x):
        out = tuple(s.inverse(a) for s, a in zip(self.specs, x))
        return None if any(y is None for y in out) else out

    def elements(self):
        return itertools.product(*(s.elements() for s in self.specs))

    def units(self):
        return _dovetail([s.units() for s in self.specs])

    @property
    def size(self):
        sizes = [s.size for s in self.specs]
        return None if None in sizes else prod(sizes)

    def nilpotency_exponent(self):
        return max(s.nilpotency_exponent() for s in self.specs)

    def valuation(self, x):
        vals = [v for s, a in zip(self.specs, x) if (v := s.valuation(a)) is not None]
        return min(vals) if vals else None

    def decompose(self):
        parts = [s.decompose() for s in self.specs]
        sizes = [len(d.components) for d in parts]

        def project(x):
            return tuple(itertools.chain.from_iterable(d.project(a) for d, a in zip(parts, x)))

        def lift(t):
            out, pos = [], 0
            for d, k in zip(parts, sizes):
                out.append(d.lift(tuple(t[pos : pos + k])))
                pos += k
            return tuple(out)

        return Decomposition([c for d in parts for c in d.components], project, lift)

    def random_element(self, rng, bound=3):
        return tuple(s.random_element(rng, bound) for s in self.specs)

    def parse(self, obj):
        if isinstance(obj, (list, tuple)):
            pieces = list(obj)
        else:
            pieces = split_top(_strip_brackets(str(obj), "(", ")"), "|")
        if len(pieces) != len(self.specs):
            raise ValueError(f"expected {len(self.specs)} components, got {len(pieces)}")
        return tuple(s.parse(piece) for s, piece in zip(self.specs, pieces))

    def format(self, x):
        return "(" + "|".join(s.format(a) for s, a in zip(self.specs, x)) + ")"


def gauss_inverse(ring: Ring, rows) -> tuple | None:
    """Two-sided inverse over a division ring by left row operations."""
    n = len(rows)
    work = [list(r) + [ring.one if i == j else ring.zero for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not ring.is_zero(work[r][col])), None)
        if pivot is None:
            return None
        work[col], work[pivot] = work[pivot], work[col]
        inv = ring.inverse(work[col][col])
        work[col] = [ring.mul(inv, v) for v in work[col]]
        for r in range(n):
            if r != col and not ring.is_zero(work[r][col]):
                f = work[r][col]
                work[r] = [ring.sub(v, ring.mul(f, w)) for v, w in zip(work[r], work[col])]
    return tuple(tuple(r[n:]) for r in work)


@dataclass(frozen=True)
class MatrixRing(Ring):
    base: Ring
    k: int

    def __post_init__(self):
        if not self.base.is_division_ring:
            raise ValueError("matrix ring base must be a division ring")
        if self.k < 1:
            raise ValueError("matrix ring size must be >= 1")

    def __str__(self):
        return f"M{self.k}({self.base})"

    @property
    def is_finite(self):
        return self.base.is_finite

    def _scalar(self, c):
        b = self.base
        return tuple(tuple(c if i == j else b.zero for j in range(self.k)) for i in range(self.k))

    @property
    def zero(self):
        return self._scalar(self.base.zero)

    @property
    def one(self):
        return self._scalar(self.base.one)

    def add(self, x, y):
        return tuple(tuple(self.base.add(a, b) for a, b in zip(r, s)) for r, s in zip(x, y))

    def neg(self, x):
        return tuple(tuple(self.base.neg(a) for a in r) for r in x)

    def mul(self, x, y):
        b = self.base
        cols = list(zip(*y))
        return tuple(tuple(b.sum(b.mul(u, v) for u, v in zip(r, c)) for c in cols) for r in x)

    def from_int(self, k: int):
        return self._scalar(self.base.from_int(k))

    def inverse(self, x):
        return gauss_inverse(self.base, x)

    def elements(self):
        for flat in itertools.product(list(self.base.elements()), repeat=self.k * self.k):
            yield tuple(tuple(flat[i * self.k : (i + 1) * self.k]) for i in range(self.k))

    def units(self):
        if self.base.is_finite:
            return super().units()
        return (self._scalar(t) for t in self.base.scalars())

    def scalars(self):
        return (self._scalar(t) for t in self.base.scalars())

    @property
    def size(self):
        s = self.base.size
        return None if s is None else s ** (self.k * self.k)

    def random_element(self, rng, bound=3):
        return tuple(tuple(self.base.random_element(rng, bound) for _ in range(self.k)) for _ in range(self.k))

    def parse(self, obj):
        if isinstance(obj, (list, tuple)):
            rows = obj
        else:
            rows = [split_top(_strip_brackets(r, "[", "]"), ",") for r in split_top(_strip_brackets(str(obj), "[", "]"), ",")]
        if len(rows) != self.k or any(len(r) != self.k for r in rows):
            raise ValueError(f"expected a {self.k}x{self.k} block")
        return tuple(tuple(self.base.parse(a) for a in r) for r in rows)

    def format(self, x):
        return "[" + ",".join("[" + ",".join(self.base.format(a) for a in r) + "]" for r in x) + "]"


# Functional surface mirroring the operation names used elsewhere in the package.


def invert_element(x, spec: Ring):
    return spec.inverse(x)


def radical_degree(x, spec: Ring) -> int:
    return spec.radical_degree(x)


def nilpotency_exponent(spec: Ring) -> int:
    return spec.nilpotency_exponent()


def semisimple_decompose(spec: Ring) -> Decomposition:
    return spec.decompose()


def enumerate_units(spec: Ring) -> Iterator[Element]:
    return spec.units()
