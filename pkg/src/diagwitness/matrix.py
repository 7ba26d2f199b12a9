"""Square matrices over the ring tower, words in <a, D>, and block flattening.

Indices are 0-based throughout.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .rings import Element, MatrixRing, Ring, gauss_inverse


class InternalError(RuntimeError):
    """An invariant guaranteed by the underlying algebra was violated."""


@dataclass(frozen=True)
class Matrix:
    ring: Ring
    rows: tuple

    @classmethod
    def of(cls, ring: Ring, rows: Iterable[Iterable[Element]]) -> Matrix:
        rows = tuple(tuple(r) for r in rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        return cls(ring, rows)

    @classmethod
    def parse(cls, ring: Ring, rows) -> Matrix:
        return cls.of(ring, ([ring.parse(x) for x in r] for r in rows))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> Matrix:
        return cls.diagonal(ring, [ring.one] * n)

    @classmethod
    def diagonal(cls, ring: Ring, entries: Sequence[Element]) -> Matrix:
        n = len(entries)
        return cls(ring, tuple(tuple(entries[i] if i == j else ring.zero for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: Matrix) -> Matrix:
        if other.ring != self.ring or other.n != self.n:
            raise ValueError("dimension or ring mismatch")
        R = self.ring
        cols = list(zip(*other.rows))
        return Matrix(
            R, tuple(tuple(R.sum(R.mul(u, v) for u, v in zip(row, col)) for col in cols) for row in self.rows)
        )

    def scale_columns(self, d: Sequence[Element]) -> Matrix:
        """self @ diag(d)."""
        R = self.ring
        return Matrix(R, tuple(tuple(R.mul(x, d[j]) for j, x in enumerate(row)) for row in self.rows))

    def scale_rows(self, d: Sequence[Element]) -> Matrix:
        """diag(d) @ self."""
        R = self.ring
        return Matrix(R, tuple(tuple(R.mul(d[i], x) for x in row) for i, row in enumerate(self.rows)))

    def power(self, k: int) -> Matrix:
        out = Matrix.identity(self.ring, self.n)
        for _ in range(k):
            out = out @ self
        return out

    def is_zero_at(self, i: int, j: int) -> bool:
        return self.ring.is_zero(self.rows[i][j])

    def support(self) -> frozenset:
        return frozenset((i, j) for i in range(self.n) for j in range(self.n) if not self.is_zero_at(i, j))

    def diagonal_entries(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(self.n))

    def is_diagonal(self) -> bool:
        return all(self.is_zero_at(i, j) for i in range(self.n) for j in range(self.n) if i != j)

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.ring, self.n)

    def inverse(self) -> Matrix | None:
        return invert_matrix(self)

    def to_strings(self) -> list[list[str]]:
        return [[self.ring.format(x) for x in row] for row in self.rows]

    def key(self) -> str:
        return ";".join(",".join(r) for r in self.to_strings())

    def __str__(self):
        return "[" + ",".join("[" + ",".join(r) + "]" for r in self.to_strings()) + "]"


def _invert_simple(a: Matrix) -> Matrix | None:
    R = a.ring
    if R.is_division_ring:
        inv = gauss_inverse(R, a.rows)
        return None if inv is None else Matrix(R, inv)
    if isinstance(R, MatrixRing):
        flat_inv = _invert_simple(flatten(a))
        return None if flat_inv is None else unflatten(flat_inv, R)
    raise TypeError(f"{R} is not a simple Artinian ring")


def project_matrix(a: Matrix, decomposition, index: int) -> Matrix:
    ring = decomposition.components[index]
    return Matrix(ring, tuple(tuple(decomposition.project(x)[index] for x in row) for row in a.rows))


def invert_matrix(a: Matrix) -> Matrix | None:
    """Exact two-sided inverse, or None when a is not in GL(n, R).

    Division rings use Gauss-Jordan elimination. Otherwise the matrix is
    inverted in every simple component of R/J, lifted, and refined by the
    Newton step X <- X(2e - aX), which converges because e - aX starts in J.
    """
    R = a.ring
    if R.is_division_ring:
        return _invert_simple(a)
    dec = R.decompose()
    projected = [[dec.project(x) for x in row] for row in a.rows]
    parts = []
    for t, comp in enumerate(dec.components):
        inv = _invert_simple(Matrix(comp, tuple(tuple(p[t] for p in row) for row in projected)))
        if inv is None:
            return None
        parts.append(inv)
    n = a.n
    x = Matrix(R, tuple(tuple(dec.lift(tuple(p.rows[i][j] for p in parts)) for j in range(n)) for i in range(n)))
    e = Matrix.identity(R, n)
    two_e = Matrix.diagonal(R, [R.from_int(2)] * n)
    for _ in range(R.nilpotency_exponent() + 1):
        ax = a @ x
        if ax == e:
            if x @ a != e:
                raise InternalError("one-sided inverse over an Artinian ring")
            return x
        x = x @ Matrix(R, tuple(tuple(R.sub(u, v) for u, v in zip(r, s)) for r, s in zip(two_e.rows, ax.rows)))
    raise InternalError("Newton lifting did not converge within the nilpotency bound")


def minor(a: Matrix, i: int, j: int) -> Matrix:
    """Delete row i and column j."""
    if not (0 <= i < a.n and 0 <= j < a.n):
        raise IndexError("minor index out of range")
    return Matrix(a.ring, tuple(tuple(x for c, x in enumerate(row) if c != j) for r, row in enumerate(a.rows) if r != i))


class _Gen:
    __slots__ = ()

    def __repr__(self):
        return "Gen"


Gen = _Gen()


@dataclass(frozen=True)
class Diag:
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))


@dataclass(frozen=True)
class Word:
    """A product w_1 ... w_m with each factor Gen (the matrix a) or Diag."""

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not any(f is Gen for f in self.factors):
            raise ValueError("a word in <a, D> needs at least one Gen factor")
        if not all(f is Gen or isinstance(f, Diag) for f in self.factors):
            raise TypeError("word factors must be Gen or Diag")

    @classmethod
    def gen(cls, copies: int = 1) -> Word:
        return cls((Gen,) * copies)

    def __len__(self):
        return len(self.factors)

    def __add__(self, other: Word) -> Word:
        return Word(self.factors + other.factors)

    def append(self, *factors) -> Word:
        return Word(self.factors + factors)

    @property
    def gen_count(self) -> int:
        return sum(1 for f in self.factors if f is Gen)

    def simplify(self, ring: Ring) -> Word:
        """Merge adjacent diagonals and drop identity diagonals."""
        out: list = []
        for f in self.factors:
            if isinstance(f, Diag) and out and isinstance(out[-1], Diag):
                out[-1] = Diag(tuple(ring.mul(x, y) for x, y in zip(out[-1].entries, f.entries)))
            else:
                out.append(f)
        return Word(tuple(f for f in out if f is Gen or any(x != ring.one for x in f.entries)))

    def to_json(self, ring: Ring) -> list:
        return [{"gen": True} if f is Gen else {"diag": [ring.format(x) for x in f.entries]} for f in self.factors]

    @classmethod
    def from_json(cls, obj, ring: Ring) -> Word:
        factors = []
        for item in obj:
            if item.get("gen") is True and "diag" not in item:
                factors.append(Gen)
            elif "diag" in item:
                factors.append(Diag(tuple(ring.parse(x) for x in item["diag"])))
            else:
                raise ValueError(f"bad word factor {item!r}")
        return cls(tuple(factors))

    def __str__(self):
        return "[" + ", ".join("Gen" if f is Gen else f"Diag{f.entries}" for f in self.factors) + "]"


def evaluate_word(w: Word, a: Matrix) -> Matrix:
    """Left-to-right product with Gen -> a."""
    R = a.ring
    out: Matrix | None = None
    for f in w.factors:
        if f is Gen:
            out = a if out is None else out @ a
            continue
        if len(f.entries) != a.n:
            raise ValueError("diagonal factor has the wrong dimension")
        if not all(R.is_unit(x) for x in f.entries):
            raise ValueError("diagonal factor has a non-unit entry")
        out = Matrix.diagonal(R, f.entries) if out is None else out.scale_columns(f.entries)
    return out


def substitute_word(outer: Word, inner: Word) -> Word:
    """Replace every Gen of outer by the factors of inner."""
    return Word(tuple(itertools.chain.from_iterable(inner.factors if f is Gen else (f,) for f in outer.factors)))


def flatten(a: Matrix) -> Matrix:
    """GL(n, M(k, T)) -> GL(nk, T) by block expansion."""
    R = a.ring
    if not isinstance(R, MatrixRing):
        raise TypeError("flatten needs a matrix over a MatrixRing")
    k = R.k
    rows = []
    for block_row in a.rows:
        for r in range(k):
            rows.append(tuple(x for block in block_row for x in block[r]))
    return Matrix(R.base, tuple(rows))


def unflatten(a: Matrix, ring: MatrixRing) -> Matrix:
    k = ring.k
    if a.n % k:
        raise ValueError("dimension is not a multiple of the block size")
    n = a.n // k
    return Matrix(
        ring,
        tuple(
            tuple(tuple(tuple(a.rows[bi * k + r][bj * k + c] for c in range(k)) for r in range(k)) for bj in range(n))
            for bi in range(n)
        ),
    )


def unflatten_diag(entries: Sequence[Element], ring: MatrixRing) -> tuple:
    """Regroup diag(d_1..d_nk) over T into n block-diagonal units of M(k, T)."""
    k = ring.k
    if len(entries) % k:
        raise ValueError("dimension is not a multiple of the block size")
    base = ring.base
    return tuple(
        tuple(tuple(entries[b * k + r] if r == c else base.zero for c in range(k)) for r in range(k))
        for b in range(len(entries) // k)
    )


def group_order_bound(ring: Ring, n: int) -> int:
    return ring.size ** (n * n)


def element_order(a: Matrix) -> int:
    if not a.ring.is_finite:
        raise TypeError("element_order needs a finite ring")
    if invert_matrix(a) is None:
        raise ValueError("matrix not invertible")
    e = Matrix.identity(a.ring, a.n)
    x = a
    for k in range(1, group_order_bound(a.ring, a.n) + 1):
        if x == e:
            return k
        x = x @ a
    raise InternalError("element order exceeds the group order bound")


def left_null_space(ring: Ring, rows: Sequence[Sequence[Element]]) -> list[tuple]:
    """Basis of {x : sum_r x_r B[r][j] = 0 for all j} over a division ring.

    Unknowns multiply from the left, so each equation is reduced with right
    multiplications. Basis vectors are normalised to have leading entry 1.
    """
    m = len(rows)
    cols = len(rows[0]) if rows else 0
    eqs = [[rows[r][j] for r in range(m)] for j in range(cols)]
    pivots: list[int] = []
    row = 0
    for c in range(m):
        piv = next((k for k in range(row, len(eqs)) if not ring.is_zero(eqs[k][c])), None)
        if piv is None:
            continue
        eqs[row], eqs[piv] = eqs[piv], eqs[row]
        inv = ring.inverse(eqs[row][c])
        eqs[row] = [ring.mul(v, inv) for v in eqs[row]]
        for k in range(len(eqs)):
            if k != row and not ring.is_zero(eqs[k][c]):
                f = eqs[k][c]
                eqs[k] = [ring.sub(v, ring.mul(w, f)) for v, w in zip(eqs[k], eqs[row])]
        pivots.append(c)
        row += 1
    basis = []
    for free in (c for c in range(m) if c not in pivots):
        x = [ring.zero] * m
        x[free] = ring.one
        for k, pc in enumerate(pivots):
            x[pc] = ring.neg(eqs[k][free])
        lead = next(v for v in x if not ring.is_zero(v))
        inv = ring.inverse(lead)
        basis.append(tuple(ring.mul(inv, v) for v in x))
    return basis
