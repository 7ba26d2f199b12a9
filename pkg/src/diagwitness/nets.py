"""D-nets over division rings, as reflexive Boolean patterns."""
from __future__ import annotations

from dataclasses import dataclass

from .matrix import Matrix, invert_matrix


@dataclass(frozen=True)
class NetPattern:
    """allow[i][j] is True where the net entry is the whole ring, False where it is 0."""

    allow: tuple

    def __post_init__(self):
        allow = tuple(tuple(bool(x) for x in row) for row in self.allow)
        if any(len(row) != len(allow) for row in allow):
            raise ValueError("net pattern must be square")
        if not all(allow[i][i] for i in range(len(allow))):
            raise ValueError("a D-net pattern must be reflexive")
        object.__setattr__(self, "allow", allow)

    @property
    def n(self) -> int:
        return len(self.allow)

    @classmethod
    def full(cls, n: int) -> NetPattern:
        return cls(tuple((True,) * n for _ in range(n)))

    @classmethod
    def lower_triangular(cls, n: int) -> NetPattern:
        return cls(tuple(tuple(j <= i for j in range(n)) for i in range(n)))

    @classmethod
    def upper_triangular(cls, n: int) -> NetPattern:
        return cls(tuple(tuple(j >= i for j in range(n)) for i in range(n)))

    def to_json(self) -> list:
        return [[int(x) for x in row] for row in self.allow]

    @classmethod
    def from_json(cls, obj) -> NetPattern:
        return cls(tuple(tuple(bool(x) for x in row) for row in obj))


def validate_net(p: NetPattern) -> bool:
    """Transitivity: allow[i][r] and allow[r][j] imply allow[i][j]."""
    a, n = p.allow, p.n
    return all(a[i][j] or not (a[i][r] and a[r][j]) for i in range(n) for r in range(n) for j in range(n))


def pattern_of(b: Matrix) -> NetPattern:
    if not b.ring.is_division_ring:
        raise TypeError("net patterns are defined over division rings")
    if any(b.is_zero_at(i, i) for i in range(b.n)):
        raise ValueError("pattern_of needs a nonzero diagonal")
    return NetPattern(tuple(tuple(not b.is_zero_at(i, j) for j in range(b.n)) for i in range(b.n)))


def member(b: Matrix, p: NetPattern) -> bool:
    """b in GL(n) and b vanishes wherever the pattern forbids an entry."""
    if b.n != p.n:
        return False
    if any(not p.allow[i][j] and not b.is_zero_at(i, j) for i in range(b.n) for j in range(b.n)):
        return False
    return invert_matrix(b) is not None


def inverse_closure_check(b: Matrix, p: NetPattern) -> bool:
    inv = invert_matrix(b)
    return inv is not None and member(inv, p)
