"""Roots, rook placements and the combinatorial sets driving character values.

A root is an off-diagonal board position (i, j), 1-based.  Positive roots
(i < j) index the strictly upper basis units, negative roots (i > j) the
strictly lower ones.  The structure-constant product of two such units is
pure root combinatorics and lives here as unit_product; the algebra module
builds its multiplication tables from it, so there is a single source of
truth for which products vanish.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Optional

from .errors import DomainError


class Root(NamedTuple):
    i: int
    j: int

    @property
    def positive(self) -> bool:
        return self.i < self.j

    def transpose(self) -> "Root":
        return Root(self.j, self.i)

    def __repr__(self) -> str:
        return f"({self.i},{self.j})"


def checked_root(i: int, j: int, n: int) -> Root:
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise DomainError(f"({i},{j}) is not a root of the size-{n} board")
    return Root(i, j)


def compose(a: Root, b: Root) -> Optional[Root]:
    """Partial addition (i,j)+(j,k) = (i,k); None when undefined."""
    if a.j != b.i or a.i == b.j:
        return None
    return Root(a.i, b.j)


def unit_product(a: Root, b: Root) -> Optional[Root]:
    """Root of the product of the basis units attached to a and b, or None if zero.

    Positive roots carry upper units, negative roots lower units.  Upper*upper
    composes whenever the indices chain; lower*lower is always zero; the mixed
    products survive only strictly below the diagonal (row > column).
    """
    if a.j != b.i:
        return None
    apos, bpos = a.positive, b.positive
    if apos and bpos:
        return Root(a.i, b.j)
    if not apos and not bpos:
        return None
    return Root(a.i, b.j) if a.i > b.j else None


class RookPlacement:
    """A set of roots with at most one per row and per column, on an n-board."""

    __slots__ = ("n", "roots", "_rows", "_cols")

    def __init__(self, n: int, roots: Iterable[Root] = ()):
        rts = tuple(sorted(Root(*r) for r in roots))
        rows = [r.i for r in rts]
        cols = [r.j for r in rts]
        for r in rts:
            if not (1 <= r.i <= n and 1 <= r.j <= n) or r.i == r.j:
                raise DomainError(f"{r} is not a root of the size-{n} board")
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise DomainError(f"{rts} has two rooks in a row or column")
        self.n = n
        self.roots = rts
        self._rows = frozenset(rows)
        self._cols = frozenset(cols)

    @property
    def rows(self) -> frozenset[int]:
        return self._rows

    @property
    def cols(self) -> frozenset[int]:
        return self._cols

    @property
    def used_indices(self) -> frozenset[int]:
        return self._rows | self._cols

    @property
    def positive(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if r.positive)

    @property
    def negative(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if not r.positive)

    def transpose(self) -> "RookPlacement":
        return RookPlacement(self.n, (r.transpose() for r in self.roots))

    def root_in_row(self, i: int) -> Optional[Root]:
        for r in self.roots:
            if r.i == i:
                return r
        return None

    def root_in_col(self, j: int) -> Optional[Root]:
        for r in self.roots:
            if r.j == j:
                return r
        return None

    def __contains__(self, r: object) -> bool:
        return r in self.roots

    def __iter__(self) -> Iterator[Root]:
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RookPlacement)
            and other.n == self.n
            and other.roots == self.roots
        )

    def __hash__(self) -> int:
        return hash((self.n, self.roots))

    def __lt__(self, other: "RookPlacement") -> bool:
        return (len(self.roots), self.roots) < (len(other.roots), other.roots)

    def __repr__(self) -> str:
        return f"RookPlacement(n={self.n}, {list(self.roots)})"

    def to_list(self) -> list[list[int]]:
        return [[r.i, r.j] for r in self.roots]


def all_roots(n: int) -> list[Root]:
    return sorted(Root(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j)


def placements(n: int, max_rooks: Optional[int] = None) -> Iterator[RookPlacement]:
    """All rook placements on the n-board, each exactly once, deterministic order."""
    if n < 1:
        raise DomainError("n must be >= 1")
    roots = all_roots(n)
    limit = len(roots) if max_rooks is None else max_rooks

    def rec(start: int, chosen: list[Root], rows: set[int], cols: set[int]) -> Iterator[RookPlacement]:
        yield RookPlacement(n, chosen)
        if len(chosen) >= limit:
            return
        for k in range(start, len(roots)):
            r = roots[k]
            if r.i in rows or r.j in cols:
                continue
            rows.add(r.i)
            cols.add(r.j)
            chosen.append(r)
            yield from rec(k + 1, chosen, rows, cols)
            chosen.pop()
            rows.discard(r.i)
            cols.discard(r.j)

    yield from rec(0, [], set(), set())


def decorations(D: RookPlacement, q: int) -> Iterator[tuple[int, ...]]:
    """All maps D -> F_q^*, as value tuples aligned with D.roots."""
    return itertools.product(range(1, q), repeat=len(D))


# ---------------------------------------------------------------------------
# shadow sets: the root sets cut out of each row by a rook, which control the
# stabilizer subalgebra and the q**s(D) transversal


def shadow_sets(gamma: Root, n: int) -> tuple[frozenset[Root], frozenset[Root]]:
    """(positive, negative) shadow of a single root.

    For gamma = (i,j) with i < j the shadow is the row segment strictly
    between the diagonal and the rook.  For i > j it is the rest of row i:
    the lower positions left of the rook and all upper positions of the row.
    """
    i, j = gamma
    if i < j:
        return frozenset(Root(i, k) for k in range(i + 1, j)), frozenset()
    plus = frozenset(Root(i, k) for k in range(i + 1, n + 1))
    minus = frozenset(Root(i, k) for k in range(1, j))
    return plus, minus


def shadow_star_sets(gamma: Root, n: int) -> tuple[frozenset[Root], frozenset[Root]]:
    """Image of the shadow under (i,k) -> (k, col(gamma)), split by sign."""
    plus, minus = shadow_sets(gamma, n)
    j = gamma.j
    starred = {Root(k, j) for (_, k) in plus | minus}
    return (
        frozenset(r for r in starred if r.positive),
        frozenset(r for r in starred if not r.positive),
    )


@lru_cache(maxsize=None)
def shadow(D: RookPlacement) -> frozenset[Root]:
    out: set[Root] = set()
    for g in D:
        plus, minus = shadow_sets(g, D.n)
        out |= plus | minus
    return frozenset(out)


@lru_cache(maxsize=None)
def shadow_star(D: RookPlacement) -> frozenset[Root]:
    out: set[Root] = set()
    for g in D:
        plus, minus = shadow_star_sets(g, D.n)
        out |= plus | minus
    return frozenset(out)


def shadow_size(D: RookPlacement) -> int:
    return len(shadow(D))


def blocked_set(D: RookPlacement, Dp: RookPlacement) -> frozenset[Root]:
    """Shadow roots whose unit, multiplied by some unit of Dp, lands back in the shadow."""
    S = shadow(D)
    out = set()
    for alpha in S:
        for beta in Dp:
            r = unit_product(alpha, beta)
            if r is not None and r in S:
                out.add(alpha)
                break
    return frozenset(out)


def blocked_count(D: RookPlacement, Dp: RookPlacement) -> int:
    return len(blocked_set(D, Dp))


def placements_compatible(D: RookPlacement, Dp: RookPlacement) -> bool:
    """True when Dp avoids the shadow and starred shadow of D (the character survives)."""
    bad = shadow(D) | shadow_star(D)
    return all(r not in bad for r in Dp)


def torus_blocked_set(D: RookPlacement, h: tuple[int, ...]) -> frozenset[Root]:
    """Shadow roots (i,j) with h_j != 1."""
    return frozenset(r for r in shadow(D) if h[r.j - 1] != 1)


def torus_blocked_count(D: RookPlacement, h: tuple[int, ...]) -> int:
    return len(torus_blocked_set(D, h))


def free_torus_indices(D: RookPlacement) -> tuple[int, ...]:
    """Indices untouched by D; the restricted torus is free exactly there."""
    return tuple(i for i in range(1, D.n + 1) if i not in D.used_indices)


def free_torus_size(D: RookPlacement, q: int) -> int:
    return (q - 1) ** len(free_torus_indices(D))


def in_restricted_torus(h: tuple[int, ...], D: RookPlacement) -> bool:
    return all(h[i - 1] == 1 for i in D.used_indices)
