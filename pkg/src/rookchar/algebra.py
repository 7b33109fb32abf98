"""The contracted associative algebra behind the degenerate linear group.

Elements carry a diagonal part, a strictly upper part (matrix units E_ij,
i < j) and a strictly lower part (units F_ij, i > j) with coefficients in
F_q.  The lower units multiply to zero among themselves and absorb upper
units from either side, truncated strictly below the diagonal; diagonal
entries scale every unit by its row from the left and by its column from
the right.  The group of invertible elements (all diagonal entries nonzero)
contains the unipotent radical group 1 + radical as a normal subgroup.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .errors import BudgetError, DomainError, ParseError
from .field import PrimeField
from .roots import Root, RookPlacement, unit_product

DEFAULT_BUDGET = 10_000_000


class Elem:
    """An algebra element: diag, upper and lower coefficient tuples."""

    __slots__ = ("alg", "diag", "upper", "lower")

    def __init__(self, alg: "Algebra", diag: tuple[int, ...], upper: tuple[int, ...], lower: tuple[int, ...]):
        self.alg = alg
        self.diag = diag
        self.upper = upper
        self.lower = lower

    def __mul__(self, other: "Elem") -> "Elem":
        return self.alg.mul(self, other)

    def __add__(self, other: "Elem") -> "Elem":
        q = self.alg.q
        return Elem(
            self.alg,
            tuple((a + b) % q for a, b in zip(self.diag, other.diag)),
            tuple((a + b) % q for a, b in zip(self.upper, other.upper)),
            tuple((a + b) % q for a, b in zip(self.lower, other.lower)),
        )

    def __sub__(self, other: "Elem") -> "Elem":
        return self + (-other)

    def __neg__(self) -> "Elem":
        q = self.alg.q
        return Elem(
            self.alg,
            tuple(-a % q for a in self.diag),
            tuple(-a % q for a in self.upper),
            tuple(-a % q for a in self.lower),
        )

    def scale(self, c: int) -> "Elem":
        q = self.alg.q
        c %= q
        return Elem(
            self.alg,
            tuple(a * c % q for a in self.diag),
            tuple(a * c % q for a in self.upper),
            tuple(a * c % q for a in self.lower),
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Elem)
            and other.alg is self.alg
            and other.diag == self.diag
            and other.upper == self.upper
            and other.lower == self.lower
        )

    def __hash__(self) -> int:
        return hash((self.diag, self.upper, self.lower))

    # -- structural predicates -------------------------------------------------

    @property
    def is_radical(self) -> bool:
        return not any(self.diag)

    @property
    def is_unipotent(self) -> bool:
        return all(d == 1 for d in self.diag)

    @property
    def is_invertible(self) -> bool:
        return all(self.diag)

    @property
    def in_borel(self) -> bool:
        return not any(self.lower)

    @property
    def in_torus(self) -> bool:
        return not any(self.upper) and not any(self.lower)

    def diag_part(self) -> "Elem":
        z = (0,) * len(self.upper)
        zl = (0,) * len(self.lower)
        return Elem(self.alg, self.diag, z, zl)

    def radical_part(self) -> "Elem":
        return Elem(self.alg, (0,) * self.alg.n, self.upper, self.lower)

    def coeff(self, r: Root) -> int:
        if r.positive:
            return self.upper[self.alg.pos_index[r]]
        return self.lower[self.alg.neg_index[r]]

    def radical_vector(self) -> tuple[int, ...]:
        return self.upper + self.lower

    def __repr__(self) -> str:
        return f"Elem({format_element(self)!r})"


@lru_cache(maxsize=None)
def get_algebra(n: int, q: int) -> "Algebra":
    return Algebra(n, q)


class Algebra:
    """Structure constants and element factories for board size n over F_q."""

    def __init__(self, n: int, q: int):
        if n < 1:
            raise DomainError("n must be >= 1")
        self.field = PrimeField(q)
        self.n = n
        self.q = q
        self.pos = tuple(Root(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
        self.neg = tuple(Root(i, j) for i in range(2, n + 1) for j in range(1, i))
        self.pos_index = {r: k for k, r in enumerate(self.pos)}
        self.neg_index = {r: k for k, r in enumerate(self.neg)}
        self.transpose_of_pos = tuple(self.neg_index[r.transpose()] for r in self.pos)
        ee, ef, fe = [], [], []
        for ai, a in enumerate(self.pos):
            for bi, b in enumerate(self.pos):
                r = unit_product(a, b)
                if r is not None:
                    ee.append((ai, bi, self.pos_index[r]))
            for bi, b in enumerate(self.neg):
                r = unit_product(a, b)
                if r is not None:
                    ef.append((ai, bi, self.neg_index[r]))
        for ai, a in enumerate(self.neg):
            for bi, b in enumerate(self.pos):
                r = unit_product(a, b)
                if r is not None:
                    fe.append((ai, bi, self.neg_index[r]))
        self._ee = tuple(ee)
        self._ef = tuple(ef)
        self._fe = tuple(fe)
        self._zero_up = (0,) * len(self.pos)
        self._zero_lo = (0,) * len(self.neg)

    def __repr__(self) -> str:
        return f"Algebra(n={self.n}, q={self.q})"

    # -- factories -------------------------------------------------------------

    def zero(self) -> Elem:
        return Elem(self, (0,) * self.n, self._zero_up, self._zero_lo)

    def one(self) -> Elem:
        return Elem(self, (1,) * self.n, self._zero_up, self._zero_lo)

    def element(self, diag, upper, lower) -> Elem:
        q = self.q
        diag = tuple(d % q for d in diag)
        upper = tuple(c % q for c in upper)
        lower = tuple(c % q for c in lower)
        if len(diag) != self.n or len(upper) != len(self.pos) or len(lower) != len(self.neg):
            raise DomainError("coefficient arrays have the wrong length")
        return Elem(self, diag, upper, lower)

    def unit(self, r: Root, c: int = 1) -> Elem:
        """c times the basis unit attached to the root r (sign decides E vs F)."""
        c %= self.q
        if r.positive:
            up = list(self._zero_up)
            up[self.pos_index[r]] = c
            return Elem(self, (0,) * self.n, tuple(up), self._zero_lo)
        lo = list(self._zero_lo)
        lo[self.neg_index[r]] = c
        return Elem(self, (0,) * self.n, self._zero_up, tuple(lo))

    def torus(self, hs: tuple[int, ...]) -> Elem:
        if len(hs) != self.n or not all(h % self.q for h in hs):
            raise DomainError("torus entries must be nonzero, one per index")
        return Elem(self, tuple(h % self.q for h in hs), self._zero_up, self._zero_lo)

    def rook_element(self, D: RookPlacement, phi: tuple[int, ...]) -> Elem:
        """Radical element with coefficient phi[k] on the unit of D.roots[k]."""
        self._check_decoration(D, phi)
        up = list(self._zero_up)
        lo = list(self._zero_lo)
        for r, v in zip(D.roots, phi):
            if r.positive:
                up[self.pos_index[r]] = v % self.q
            else:
                lo[self.neg_index[r]] = v % self.q
        return Elem(self, (0,) * self.n, tuple(up), tuple(lo))

    def rook_unipotent(self, D: RookPlacement, phi: tuple[int, ...]) -> Elem:
        return self.one() + self.rook_element(D, phi)

    def _check_decoration(self, D: RookPlacement, phi: tuple[int, ...]) -> None:
        if D.n != self.n:
            raise DomainError("placement board size mismatch")
        if len(phi) != len(D) or any(v % self.q == 0 for v in phi):
            raise DomainError("decoration must assign a nonzero value to each rook")

    # -- ring operations ---------------------------------------------------------

    def mul(self, a: Elem, b: Elem) -> Elem:
        if a.alg is not self or b.alg is not self:
            raise DomainError("elements from different algebras")
        q = self.q
        ad, au, al = a.diag, a.upper, a.lower
        bd, bu, bl = b.diag, b.upper, b.lower
        diag = tuple(x * y % q for x, y in zip(ad, bd))
        up = [0] * len(self.pos)
        for k, (i, j) in enumerate(self.pos):
            up[k] = ad[i - 1] * bu[k] + au[k] * bd[j - 1]
        lo = [0] * len(self.neg)
        for k, (i, j) in enumerate(self.neg):
            lo[k] = ad[i - 1] * bl[k] + al[k] * bd[j - 1]
        for ai, bi, ri in self._ee:
            up[ri] += au[ai] * bu[bi]
        for ai, bi, ri in self._ef:
            lo[ri] += au[ai] * bl[bi]
        for ai, bi, ri in self._fe:
            lo[ri] += al[ai] * bu[bi]
        return Elem(self, diag, tuple(c % q for c in up), tuple(c % q for c in lo))

    def invert(self, g: Elem) -> Elem:
        """Inverse of an invertible element: diagonal inverses, then the finite Neumann series."""
        if not g.is_invertible:
            raise DomainError("element is not invertible (zero diagonal entry)")
        dinv = Elem(self, tuple(self.field.inv(d) for d in g.diag), self._zero_up, self._zero_lo)
        z = self.mul(dinv, g.radical_part())
        acc = self.one()
        term = self.one()
        for _ in range(2 * self.n + 2):
            term = self.mul(term, z).scale(-1)
            if not any(term.upper) and not any(term.lower):
                break
            acc = acc + term
        else:
            raise AssertionError("Neumann series failed to terminate")
        return self.mul(acc, dinv)

    def conjugate(self, g: Elem, x: Elem) -> Elem:
        return self.mul(self.mul(g, x), self.invert(g))

    def pairing(self, x1: Elem, x2: Elem) -> int:
        """The symmetric bilinear form on the radical: upper units pair with their transposes."""
        if not (x1.is_radical and x2.is_radical):
            raise DomainError("the form is defined on the radical only")
        s = 0
        for k, tk in enumerate(self.transpose_of_pos):
            s += x1.upper[k] * x2.lower[tk] + x2.upper[k] * x1.lower[tk]
        return s % self.q

    def functional(self, D: RookPlacement, phi: tuple[int, ...]) -> "Functional":
        """The linear functional on the radical indexed by (D, phi)."""
        self._check_decoration(D, phi)
        dual = {r.transpose(): v for r, v in zip(D.roots, phi)}
        Dt = D.transpose()
        return Functional(self.rook_element(Dt, tuple(dual[r] for r in Dt.roots)))

    def two_sided_span_dim(self, z: Elem) -> int:
        """dim over F_q of (radical * z + z * radical), read off the radical coordinates."""
        vecs = []
        for r in self.pos + self.neg:
            u = self.unit(r)
            vecs.append(self.mul(u, z).radical_vector())
            vecs.append(self.mul(z, u).radical_vector())
        return _rank_mod(vecs, self.q)

    # -- enumeration -------------------------------------------------------------

    def unipotent_order(self) -> int:
        return self.q ** (self.n * (self.n - 1))

    def group_order(self) -> int:
        return (self.q - 1) ** self.n * self.unipotent_order()

    def enumerate_unipotent(self, budget: Optional[int] = DEFAULT_BUDGET) -> Iterator[Elem]:
        if budget is not None and self.unipotent_order() > budget:
            raise BudgetError(f"|U| = {self.unipotent_order()} exceeds budget {budget}")
        ones = (1,) * self.n
        for up in itertools.product(range(self.q), repeat=len(self.pos)):
            for lo in itertools.product(range(self.q), repeat=len(self.neg)):
                yield Elem(self, ones, up, lo)

    def enumerate_group(self, budget: Optional[int] = DEFAULT_BUDGET) -> Iterator[Elem]:
        if budget is not None and self.group_order() > budget:
            raise BudgetError(f"|G| = {self.group_order()} exceeds budget {budget}")
        for diag in itertools.product(range(1, self.q), repeat=self.n):
            for up in itertools.product(range(self.q), repeat=len(self.pos)):
                for lo in itertools.product(range(self.q), repeat=len(self.neg)):
                    yield Elem(self, diag, up, lo)

    def enumerate_torus(self) -> Iterator[Elem]:
        for diag in itertools.product(range(1, self.q), repeat=self.n):
            yield Elem(self, diag, self._zero_up, self._zero_lo)


def _rank_mod(vectors: list[tuple[int, ...]], q: int) -> int:
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return 0
    width = len(rows[0])
    rank = 0
    col = 0
    while col < width and rank < len(rows):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % q), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], q - 2, q)
        rows[rank] = [x * inv % q for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % q:
                c = rows[r][col]
                rows[r] = [(x - c * y) % q for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


@dataclass(frozen=True)
class Functional:
    """A linear functional on the radical, held through its dual element."""

    dual: Elem

    def evaluate(self, y: Elem) -> int:
        return self.dual.alg.pairing(self.dual, y)

    def act(self, t: Elem, side: str) -> "Functional":
        """Dual action of a group/borel element; right acts on the argument from
        the left, which multiplies the dual element on the right, and vice versa."""
        if side == "right":
            return Functional(self.dual.alg.mul(self.dual, t))
        if side == "left":
            return Functional(self.dual.alg.mul(t, self.dual))
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")


# ---------------------------------------------------------------------------
# element text format: `E i j = v; F i j = v; H = h1,...,hn`

_TERM_RE = re.compile(r"\s*([EF])\s+(\d+)\s+(\d+)\s*=\s*(-?\d+)\s*$")
_DIAG_RE = re.compile(r"\s*H\s*=\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*$")


def format_element(x: Elem) -> str:
    alg = x.alg
    parts = []
    for k, r in enumerate(alg.pos):
        if x.upper[k]:
            parts.append(f"E {r.i} {r.j} = {x.upper[k]}")
    for k, r in enumerate(alg.neg):
        if x.lower[k]:
            parts.append(f"F {r.i} {r.j} = {x.lower[k]}")
    if any(d != 1 for d in x.diag):
        parts.append("H = " + ",".join(str(d) for d in x.diag))
    return "; ".join(parts)


def parse_element(alg: Algebra, text: str) -> Elem:
    """Parse the text format; omitted units are zero, omitted H is the identity."""
    up = [0] * len(alg.pos)
    lo = [0] * len(alg.neg)
    diag: Optional[list[int]] = None
    seen: set[Root] = set()
    pos = 0
    for chunk in text.split(";"):
        if not chunk.strip():
            pos += len(chunk) + 1
            continue
        m = _TERM_RE.match(chunk)
        if m:
            kind, si, sj, sv = m.groups()
            i, j, v = int(si), int(sj), int(sv)
            if not (1 <= i <= alg.n and 1 <= j <= alg.n) or i == j:
                raise ParseError(f"({i},{j}) is not a root of the size-{alg.n} board", pos)
            if kind == "E" and not i < j:
                raise ParseError(f"E {i} {j} must have i < j", pos)
            if kind == "F" and not i > j:
                raise ParseError(f"F {i} {j} must have i > j", pos)
            r = Root(i, j)
            if r in seen:
                raise ParseError(f"duplicate term for {r}", pos)
            seen.add(r)
            if kind == "E":
                up[alg.pos_index[r]] = v % alg.q
            else:
                lo[alg.neg_index[r]] = v % alg.q
            pos += len(chunk) + 1
            continue
        m = _DIAG_RE.match(chunk)
        if m:
            if diag is not None:
                raise ParseError("duplicate H terms", pos)
            diag = [int(s) % alg.q for s in m.group(1).split(",")]
            if len(diag) != alg.n:
                raise ParseError(f"H needs exactly {alg.n} entries", pos)
            pos += len(chunk) + 1
            continue
        raise ParseError(f"unrecognized term {chunk.strip()!r}", pos)
    if diag is None:
        diag = [1] * alg.n
    return Elem(alg, tuple(diag), tuple(up), tuple(lo))
