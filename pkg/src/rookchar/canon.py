"""Canonical labels for two-sided orbits: rook-form reduction with audit traces.

Every reduction is performed by honest group multiplications on the element,
and the applied multipliers are recorded; replaying the trace on the input
reproduces the canonical element exactly.  The pivot rule (leftmost column,
bottom-most entry, clear upward then rightward) is one fixed choice among
the valid eliminations; orbit uniqueness of the rook form makes any
terminating rule land on the same representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import Algebra, Elem
from .errors import DomainError
from .field import PrimeField
from .roots import Root, RookPlacement, in_restricted_torus

Move = tuple[str, Elem]  # ("L"|"R"|"C", multiplier)


@dataclass(frozen=True)
class LabelU:
    """Superclass / supercharacter label for the unipotent group: a decorated placement."""

    D: RookPlacement
    phi: tuple[int, ...]

    def __post_init__(self):
        if len(self.phi) != len(self.D):
            raise DomainError("decoration length must match the placement")

    def sort_key(self):
        return (len(self.D), self.D.roots, self.phi)

    def to_json_dict(self) -> dict:
        return {"D": self.D.to_list(), "phi": list(self.phi)}


@dataclass(frozen=True)
class ClassLabelG:
    """Superclass label for the full group: decorated placement plus a torus part
    with unit entries on every index the placement touches."""

    D: RookPlacement
    phi: tuple[int, ...]
    h: tuple[int, ...]

    def __post_init__(self):
        if len(self.phi) != len(self.D):
            raise DomainError("decoration length must match the placement")
        if len(self.h) != self.D.n or not in_restricted_torus(self.h, self.D):
            raise DomainError("torus part must be trivial on indices used by the placement")

    def sort_key(self):
        return (len(self.D), self.D.roots, self.phi, self.h)

    def to_json_dict(self) -> dict:
        return {"D": self.D.to_list(), "phi": list(self.phi), "h": list(self.h)}


def apply_moves(moves: list[Move], w: Elem) -> Elem:
    alg = w.alg
    for side, m in moves:
        if side == "L":
            w = alg.mul(m, w)
        elif side == "R":
            w = alg.mul(w, m)
        elif side == "C":
            w = alg.mul(alg.mul(m, w), alg.invert(m))
        else:
            raise DomainError(f"unknown move side {side!r}")
    return w


def _move_left(alg: Algebra, a: Elem, w: Elem, moves: list[Move], keep_upper: bool = False) -> Elem:
    w2 = alg.mul(a, w)
    assert w2.diag == w.diag, "reduction move disturbed the diagonal"
    if keep_upper:
        assert w2.upper == w.upper, "lower reduction move disturbed the upper part"
    moves.append(("L", a))
    return w2


def _move_right(alg: Algebra, w: Elem, b: Elem, moves: list[Move], keep_upper: bool = False) -> Elem:
    w2 = alg.mul(w, b)
    assert w2.diag == w.diag, "reduction move disturbed the diagonal"
    if keep_upper:
        assert w2.upper == w.upper, "lower reduction move disturbed the upper part"
    moves.append(("R", b))
    return w2


def _reduce_upper_core(alg: Algebra, w: Elem, moves: list[Move]) -> Elem:
    """Rook-form reduction of the upper part; the lower part is dragged along."""
    n, fld = alg.n, alg.field
    consumed_rows: set[int] = set()
    for c in range(2, n + 1):
        pivot_i = 0
        for i in range(1, c):
            if w.coeff(Root(i, c)):
                pivot_i = i
        if not pivot_i:
            continue
        assert pivot_i not in consumed_rows
        for i in range(1, pivot_i):
            v = w.coeff(Root(i, c))
            if v:
                coef = fld.neg(fld.div(v, w.coeff(Root(pivot_i, c))))
                w = _move_left(alg, alg.one() + alg.unit(Root(i, pivot_i), coef), w, moves)
        p = w.coeff(Root(pivot_i, c))
        for l in range(c + 1, n + 1):
            v = w.coeff(Root(pivot_i, l))
            if v:
                coef = fld.neg(fld.div(v, p))
                w = _move_right(alg, w, alg.one() + alg.unit(Root(c, l), coef), moves)
        consumed_rows.add(pivot_i)
    return w


def _reduce_lower_core(alg: Algebra, w: Elem, moves: list[Move]) -> Elem:
    """Rook-form reduction of the lower part; must leave the upper part alone,
    which holds whenever the lower support avoids the rows and columns of the
    upper rooks (guaranteed by the forbidden-position clearing pass)."""
    n, fld = alg.n, alg.field
    for c in range(1, n):
        pivot_i = 0
        for i in range(c + 1, n + 1):
            if w.coeff(Root(i, c)):
                pivot_i = i
        if not pivot_i:
            continue
        for k in range(c + 1, pivot_i):
            v = w.coeff(Root(k, c))
            if v:
                coef = fld.neg(fld.div(v, w.coeff(Root(pivot_i, c))))
                w = _move_left(alg, alg.one() + alg.unit(Root(k, pivot_i), coef), w, moves, keep_upper=True)
        p = w.coeff(Root(pivot_i, c))
        for l in range(c + 1, pivot_i):
            v = w.coeff(Root(pivot_i, l))
            if v:
                coef = fld.neg(fld.div(v, p))
                w = _move_right(alg, w, alg.one() + alg.unit(Root(c, l), coef), moves, keep_upper=True)
    return w


def _read_rook_upper(alg: Algebra, w: Elem) -> tuple[RookPlacement, tuple[int, ...]]:
    pairs = [(r, w.upper[k]) for k, r in enumerate(alg.pos) if w.upper[k]]
    D = RookPlacement(alg.n, [r for r, _ in pairs])
    vals = dict(pairs)
    return D, tuple(vals[r] for r in D.roots)


def _read_rook_lower(alg: Algebra, w: Elem) -> tuple[RookPlacement, tuple[int, ...]]:
    pairs = [(r, w.lower[k]) for k, r in enumerate(alg.neg) if w.lower[k]]
    D = RookPlacement(alg.n, [r for r, _ in pairs])
    vals = dict(pairs)
    return D, tuple(vals[r] for r in D.roots)


def _clear_forbidden(alg: Algebra, w: Elem, d_plus: RookPlacement, moves: list[Move]) -> tuple[Elem, bool]:
    """Remove lower entries in the rows, then the columns, of the upper rooks.

    A lower entry (k, m) in a rook row k dies under right multiplication by
    1 + c F(j', m) through the rook (k, j'); one in a rook column m dies under
    left multiplication by 1 + c F(k, i') through the rook (i', m).  Each move
    changes exactly that one coefficient, so the rows-then-columns order never
    reintroduces anything.
    """
    fld = alg.field
    changed = False
    for r in alg.neg:
        rook = d_plus.root_in_row(r.i)
        if rook is None:
            continue
        v = w.coeff(r)
        if v:
            coef = fld.neg(fld.div(v, w.coeff(rook)))
            w = _move_right(alg, w, alg.one() + alg.unit(Root(rook.j, r.j), coef), moves)
            changed = True
    for r in alg.neg:
        rook = d_plus.root_in_col(r.j)
        if rook is None:
            continue
        v = w.coeff(r)
        if v:
            coef = fld.neg(fld.div(v, w.coeff(rook)))
            w = _move_left(alg, alg.one() + alg.unit(Root(r.i, rook.i), coef), w, moves)
            changed = True
    return w, changed


def _two_sided_rook_label(alg: Algebra, w: Elem, moves: list[Move]) -> tuple[LabelU, Elem]:
    """Reduce the radical part of w to its unique decorated rook form under the
    two-sided unipotent action, in four phases: upper reduction, clearing of
    lower entries in rook rows/columns, lower reduction, and a re-clearing
    sweep that certifies stability."""
    w = _reduce_upper_core(alg, w, moves)
    d_plus, _ = _read_rook_upper(alg, w)
    w, _ = _clear_forbidden(alg, w, d_plus, moves)
    for _ in range(alg.n + 2):
        w = _reduce_lower_core(alg, w, moves)
        w, changed = _clear_forbidden(alg, w, d_plus, moves)
        if not changed:
            break
    else:
        raise AssertionError("lower reduction failed to stabilize")
    d_plus, phi_plus = _read_rook_upper(alg, w)
    d_minus, phi_minus = _read_rook_lower(alg, w)
    assert all(r.i not in d_plus.rows and r.j not in d_plus.cols for r in d_minus)
    vals = dict(zip(d_plus.roots, phi_plus)) | dict(zip(d_minus.roots, phi_minus))
    D = RookPlacement(alg.n, d_plus.roots + d_minus.roots)
    return LabelU(D, tuple(vals[r] for r in D.roots)), w


def reduce_upper(alg: Algebra, x: Elem) -> tuple[RookPlacement, tuple[int, ...], list[Move]]:
    """Rook form of a strictly upper element under the two-sided unitriangular action."""
    if not x.is_radical or any(x.lower):
        raise DomainError("input must be strictly upper")
    moves: list[Move] = []
    w = _reduce_upper_core(alg, x, moves)
    assert apply_moves(moves, x) == w
    D, phi = _read_rook_upper(alg, w)
    return D, phi, moves


def reduce_lower(alg: Algebra, lam: Elem) -> tuple[RookPlacement, tuple[int, ...], list[Move]]:
    """Rook form of a strictly lower element under the two-sided unitriangular action."""
    if not lam.is_radical or any(lam.upper):
        raise DomainError("input must be strictly lower")
    moves: list[Move] = []
    w = _reduce_lower_core(alg, lam, moves)
    assert apply_moves(moves, lam) == w
    D, phi = _read_rook_lower(alg, w)
    return D, phi, moves


def class_label_u(alg: Algebra, u: Elem) -> tuple[LabelU, list[Move]]:
    """Canonical label of the superclass of a unipotent group element."""
    if not u.is_unipotent:
        raise DomainError("element is not in the unipotent group")
    x = u - alg.one()
    moves: list[Move] = []
    label, w = _two_sided_rook_label(alg, x, moves)
    assert apply_moves(moves, x) == w == alg.rook_element(label.D, label.phi)
    return label, moves


def _unit_depth(r: Root, n: int) -> int:
    return r.j - r.i if r.positive else n - r.i + r.j


def class_label_g(alg: Algebra, g: Elem) -> tuple[ClassLabelG, list[Move]]:
    """Canonical label of the superclass of an invertible element.

    The diagonal is an invariant of the action.  Units whose row or column
    carries a non-unit diagonal entry die under one-sided affine moves whose
    corrections fall strictly deeper in the radical filtration; the surviving
    sub-board, where the diagonal acts as the identity, is reduced exactly as
    in the unipotent case; finally the decoration is normalized across its
    torus orbit by one conjugation.
    """
    if not g.is_invertible:
        raise DomainError("element is not invertible")
    h = g.diag
    fld = alg.field
    moves: list[Move] = []
    w = g - alg.one()
    for _ in range(2 * alg.n + 2):
        bad = [r for r in sorted(alg.pos + alg.neg, key=lambda r: (_unit_depth(r, alg.n), r))
               if w.coeff(r) and (h[r.i - 1] != 1 or h[r.j - 1] != 1)]
        if not bad:
            break
        for r in bad:
            v = w.coeff(r)
            if not v:
                continue
            if h[r.j - 1] != 1:
                y = alg.unit(r, fld.neg(fld.div(v, (h[r.j - 1] - 1) % alg.q)))
                w = _move_left(alg, alg.one() + y, w, moves)
            else:
                y = alg.unit(r, fld.neg(fld.div(v, (h[r.i - 1] - 1) % alg.q)))
                w = _move_right(alg, w, alg.one() + y, moves)
    else:
        raise AssertionError("diagonal clearing failed to stabilize")
    label, w = _two_sided_rook_label(alg, w, moves)
    phi_can = canonical_decoration(alg.field, label.D, label.phi)
    if phi_can != label.phi:
        t = alg.torus(decoration_transporter(alg.field, label.D, label.phi))
        w = alg.mul(alg.mul(t, w), alg.invert(t))
        moves.append(("C", t))
    g_label = ClassLabelG(label.D, phi_can, h)
    assert apply_moves(moves, g - alg.one()) == w
    assert w.radical_part() == alg.rook_element(g_label.D, g_label.phi)
    return g_label, moves


def functional_label(alg: Algebra, lam) -> LabelU:
    """Label of the two-sided orbit of a functional on the radical.

    The dual element transforms by plain multiplication under both actions,
    so its rook label transposes back to the functional's label.
    """
    moves: list[Move] = []
    label, _ = _two_sided_rook_label(alg, lam.dual, moves)
    vals = {r.transpose(): v for r, v in zip(label.D.roots, label.phi)}
    Dt = label.D.transpose()
    return LabelU(Dt, tuple(vals[r] for r in Dt.roots))


# ---------------------------------------------------------------------------
# torus action on decorations


def twist_decoration(field: PrimeField, D: RookPlacement, phi: tuple[int, ...], t: tuple[int, ...]) -> tuple[int, ...]:
    """The torus twist: the value on (i, j) is scaled by t_i / t_j."""
    return tuple(
        t[r.i - 1] * v % field.q * field.inv(t[r.j - 1]) % field.q
        for r, v in zip(D.roots, phi)
    )


@lru_cache(maxsize=None)
def _components(D: RookPlacement) -> tuple[tuple[str, tuple[Root, ...]], ...]:
    """Connected components of the placement as directed walks.

    Each index is the row of at most one rook and the column of at most one,
    so components are directed paths or directed cycles.
    """
    row_map = {r.i: r for r in D}
    col_map = {r.j: r for r in D}
    visited: set[Root] = set()
    comps: list[tuple[str, tuple[Root, ...]]] = []
    for r in D.roots:
        if r in visited or r.i in col_map:
            continue
        walk = [r]
        visited.add(r)
        cur = r
        while cur.j in row_map:
            cur = row_map[cur.j]
            walk.append(cur)
            visited.add(cur)
        comps.append(("path", tuple(walk)))
    for r in D.roots:
        if r in visited:
            continue
        walk = [r]
        visited.add(r)
        cur = row_map[r.j]
        while cur != r:
            walk.append(cur)
            visited.add(cur)
            cur = row_map[cur.j]
        comps.append(("cycle", tuple(walk)))
    return tuple(comps)


def placement_cycle_count(D: RookPlacement) -> int:
    return sum(1 for kind, _ in _components(D) if kind == "cycle")


def canonical_decoration(field: PrimeField, D: RookPlacement, phi: tuple[int, ...]) -> tuple[int, ...]:
    """Orbit representative of a decoration under the torus twist: ones along
    paths; on each cycle, ones except the lexicographically last rook, which
    carries the cycle product (the orbit invariant)."""
    if len(phi) != len(D):
        raise DomainError("decoration length must match the placement")
    values = dict(zip(D.roots, phi))
    out = dict(values)
    for kind, walk in _components(D):
        for e in walk:
            out[e] = 1
        if kind == "cycle":
            prod = 1
            for e in walk:
                prod = prod * values[e] % field.q
            out[max(walk)] = prod
    return tuple(out[r] for r in D.roots)


def decoration_orbit_size(D: RookPlacement, q: int) -> int:
    return (q - 1) ** (len(D) - placement_cycle_count(D))


def decoration_transporter(field: PrimeField, D: RookPlacement, phi: tuple[int, ...]) -> tuple[int, ...]:
    """A torus element whose twist carries phi to its canonical representative."""
    values = dict(zip(D.roots, phi))
    t = [1] * D.n
    for kind, walk in _components(D):
        if kind == "cycle":
            pos = walk.index(max(walk))
            walk = walk[pos + 1:] + walk[: pos + 1]
        t[walk[0].i - 1] = 1
        for e in walk if kind == "path" else walk[:-1]:
            t[e.j - 1] = t[e.i - 1] * values[e] % field.q
    return tuple(t)
