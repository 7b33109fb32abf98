"""Closed-form supercharacter values and exact character tables.

Values of the unipotent theory are monomials: a power of q times a q-th root
of unity, or zero.  Values of the full-group theory carry an extra torus
character and a sum of q-th roots over the whole torus, divided by the size
of the restricted torus; everything stays in Q(zeta_{q(q-1)}) exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import get_algebra
from .canon import (
    ClassLabelG,
    LabelU,
    canonical_decoration,
    decoration_orbit_size,
    twist_decoration,
)
from .cyclotomic import Cyclotomic
from .errors import DomainError
from .field import PrimeField, mult_char_exponent
from .roots import (
    Root,
    RookPlacement,
    blocked_count,
    decorations,
    free_torus_indices,
    free_torus_size,
    in_restricted_torus,
    placements,
    placements_compatible,
    shadow_size,
    torus_blocked_count,
)


@dataclass(frozen=True)
class CharLabelG:
    """Supercharacter label for the full group: decorated placement plus a
    torus character given by exponents on the free indices."""

    D: RookPlacement
    phi: tuple[int, ...]
    theta: tuple[int, ...]

    def __post_init__(self):
        if len(self.phi) != len(self.D):
            raise DomainError("decoration length must match the placement")
        if len(self.theta) != len(free_torus_indices(self.D)):
            raise DomainError("theta must assign an exponent to each free index")

    def sort_key(self):
        return (len(self.D), self.D.roots, self.phi, self.theta)

    def to_json_dict(self) -> dict:
        return {"D": self.D.to_list(), "phi": list(self.phi), "theta": list(self.theta)}


# ---------------------------------------------------------------------------
# value formulas


def decoration_pairing(
    D: RookPlacement, phi: tuple[int, ...], Dp: RookPlacement, phip: tuple[int, ...], q: int
) -> int:
    """Sum of products of the two decorations over the common rooks, in F_q."""
    vals = dict(zip(Dp.roots, phip))
    s = 0
    for r, v in zip(D.roots, phi):
        if r in vals:
            s += v * vals[r]
    return s % q


def char_value_u(
    D: RookPlacement, phi: tuple[int, ...], Dp: RookPlacement, phip: tuple[int, ...], q: int
) -> Cyclotomic:
    """Value of the unipotent supercharacter (D, phi) on the superclass (Dp, phip)."""
    if not placements_compatible(D, Dp):
        return Cyclotomic.zero()
    m = shadow_size(D) - blocked_count(D, Dp)
    c = decoration_pairing(D, phi, Dp, phip, q)
    return Cyclotomic.root(q, c) * q**m


def torus_char_value(field: PrimeField, D: RookPlacement, theta: tuple[int, ...], h: tuple[int, ...]) -> Cyclotomic:
    """theta evaluated at a restricted-torus element, as a (q-1)-th root of unity."""
    if not in_restricted_torus(h, D):
        raise DomainError("torus element is outside the restricted torus of the placement")
    e = 0
    for k, i in enumerate(free_torus_indices(D)):
        if h[i - 1] != 1:
            e += mult_char_exponent(field, h[i - 1], theta[k])
    return Cyclotomic.root(field.q - 1, e)


def _index_components(edges: list[Root]) -> list[tuple[list[int], list[Root]]]:
    parent: dict[int, int] = {}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for r in edges:
        for v in (r.i, r.j):
            parent.setdefault(v, v)
        parent[find(r.i)] = find(r.j)
    comps: dict[int, tuple[list[int], list[Root]]] = {}
    for v in parent:
        comps.setdefault(find(v), ([], []))[0].append(v)
    for r in edges:
        comps[find(r.i)][1].append(r)
    return [comps[k] for k in sorted(comps)]


def torus_character_sum(
    coeffs: dict[Root, int], n: int, field: PrimeField, method: str = "factored"
) -> Cyclotomic:
    """Sum over the whole torus of zeta_q ** (sum of c_r * t_row / t_col).

    The factored method splits the sum over connected components of the index
    graph of the support and multiplies in (q-1) for every unused index; the
    direct method enumerates the full torus.  Both are exact and must agree.
    """
    q = field.q
    units = range(1, q)
    inv = field._inv
    if any(c % q == 0 for c in coeffs.values()):
        raise DomainError("support coefficients must be nonzero")
    if method == "direct":
        counts = [0] * q
        for t in itertools.product(units, repeat=n):
            e = 0
            for r, c in coeffs.items():
                e += c * t[r.i - 1] * inv[t[r.j - 1]]
            counts[e % q] += 1
        return Cyclotomic.from_root_counts(q, dict(enumerate(counts)))
    if method != "factored":
        raise DomainError(f"unknown method {method!r}")
    out = Cyclotomic.from_rational((q - 1) ** (n - len({v for r in coeffs for v in (r.i, r.j)})))
    for verts, edges in _index_components(list(coeffs)):
        pos = {v: k for k, v in enumerate(verts)}
        counts = [0] * q
        for t in itertools.product(units, repeat=len(verts)):
            e = 0
            for r in edges:
                e += coeffs[r] * t[pos[r.i]] * inv[t[pos[r.j]]]
            counts[e % q] += 1
        out = out * Cyclotomic.from_root_counts(q, dict(enumerate(counts)))
    return out


def char_value_g(a: CharLabelG, b: ClassLabelG, q: int) -> Cyclotomic:
    """Value of the full-group supercharacter a on the superclass b."""
    D, Dp, h = a.D, b.D, b.h
    n = D.n
    if Dp.n != n or len(h) != n:
        raise DomainError("label board sizes disagree")
    field = get_algebra(n, q).field
    if not in_restricted_torus(h, D) or not placements_compatible(D, Dp):
        return Cyclotomic.zero()
    m = shadow_size(D) - blocked_count(D, Dp) - torus_blocked_count(D, h)
    assert m >= 0
    inter = {}
    vals = dict(zip(Dp.roots, b.phi))
    for r, v in zip(D.roots, a.phi):
        if r in vals:
            inter[r] = v * vals[r] % q
    tsum = torus_character_sum(inter, n, field) if inter else Cyclotomic.from_rational((q - 1) ** n)
    theta_h = torus_char_value(field, D, a.theta, h)
    return theta_h * tsum * q**m / free_torus_size(D, q)


# ---------------------------------------------------------------------------
# label enumeration


def labels_u(n: int, q: int) -> list[LabelU]:
    out = [
        LabelU(D, phi)
        for D in placements(n)
        for phi in decorations(D, q)
    ]
    out.sort(key=LabelU.sort_key)
    return out


def canonical_decorations(D: RookPlacement, q: int) -> list[tuple[int, ...]]:
    field = get_algebra(D.n, q).field
    return sorted({canonical_decoration(field, D, phi) for phi in decorations(D, q)})


def char_labels_g(n: int, q: int) -> list[CharLabelG]:
    out = []
    for D in placements(n):
        free = free_torus_indices(D)
        for phi in canonical_decorations(D, q):
            for theta in itertools.product(range(q - 1), repeat=len(free)):
                out.append(CharLabelG(D, phi, theta))
    out.sort(key=CharLabelG.sort_key)
    return out


def class_labels_g(n: int, q: int) -> list[ClassLabelG]:
    out = []
    for D in placements(n):
        free = free_torus_indices(D)
        for phi in canonical_decorations(D, q):
            for hv in itertools.product(range(1, q), repeat=len(free)):
                h = [1] * n
                for i, v in zip(free, hv):
                    h[i - 1] = v
                out.append(ClassLabelG(D, phi, tuple(h)))
    out.sort(key=ClassLabelG.sort_key)
    return out


# ---------------------------------------------------------------------------
# class sizes (two-sided orbit sizes, no enumeration needed)


def class_size_u(label: LabelU, q: int) -> int:
    """Size of the unipotent superclass: q to the dimension of the two-sided span."""
    alg = get_algebra(label.D.n, q)
    return q ** alg.two_sided_span_dim(alg.rook_element(label.D, label.phi))


def class_size_g(label: ClassLabelG, q: int) -> int:
    """Size of the full-group superclass: the two-sided orbit size times the
    number of distinct decoration twists (one unipotent orbit per twist)."""
    alg = get_algebra(label.D.n, q)
    g = alg.mul(alg.torus(label.h), alg.rook_unipotent(label.D, label.phi))
    return decoration_orbit_size(label.D, q) * q ** alg.two_sided_span_dim(g - alg.one())


def decoration_twist_invariant(a: CharLabelG, t: tuple[int, ...], q: int) -> bool:
    """True when twisting the character's decoration leaves every value unchanged."""
    field = get_algebra(a.D.n, q).field
    twisted = CharLabelG(a.D, twist_decoration(field, a.D, a.phi, t), a.theta)
    return all(
        char_value_g(a, b, q) == char_value_g(twisted, b, q)
        for b in class_labels_g(a.D.n, q)
    )


# ---------------------------------------------------------------------------
# table assembly


def _label_str(label) -> str:
    parts = [
        "D=[" + " ".join(repr(r) for r in label.D.roots) + "]",
        "phi=[" + " ".join(str(v) for v in label.phi) + "]",
    ]
    if isinstance(label, ClassLabelG):
        parts.append("h=[" + " ".join(str(v) for v in label.h) + "]")
    elif isinstance(label, CharLabelG):
        parts.append("theta=[" + " ".join(str(v) for v in label.theta) + "]")
    return ";".join(parts)


@dataclass
class CharacterTable:
    group: str
    n: int
    q: int
    rows: list
    cols: list
    values: list[list[Cyclotomic]]
    degrees: list[int]
    class_sizes: list[int]

    def __post_init__(self):
        if len(self.rows) != len(self.cols):
            raise AssertionError("table must be square")

    def value(self, i: int, j: int) -> Cyclotomic:
        return self.values[i][j]

    def to_json_dict(self) -> dict:
        return {
            "group": self.group,
            "n": self.n,
            "q": self.q,
            "rows": [r.to_json_dict() for r in self.rows],
            "cols": [c.to_json_dict() for c in self.cols],
            "degrees": self.degrees,
            "class_sizes": self.class_sizes,
            "values": [[v.to_json_dict() for v in row] for row in self.values],
        }

    def to_csv(self) -> str:
        def fmt(v: Cyclotomic) -> str:
            z = v.to_complex()
            return f"{z.real:.12g}{z.imag:+.12g}j"

        lines = ["char\\class," + ",".join(f'"{_label_str(c)}"' for c in self.cols)]
        for label, row in zip(self.rows, self.values):
            lines.append(f'"{_label_str(label)}",' + ",".join(fmt(v) for v in row))
        return "\n".join(lines) + "\n"


def table_u(n: int, q: int) -> CharacterTable:
    get_algebra(n, q)  # validates n, q
    labels = labels_u(n, q)
    values = [
        [char_value_u(a.D, a.phi, b.D, b.phi, q) for b in labels]
        for a in labels
    ]
    degrees = [q ** shadow_size(a.D) for a in labels]
    sizes = [class_size_u(b, q) for b in labels]
    return CharacterTable("U", n, q, labels, labels, values, degrees, sizes)


def table_g(n: int, q: int) -> CharacterTable:
    get_algebra(n, q)
    rows = char_labels_g(n, q)
    cols = class_labels_g(n, q)
    values = [[char_value_g(a, b, q) for b in cols] for a in rows]
    degrees = [q ** shadow_size(a.D) * (q - 1) ** len(a.D.used_indices) for a in rows]
    sizes = [class_size_g(b, q) for b in cols]
    return CharacterTable("G", n, q, rows, cols, values, degrees, sizes)
