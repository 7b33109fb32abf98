import itertools
import random

import pytest

from rookchar.algebra import get_algebra
from rookchar.canon import (
    ClassLabelG,
    LabelU,
    apply_moves,
    canonical_decoration,
    class_label_g,
    class_label_u,
    decoration_orbit_size,
    decoration_transporter,
    functional_label,
    placement_cycle_count,
    reduce_lower,
    reduce_upper,
    twist_decoration,
)
from rookchar.errors import DomainError
from rookchar.roots import Root, RookPlacement, decorations, placements


def P(n, *roots):
    return RookPlacement(n, [Root(*r) for r in roots])


def upper_group(alg):
    """All upper unitriangular group elements (zero lower part)."""
    zero_lo = (0,) * len(alg.neg)
    out = []
    for up in itertools.product(range(alg.q), repeat=len(alg.pos)):
        out.append(alg.element((1,) * alg.n, up, zero_lo))
    return out


def two_sided_orbit(alg, x, mults):
    """Breadth-first closure of x under left/right multiplication by mults."""
    seen = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for s in frontier:
            for m in mults:
                for t in (m * s, s * m):
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
        frontier = nxt
    return seen


def is_rook_radical(alg, x):
    rows = [r.i for k, r in enumerate(alg.pos) if x.upper[k]] + [
        r.i for k, r in enumerate(alg.neg) if x.lower[k]
    ]
    cols = [r.j for k, r in enumerate(alg.pos) if x.upper[k]] + [
        r.j for k, r in enumerate(alg.neg) if x.lower[k]
    ]
    return len(set(rows)) == len(rows) and len(set(cols)) == len(cols)


# ---------------------------------------------------------------------------
# rook-form reduction of one triangular part


def test_reduce_upper_examples():
    alg = get_algebra(3, 3)
    D, phi, moves = reduce_upper(alg, alg.zero())
    assert len(D) == 0 and moves == []
    x = alg.unit(Root(1, 2)) + alg.unit(Root(1, 3))
    D, phi, moves = reduce_upper(alg, x)
    assert D == P(3, (1, 2)) and phi == (1,)
    assert apply_moves(moves, x) == alg.rook_element(D, phi)


def test_reduce_upper_fixed_points():
    alg = get_algebra(4, 3)
    for D in placements(4):
        if D.negative:
            continue
        for phi in decorations(D, 3):
            x = alg.rook_element(D, phi)
            D2, phi2, moves = reduce_upper(alg, x)
            assert (D2, phi2) == (D, phi) and moves == []


def test_reduce_upper_against_orbit_bruteforce():
    # the two-sided unitriangular orbit of an upper element contains exactly
    # one rook form, and the reduction finds it
    alg = get_algebra(3, 3)
    mults = [g for g in upper_group(alg) if g != alg.one()]
    rng = random.Random(42)
    for _ in range(12):
        x = alg.element([0] * 3, [rng.randrange(3) for _ in alg.pos], [0] * 3)
        orbit = two_sided_orbit(alg, x, mults)
        rooks = {y for y in orbit if is_rook_radical(alg, y)}
        assert len(rooks) == 1
        D, phi, _ = reduce_upper(alg, x)
        assert rooks.pop() == alg.rook_element(D, phi)


def test_reduce_lower_examples():
    alg = get_algebra(3, 3)
    D, phi, moves = reduce_lower(alg, alg.zero())
    assert len(D) == 0 and moves == []
    lam = alg.unit(Root(3, 1)) + alg.unit(Root(3, 2))
    D, phi, moves = reduce_lower(alg, lam)
    assert D == P(3, (3, 1)) and phi == (1,)
    assert apply_moves(moves, lam) == alg.rook_element(D, phi)
    # already in rook form
    D2, phi2, moves2 = reduce_lower(alg, alg.unit(Root(2, 1), 2))
    assert D2 == P(3, (2, 1)) and phi2 == (2,) and moves2 == []


def test_reduce_lower_against_orbit_bruteforce():
    alg = get_algebra(3, 3)
    mults = [g for g in upper_group(alg) if g != alg.one()]
    rng = random.Random(43)
    for _ in range(12):
        lam = alg.element([0] * 3, [0] * 3, [rng.randrange(3) for _ in alg.neg])
        orbit = two_sided_orbit(alg, lam, mults)
        rooks = {y for y in orbit if is_rook_radical(alg, y)}
        assert len(rooks) == 1
        D, phi, _ = reduce_lower(alg, lam)
        assert rooks.pop() == alg.rook_element(D, phi)


def test_reduce_input_validation():
    alg = get_algebra(3, 3)
    with pytest.raises(DomainError):
        reduce_upper(alg, alg.unit(Root(2, 1)))
    with pytest.raises(DomainError):
        reduce_lower(alg, alg.unit(Root(1, 2)))


# ---------------------------------------------------------------------------
# unipotent superclass labels


def test_class_label_u_examples():
    alg = get_algebra(2, 3)
    label, moves = class_label_u(alg, alg.one())
    assert len(label.D) == 0 and moves == []
    u = alg.one() + alg.unit(Root(1, 2), 2) + alg.unit(Root(2, 1))
    label, _ = class_label_u(alg, u)
    assert label == LabelU(P(2, (1, 2), (2, 1)), (2, 1))
    with pytest.raises(DomainError):
        class_label_u(alg, alg.torus((2, 1)))


def test_class_label_u_fixed_points_exhaustive():
    for n, q in [(2, 3), (3, 3)]:
        alg = get_algebra(n, q)
        for D in placements(n):
            for phi in decorations(D, q):
                label, moves = class_label_u(alg, alg.rook_unipotent(D, phi))
                assert label == LabelU(D, phi)
                assert moves == []


def test_class_label_u_orbit_invariance_random():
    rng = random.Random(2024)
    for n in (2, 3, 4):
        alg = get_algebra(n, 3)
        for _ in range(120):
            x = alg.element([0] * n, [rng.randrange(3) for _ in alg.pos], [rng.randrange(3) for _ in alg.neg])
            a = alg.one() + alg.element([0] * n, [rng.randrange(3) for _ in alg.pos], [rng.randrange(3) for _ in alg.neg])
            b = alg.one() + alg.element([0] * n, [rng.randrange(3) for _ in alg.pos], [rng.randrange(3) for _ in alg.neg])
            lhs, _ = class_label_u(alg, alg.one() + a * x * b)
            rhs, _ = class_label_u(alg, alg.one() + x)
            assert lhs == rhs


def test_class_label_u_trace_replay():
    rng = random.Random(77)
    alg = get_algebra(3, 3)
    for _ in range(50):
        x = alg.element([0] * 3, [rng.randrange(3) for _ in alg.pos], [rng.randrange(3) for _ in alg.neg])
        label, moves = class_label_u(alg, alg.one() + x)
        assert apply_moves(moves, x) == alg.rook_element(label.D, label.phi)


# ---------------------------------------------------------------------------
# full-group superclass labels


def test_class_label_g_examples():
    alg = get_algebra(2, 3)
    h = alg.torus((2, 1))
    label, _ = class_label_g(alg, h)
    assert label == ClassLabelG(P(2), (), (2, 1))
    g = h * (alg.one() + alg.unit(Root(1, 2)))
    label, _ = class_label_g(alg, g)
    assert label == ClassLabelG(P(2), (), (2, 1))
    u = alg.one() + alg.unit(Root(1, 2), 2)
    label, _ = class_label_g(alg, u)
    assert label.D == P(2, (1, 2)) and label.h == (1, 1)
    assert label.phi == (1,)  # decoration normalized across the torus orbit
    with pytest.raises(DomainError):
        class_label_g(alg, alg.unit(Root(1, 2)))


def test_class_label_g_matches_u_placement():
    alg = get_algebra(3, 3)
    rng = random.Random(12)
    for _ in range(60):
        x = alg.element([0] * 3, [rng.randrange(3) for _ in alg.pos], [rng.randrange(3) for _ in alg.neg])
        u = alg.one() + x
        lu, _ = class_label_u(alg, u)
        lg, _ = class_label_g(alg, u)
        assert lg.D == lu.D and lg.h == (1, 1, 1)
        assert lg.phi == canonical_decoration(alg.field, lu.D, lu.phi)


def test_class_label_g_orbit_invariance_random():
    rng = random.Random(31337)
    for n in (2, 3, 4):
        alg = get_algebra(n, 3)
        for _ in range(120):
            g = alg.element(
                [rng.randrange(1, 3) for _ in range(n)],
                [rng.randrange(3) for _ in alg.pos],
                [rng.randrange(3) for _ in alg.neg],
            )
            a = alg.one() + alg.element([0] * n, [rng.randrange(3) for _ in alg.pos], [rng.randrange(3) for _ in alg.neg])
            b = alg.one() + alg.element([0] * n, [rng.randrange(3) for _ in alg.pos], [rng.randrange(3) for _ in alg.neg])
            t = alg.torus(tuple(rng.randrange(1, 3) for _ in range(n)))
            moved = alg.one() + t * a * (g - alg.one()) * alg.invert(b) * alg.invert(t)
            lhs, _ = class_label_g(alg, moved)
            rhs, _ = class_label_g(alg, g)
            assert lhs == rhs


def test_class_label_g_trace_replay():
    rng = random.Random(55)
    alg = get_algebra(3, 3)
    for _ in range(40):
        g = alg.element(
            [rng.randrange(1, 3) for _ in range(3)],
            [rng.randrange(3) for _ in alg.pos],
            [rng.randrange(3) for _ in alg.neg],
        )
        label, moves = class_label_g(alg, g)
        final = apply_moves(moves, g - alg.one())
        assert final.radical_part() == alg.rook_element(label.D, label.phi)
        assert final.diag == tuple((d - 1) % 3 for d in g.diag)


# ---------------------------------------------------------------------------
# decoration normalization under the torus twist


def test_canonical_decoration_small():
    alg = get_algebra(2, 3)
    D = P(2, (1, 2))
    assert canonical_decoration(alg.field, D, (2,)) == (1,)
    Dc = P(2, (1, 2), (2, 1))
    # cycle invariant: product of the two values
    assert canonical_decoration(alg.field, Dc, (2, 2)) == (1, 1)  # 2*2 = 1 mod 3
    assert canonical_decoration(alg.field, Dc, (1, 2)) == (1, 2)
    assert placement_cycle_count(Dc) == 1
    assert placement_cycle_count(D) == 0


def test_canonical_decoration_orbit_uniqueness_exhaustive():
    for n, q in [(2, 3), (3, 3), (3, 5)]:
        alg = get_algebra(n, q)
        torus_all = list(itertools.product(range(1, q), repeat=n))
        for D in placements(n):
            for phi in decorations(D, q):
                orbit = {twist_decoration(alg.field, D, phi, t) for t in torus_all}
                canon = {canonical_decoration(alg.field, D, p) for p in orbit}
                assert len(canon) == 1
                rep = canon.pop()
                assert rep in orbit
                assert len(orbit) == decoration_orbit_size(D, q)
                # idempotence
                assert canonical_decoration(alg.field, D, rep) == rep


def test_decoration_transporter():
    for n, q in [(3, 3), (4, 5)]:
        alg = get_algebra(n, q)
        rng = random.Random(n * q)
        for D in placements(n):
            for _ in range(5):
                phi = tuple(rng.randrange(1, q) for _ in D.roots)
                t = decoration_transporter(alg.field, D, phi)
                assert twist_decoration(alg.field, D, phi, t) == canonical_decoration(alg.field, D, phi)


# ---------------------------------------------------------------------------
# functional orbit labels


def test_functional_label_examples():
    alg = get_algebra(2, 3)
    assert functional_label(alg, alg.functional(P(2), ())) == LabelU(P(2), ())
    for D in placements(2):
        for phi in decorations(D, 3):
            lam = alg.functional(D, phi)
            assert functional_label(alg, lam) == LabelU(D, phi)


def test_functional_label_against_orbit_bruteforce():
    from rookchar.algebra import Functional
    from rookchar.oracle import _unipotent_generators

    alg = get_algebra(2, 3)
    gens = _unipotent_generators(alg)
    rng = random.Random(8)
    for _ in range(20):
        m = alg.element([0, 0], [rng.randrange(3)], [rng.randrange(3)])
        orbit = two_sided_orbit(alg, m, list(gens))
        label = functional_label(alg, Functional(m))
        dual = alg.rook_element(label.D.transpose(), tuple(
            dict(zip((r.transpose() for r in label.D.roots), label.phi))[r]
            for r in label.D.transpose().roots
        ))
        assert dual in orbit
        rooks = {y for y in orbit if is_rook_radical(alg, y)}
        assert rooks == {dual}
