import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from rookchar.algebra import format_element, get_algebra, parse_element
from rookchar.errors import BudgetError, DomainError, ParseError
from rookchar.roots import Root, RookPlacement


def P(n, *roots):
    return RookPlacement(n, [Root(*r) for r in roots])


def rand_radical(alg, rng):
    return alg.element(
        [0] * alg.n,
        [rng.randrange(alg.q) for _ in alg.pos],
        [rng.randrange(alg.q) for _ in alg.neg],
    )


def rand_elem(alg, rng, invertible=False):
    lo = 1 if invertible else 0
    return alg.element(
        [rng.randrange(lo, alg.q) for _ in range(alg.n)],
        [rng.randrange(alg.q) for _ in alg.pos],
        [rng.randrange(alg.q) for _ in alg.neg],
    )


def test_structure_relation_examples():
    alg = get_algebra(3, 3)
    E23 = alg.unit(Root(2, 3))
    E12 = alg.unit(Root(1, 2))
    E13 = alg.unit(Root(1, 3))
    F31 = alg.unit(Root(3, 1))
    F32 = alg.unit(Root(3, 2))
    F21 = alg.unit(Root(2, 1))
    assert E23 * F31 == F21
    assert F31 * E12 == F32
    assert E12 * E23 == E13
    assert E13 * F32 == alg.zero()  # row 1 is not below column 2
    assert F31 * F21 == alg.zero()  # lower units multiply to zero
    assert F21 * E13 == alg.zero()  # indices do not chain
    assert E12 * F21 == alg.zero()  # would land on the diagonal


def test_diagonal_scaling():
    alg = get_algebra(3, 5)
    t = alg.torus((2, 3, 4))
    E12 = alg.unit(Root(1, 2))
    F31 = alg.unit(Root(3, 1))
    assert t * E12 == alg.unit(Root(1, 2), 2)
    assert E12 * t == alg.unit(Root(1, 2), 3)
    assert t * F31 == alg.unit(Root(3, 1), 4)
    assert F31 * t == alg.unit(Root(3, 1), 2)


def test_associativity_bulk():
    rng = random.Random(20250810)
    for n, q in [(2, 3), (3, 3), (3, 5), (4, 3), (5, 3)]:
        alg = get_algebra(n, q)
        rounds = 2500 if n <= 4 else 400
        for _ in range(rounds):
            a, b, c = (rand_elem(alg, rng) for _ in range(3))
            assert (a * b) * c == a * (b * c)


def test_radical_is_two_sided_ideal():
    rng = random.Random(7)
    alg = get_algebra(4, 3)
    for _ in range(300):
        a = rand_elem(alg, rng)
        x = rand_radical(alg, rng)
        assert (a * x).is_radical and (x * a).is_radical


def test_form_examples():
    alg = get_algebra(3, 5)
    E12 = alg.unit(Root(1, 2))
    F21 = alg.unit(Root(2, 1))
    F31 = alg.unit(Root(3, 1))
    assert alg.pairing(E12, F21) == 1
    assert alg.pairing(E12, F31) == 0
    x = E12 + F21
    assert alg.pairing(x, x) == 2
    with pytest.raises(DomainError):
        alg.pairing(alg.one(), E12)


def test_form_gram_matrix_is_permutation():
    alg = get_algebra(4, 3)
    units = [alg.unit(r) for r in alg.pos + alg.neg]
    gram = [[alg.pairing(u, v) for v in units] for u in units]
    for row in gram:
        assert sorted(row) == [0] * (len(units) - 1) + [1]
    for col in zip(*gram):
        assert sorted(col) == [0] * (len(units) - 1) + [1]


def test_form_compatibility_with_multiplication():
    # (g x1, x2) == (x1, x2 g) for invertible g and radical x1, x2
    rng = random.Random(99)
    for n, q in [(2, 3), (3, 3), (4, 3), (3, 5)]:
        alg = get_algebra(n, q)
        for _ in range(200):
            g = rand_elem(alg, rng, invertible=True)
            x1, x2 = rand_radical(alg, rng), rand_radical(alg, rng)
            assert alg.pairing(g * x1, x2) == alg.pairing(x1, x2 * g)


def test_torus_covariance_of_rook_elements():
    from rookchar.canon import twist_decoration

    rng = random.Random(5)
    for n, q in [(3, 3), (4, 5)]:
        alg = get_algebra(n, q)
        for D in [P(n, (1, 2)), P(n, (2, 1), (1, 3)), P(n, (1, 2), (2, 1))]:
            for _ in range(20):
                phi = tuple(rng.randrange(1, q) for _ in D.roots)
                t = tuple(rng.randrange(1, q) for _ in range(n))
                telem = alg.torus(t)
                lhs = telem * alg.rook_element(D, phi) * alg.invert(telem)
                assert lhs == alg.rook_element(D, twist_decoration(alg.field, D, phi, t))


def test_inversion_examples():
    alg = get_algebra(2, 3)
    E12 = alg.unit(Root(1, 2))
    F21 = alg.unit(Root(2, 1))
    assert alg.invert(alg.one() + E12) == alg.one() - E12
    assert alg.invert(alg.one() + F21) == alg.one() - F21
    h = alg.torus((2, 1))
    assert alg.invert(h) == h
    with pytest.raises(DomainError):
        alg.invert(E12)


def test_inversion_random():
    rng = random.Random(11)
    for n, q in [(3, 3), (4, 3), (3, 5)]:
        alg = get_algebra(n, q)
        for _ in range(100):
            g = rand_elem(alg, rng, invertible=True)
            assert g * alg.invert(g) == alg.one()
            assert alg.invert(g) * g == alg.one()


def test_unipotent_group_axioms_exhaustive_n2_q3():
    alg = get_algebra(2, 3)
    elems = list(alg.enumerate_unipotent())
    assert len(elems) == 9
    for a in elems:
        assert alg.invert(a).is_unipotent
        for b in elems:
            assert (a * b).is_unipotent
    assert alg.one() in elems


def test_enumeration_counts_and_budget():
    assert sum(1 for _ in get_algebra(2, 3).enumerate_group()) == 36
    assert sum(1 for _ in get_algebra(3, 3).enumerate_unipotent()) == 729
    with pytest.raises(BudgetError):
        list(get_algebra(4, 5).enumerate_unipotent(budget=10**6))


def test_rook_element_examples():
    alg = get_algebra(2, 3)
    assert alg.rook_element(P(2), ()) == alg.zero()
    D = P(2, (1, 2), (2, 1))
    x = alg.rook_element(D, (1, 1))
    assert x == alg.unit(Root(1, 2)) + alg.unit(Root(2, 1))
    assert alg.rook_unipotent(D, (1, 1)) == alg.one() + x
    alg4 = get_algebra(4, 3)
    xplus = alg4.rook_element(P(4, (2, 3)), (1,))
    assert xplus.coeff(Root(2, 3)) == 1
    assert sum(xplus.upper) + sum(xplus.lower) == 1
    with pytest.raises(DomainError):
        alg.rook_element(D, (1, 0))


def test_functional_examples():
    alg = get_algebra(2, 3)
    lam = alg.functional(P(2, (1, 2)), (2,))
    assert lam.evaluate(alg.unit(Root(1, 2))) == 2
    assert lam.evaluate(alg.unit(Root(2, 1))) == 0
    # pairing of the indexed element with its own functional
    x = alg.rook_element(P(2, (1, 2)), (2,))
    assert lam.evaluate(x) == 1  # 2*2 mod 3
    zero = alg.functional(P(2), ())
    assert zero.evaluate(x) == 0


def test_dual_action():
    alg = get_algebra(2, 3)
    lam = alg.functional(P(2, (1, 2)), (1,))  # dual element is the lower unit
    assert lam.act(alg.one(), "right").dual == lam.dual
    a = alg.one() + alg.unit(Root(1, 2))
    assert lam.act(a, "right").dual == lam.dual  # unchanged at this size
    t = alg.torus((1, 2))
    # left action scales the dual lower unit by its row entry
    assert lam.act(t, "left").dual == alg.unit(Root(2, 1), 2)
    assert lam.act(alg.torus((2, 1)), "left").dual == lam.dual  # row entry is 1
    with pytest.raises(DomainError):
        lam.act(a, "sideways")


def test_dual_action_matches_functional_composition():
    # (lam . t)(y) == lam(t y)   and   (t . lam)(y) == lam(y t)
    rng = random.Random(3)
    alg = get_algebra(3, 3)
    for _ in range(100):
        m = rand_radical(alg, rng)
        from rookchar.algebra import Functional

        lam = Functional(m)
        t = rand_elem(alg, rng, invertible=True)
        y = rand_radical(alg, rng)
        assert lam.act(t, "right").evaluate(y) == lam.evaluate(t * y)
        assert lam.act(t, "left").evaluate(y) == lam.evaluate(y * t)


def test_two_sided_span_dim():
    alg = get_algebra(2, 3)
    assert alg.two_sided_span_dim(alg.zero()) == 0
    assert alg.two_sided_span_dim(alg.unit(Root(1, 2))) == 0  # all products vanish at n=2
    assert alg.two_sided_span_dim(alg.torus((2, 2)) - alg.one()) == 2


def test_format_and_parse_round_trip():
    alg = get_algebra(2, 3)
    s = "E 1 2 = 2; F 2 1 = 1"
    x = parse_element(alg, s)
    assert x.is_unipotent and x.coeff(Root(1, 2)) == 2 and x.coeff(Root(2, 1)) == 1
    assert format_element(x) == s
    t = "H = 1,2"
    h = parse_element(alg, t)
    assert h == alg.torus((1, 2))
    assert format_element(h) == t
    full = "E 1 2 = 2; F 2 1 = 1; H = 2,2"
    assert format_element(parse_element(alg, full)) == full
    assert parse_element(alg, "") == alg.one()
    assert format_element(alg.one()) == ""


@given(
    up=st.lists(st.integers(0, 2), min_size=3, max_size=3),
    lo=st.lists(st.integers(0, 2), min_size=3, max_size=3),
    di=st.lists(st.integers(1, 2), min_size=3, max_size=3),
)
def test_parse_inverts_format(up, lo, di):
    alg = get_algebra(3, 3)
    x = alg.element(di, up, lo)
    assert parse_element(alg, format_element(x)) == x


def test_parse_errors():
    alg = get_algebra(2, 3)
    with pytest.raises(ParseError):
        parse_element(alg, "E 2 2 = 1")
    with pytest.raises(ParseError):
        parse_element(alg, "F 1 2 = 1")
    with pytest.raises(ParseError):
        parse_element(alg, "E 1 2 = 1; E 1 2 = 2")
    with pytest.raises(ParseError):
        parse_element(alg, "H = 1")
    with pytest.raises(ParseError):
        parse_element(alg, "G 1 2 = 1")
    with pytest.raises(ParseError) as exc:
        parse_element(alg, "E 1 2 = 1; bogus")
    assert exc.value.position > 0
