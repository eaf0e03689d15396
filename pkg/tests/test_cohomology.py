import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vbcocycle.algebra import AxiomError, Permutation, alexander_biquandle, kink_witnesses, trivial_biquandle
from vbcocycle.cohomology import (
    Compatibility,
    SChain,
    chi,
    compatibility_check,
    compatible_pairs,
    degenerate_basis,
    evaluate,
    face1,
    face2,
    is_degenerate,
    is_s_cocycle,
    is_yb_cocycle,
    omega_map,
    pair_index,
    reduced_pairs,
    s_boundary,
    s_coboundary,
    s_cocycle_basis,
    subcomplex_generator,
    yb_coboundary,
    yb_coboundary_basis,
    yb_cocycle_basis,
    zero_cochain,
)
from vbcocycle.exactla import in_span
from vbcocycle.fixtures import FIXTURES, SWAP23_TABLE, Z6_PHI, Z6_V


def all_perms(max_n):
    for n in range(1, max_n + 1):
        for p in itertools.permutations(range(1, n + 1)):
            yield Permutation(p)


def tuples(n_el, deg):
    return itertools.product(range(1, n_el + 1), repeat=deg)


def test_pair_index_convention():
    assert pair_index(3, 1, 1) == 0
    assert pair_index(3, 2, 1) == 3
    assert pair_index(6, 6, 6) == 35
    assert chi(3, (1, 3), (2, 1), (2, 3)) == (0, 0, 1, 1, 0, 1, 0, 0, 0)


def test_omega_examples():
    S = Permutation([2, 3, 1])
    a, b, c = 1, 2, 3
    assert omega_map(3, (a, b, c), S) == (S.power(-2)(c), b, S.power(2)(a))
    assert omega_map(1, (2,), S) == (2,)
    x = (1, 2, 3, 1)
    assert omega_map(4, x, S) == (S.power(-3)(1), S.power(-1)(3), S(2), S.power(3)(1))
    with pytest.raises(ValueError):
        omega_map(3, (1, 2), S)


def test_boundary_degree_two_formula():
    S = Permutation([2, 3, 1])
    Si = S.inverse()
    for x, y in tuples(3, 2):
        expect = SChain([((y,), -1), ((Si(y),), 1), ((S(x),), 1), ((x,), -1)])
        assert s_boundary(2, (x, y), S) == expect


def test_boundary_with_identity_is_zero():
    e = Permutation.identity(3)
    for deg in range(1, 4):
        for x in tuples(3, deg):
            assert s_boundary(deg, x, e) == SChain()


def test_boundary_rejects_degree_zero():
    with pytest.raises(ValueError):
        s_boundary(0, (), Permutation([1]))


@pytest.mark.parametrize("S", list(all_perms(5)), ids=str)
def test_boundary_squared_is_zero(S):
    n_el = len(S)
    for deg in range(2, 5):
        for x in tuples(n_el, deg):
            assert s_boundary(deg - 1, s_boundary(deg, x, S), S) == SChain()


@pytest.mark.parametrize("S", list(all_perms(5)), ids=str)
def test_omega_face_commutation(S):
    n_el = len(S)
    for deg in range(1, 5):
        for x in tuples(n_el, deg):
            w = omega_map(deg, x, S)
            assert omega_map(deg, w, S) == tuple(x)
            for i in range(1, deg + 1):
                assert omega_map(deg - 1, face1(x, i, S), S) == face1(w, deg - i + 1, S)
                assert omega_map(deg - 1, face2(x, i, S), S) == face2(w, deg - i + 1, S)


@pytest.mark.parametrize("S", list(all_perms(4)), ids=str)
def test_subcomplex_closed_under_boundary(S):
    n_el = len(S)
    gens2 = [list(_row(subcomplex_generator(2, x, S), n_el)) for x in tuples(n_el, 2)]
    for x in tuples(n_el, 3):
        image = s_boundary(3, subcomplex_generator(3, x, S), S)
        assert in_span(_row(image, n_el), gens2)[0]


def _row(chain, n_el):
    row = [Fraction(0)] * n_el ** 2
    for (a, b), c in chain.items():
        row[pair_index(n_el, a, b)] += c
    return row


def test_twelve_term_expansion():
    for S in all_perms(4):
        Si, Si2, S2 = S.inverse(), S.power(-2), S.power(2)
        for a, b, c in tuples(len(S), 3):
            expected = SChain([
                ((b, c), -1), ((Si(b), Si(c)), 1), ((b, S2(a)), 1), ((Si(b), S(a)), -1),
                ((S(a), c), 1), ((a, Si(c)), -1), ((Si(c), S2(a)), -1), ((Si2(c), S(a)), 1),
                ((S(a), S(b)), -1), ((a, b), 1), ((Si(c), S(b)), 1), ((Si2(c), b), -1),
            ])
            assert s_boundary(3, subcomplex_generator(3, (a, b, c), S), S) == expected


def test_subcomplex_generator_signs():
    S = Permutation([2, 3, 1])
    x = (1, 2)
    assert subcomplex_generator(2, x, S) == SChain([(x, 1), ((S.inverse()(2), S(1)), -1)])
    x4 = (1, 2, 3, 1)
    assert subcomplex_generator(4, x4, S) == SChain([(x4, 1), (omega_map(4, x4, S), 1)])


# --------------------------------------------------------------------------
# Yang-Baxter side


def test_trivial_reduced_cocycles():
    for n in range(2, 5):
        basis = yb_cocycle_basis(trivial_biquandle(n))
        assert len(basis) == n * n - n
        for v in basis:
            for a in range(1, n + 1):
                assert evaluate(v, n, a, a) == 0


def test_alexander322_cocycle():
    T = alexander_biquandle(3, 2, 2)
    assert is_yb_cocycle(T, chi(3, (1, 3), (2, 3)))
    assert is_yb_cocycle(T, zero_cochain(3))


def test_yb_coboundary_indicator():
    T = alexander_biquandle(3, 2, 2)
    d = yb_coboundary(lambda x: 1 if x == 1 else 0, T)
    ind = lambda x: 1 if x % 3 == 1 % 3 else 0
    for a, b in tuples(3, 2):
        assert evaluate(d, 3, a, b) == ind(a) + ind(b) - ind(2 * a) - ind(2 * b)
    assert is_yb_cocycle(T, d, reduced=False)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 1, 2), (4, 1, 3), (5, 2, 3), (6, 1, 5)]), st.data())
def test_coboundaries_are_cocycles(nst, data):
    T = alexander_biquandle(*nst)
    g = data.draw(st.lists(st.integers(-3, 3), min_size=T.n, max_size=T.n))
    assert is_yb_cocycle(T, yb_coboundary(g, T), reduced=False)


def test_trivial_coboundary_is_zero():
    assert yb_coboundary([1, 2, 3], trivial_biquandle(3)) == zero_cochain(3)


def test_z6_phi_is_reduced_coboundary():
    T = alexander_biquandle(6, 1, 5)
    assert is_yb_cocycle(T, Z6_PHI)
    assert in_span(Z6_PHI, yb_coboundary_basis(T))[0]


def test_reduced_pairs_are_kink_pairs():
    T = SWAP23_TABLE
    pairs = reduced_pairs(T)
    for a in T.elements:
        x, y = kink_witnesses(T, a)
        assert (x, a) in pairs and (y, a) in pairs


# --------------------------------------------------------------------------
# S side


def test_s_cocycle_fixtures():
    assert in_span(chi(3, (1, 2), (1, 3)), s_cocycle_basis(3, Permutation([1, 3, 2])))[0]
    assert in_span(Z6_V, s_cocycle_basis(6, Permutation([1, 6, 5, 4, 3, 2])))[0]


def test_identity_s_cocycles_are_everything():
    for n in range(1, 4):
        assert len(s_cocycle_basis(n, Permutation.identity(n))) == n * n


@pytest.mark.parametrize("S", list(all_perms(4)), ids=str)
def test_s_coboundaries_are_s_cocycles(S):
    n = len(S)
    for e in range(1, n + 1):
        assert is_s_cocycle(n, S, s_coboundary(lambda x: x == e, S))
    assert s_coboundary(lambda x: 5, S) == zero_cochain(n)


def test_s_coboundary_example():
    S = Permutation([2, 3, 1])
    d = s_coboundary(lambda x: x == 1, S)
    for x, y in tuples(3, 2):
        assert evaluate(d, 3, x, y) == -(y == 1) + (y == 2) + (x == 3) - (x == 1)


@pytest.mark.parametrize("S", list(all_perms(4)), ids=str)
def test_degenerate_dimension_and_annihilation(S):
    n = len(S)
    Si = S.inverse()
    basis = degenerate_basis(n, S)
    orbits = {frozenset({(a, b), (Si(b), S(a))}) for a, b in tuples(n, 2)}
    assert len(basis) == len(orbits) == (n * n + n) // 2
    for d in basis:
        assert is_degenerate(n, S, d)
        for x in tuples(n, 2):
            assert sum(evaluate(d, n, *t) * c for t, c in subcomplex_generator(2, x, S).items()) == 0


def test_degenerate_n2_identity():
    basis = degenerate_basis(2, Permutation([1, 2]))
    assert len(basis) == 3
    assert in_span(chi(2, (1, 2), (2, 1)), basis)[0]
    assert not is_degenerate(2, Permutation([1, 2]), chi(2, (1, 2)))


# --------------------------------------------------------------------------
# compatibility


@pytest.mark.parametrize("name", ["swap23", "alex322_swap12", "z6_reflection"])
def test_fixture_flags(name):
    f = FIXTURES[name]
    got = compatibility_check(f.table, f.S, f.phi, f.v)
    want = Compatibility.STRONGLY_COMPATIBLE if f.flag == "strong" else Compatibility.COMPATIBLE
    assert got is want


def test_compatibility_preconditions():
    T = alexander_biquandle(3, 2, 2)
    with pytest.raises(ValueError):
        compatibility_check(T, Permutation([2, 1, 3]), chi(3, (1, 1)), zero_cochain(3))


def test_compatible_pairs_are_compatible():
    for nst, S in [((3, 2, 2), [2, 1, 3]), ((3, 1, 2), [1, 3, 2]), ((4, 1, 3), [1, 2, 3, 4])]:
        T = alexander_biquandle(*nst)
        S = Permutation(S)
        pairs = compatible_pairs(T, S)
        assert pairs
        for p in pairs:
            assert compatibility_check(T, S, p.phi, p.v) is not Compatibility.INCOMPATIBLE
            assert p.strong == (compatibility_check(T, S, p.phi, p.v) is Compatibility.STRONGLY_COMPATIBLE)


def test_compatible_pairs_need_automorphism():
    with pytest.raises(AxiomError):
        compatible_pairs(alexander_biquandle(3, 2, 2), Permutation([1, 3, 2]))
