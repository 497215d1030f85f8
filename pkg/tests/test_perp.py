import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubelat.errors import DivisibilityError, NotPrimitiveError, ZeroVectorError
from cubelat.int3 import cross, dot, gcd_vec, norm2
from cubelat.perp import in_m_def, m_sublattice, perp_basis, phi_lift

from oracles import box, integral_in

small = st.integers(-9, 9)
primitive = st.tuples(small, small, small).filter(lambda v: v != (0, 0, 0) and gcd_vec(v) == 1)


@pytest.mark.parametrize("v", [(0, 0, 1), (1, 2, 2), (1, 1, 1), (5, 5, 2), (3, 4, 12)])
def test_perp_basis_examples(v):
    P = perp_basis(v)
    assert dot(P.b1, v) == 0 and dot(P.b2, v) == 0
    assert cross(P.b1, P.b2) == v


def test_perp_basis_small_vectors():
    assert {perp_basis((0, 0, 1)).b1, perp_basis((0, 0, 1)).b2} == {(0, 1, 0), (-1, 0, 0)}
    assert perp_basis((1, 1, 1)).b1 == (-1, 1, 0)


def test_perp_basis_errors():
    with pytest.raises(ZeroVectorError):
        perp_basis((0, 0, 0))
    with pytest.raises(NotPrimitiveError):
        perp_basis((2, 4, 4))


@settings(max_examples=60)
@given(primitive)
def test_perp_basis_spans_every_orthogonal_vector(v):
    P = perp_basis(v)
    assert cross(P.b1, P.b2) == v
    for a in box(4):
        if dot(a, v) == 0:
            assert P.coords(a) is not None
            assert P.at(*P.coords(a)) == a
    assert P.coords((1, 0, 0)) is None or dot((1, 0, 0), v) == 0


def _phi_brute(v, m, r):
    """Least preimage of m under w -> w x v in a box, by (max-norm, norm, lex)."""
    hits = [w for w in box(r) if cross(w, v) == m]
    return min(hits, key=lambda w: (max(map(abs, w)), norm2(w), w))


def test_phi_lift_examples():
    assert phi_lift((0, 0, 1), (1, 0, 0)) == (0, 1, 0)
    assert phi_lift((1, 2, 2), (0, 0, 0)) == (0, 0, 0)
    # the shortest preimage of (0,2,-2); (0,2,2) is another one, differing by v
    assert phi_lift((1, 2, 2), (0, 2, -2)) == (-1, 0, 0)
    assert phi_lift((1, 2, 2), (0, 2, -2)) == _phi_brute((1, 2, 2), (0, 2, -2), 4)
    assert cross((0, 2, 2), (1, 2, 2)) == (0, 2, -2)


@pytest.mark.parametrize("v", [(0, 0, 1), (1, 2, 2), (1, 1, 1), (2, 3, 6)])
def test_phi_lift_matches_brute_force(v):
    P = perp_basis(v)
    for s, t in itertools.product(range(-2, 3), repeat=2):
        m = P.at(s, t)
        assert phi_lift(v, m) == _phi_brute(v, m, 6)


@settings(max_examples=80)
@given(primitive, st.integers(-6, 6), st.integers(-6, 6))
def test_phi_lift_inverts_cross(v, s, t):
    m = perp_basis(v).at(s, t)
    w = phi_lift(v, m)
    assert cross(w, v) == m
    assert phi_lift(v, cross(w, v)) == w


def test_m_sublattice_examples():
    M1 = m_sublattice((1, 2, 2), 1)
    assert M1.index() == 1
    M = m_sublattice((1, 2, 2), 3)
    assert M.index() == 3
    # the lattice spanned by (2,-2,1), (0,3,-3)
    for a in [(2, -2, 1), (0, 3, -3)]:
        assert a in M
    b1, b2 = M.basis
    plane = perp_basis((1, 2, 2))
    assert plane.coords(b1) is not None and plane.coords(b2) is not None
    assert integral_in([(2, -2, 1), (0, 3, -3), (1, 2, 2)], b1)
    assert integral_in([(2, -2, 1), (0, 3, -3), (1, 2, 2)], b2)


def test_m_sublattice_rejects_bad_d():
    with pytest.raises(DivisibilityError):
        m_sublattice((1, 0, 0), 2)


@pytest.mark.parametrize("v, d", [((5, 5, 2), 3), ((1, 2, 2), 3), ((0, 3, 4), 5), ((2, 3, 6), 7)])
def test_m_sublattice_box_oracle(v, d):
    M = m_sublattice((v), d)
    assert M.index() == d
    for a in box(2 * d):
        if dot(a, v) == 0:
            brute = all(x % d == 0 for x in cross(a, v))
            assert (a in M) == brute == in_m_def(v, d, a)
