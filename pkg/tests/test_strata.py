import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coxgal.classify import supported_groups
from coxgal.exactalg.cyclotomic import cyc_root_of_unity
from coxgal.liealg import LieElement, bracket, highest_root_vector, principal_nilpotent
from coxgal.rootsys import build, parse_type
from coxgal.strata import (
    FormalType,
    FormalTypeError,
    Stratum,
    canonical_orbit_representative,
    coxeter_cartan_piece,
    equivalent_formal_types,
    is_fundamental,
    iwahori_degree,
    iwahori_piece,
    mu_h_action,
    omega_basis,
    opposite_iwahori_piece,
    orbit_witness,
    rho_check_conjugate,
    rho_check_unconjugate,
    slope,
)

from helpers import formal_types

ALL = [f"{l}{n}" for l, n in supported_groups(9)]


def rs_of(token):
    return build(*parse_type(token))


def omega_minus_one(rs):
    return principal_nilpotent(rs) + highest_root_vector(rs).shift(-1)


@pytest.mark.parametrize("token", ["A1", "A2", "B3", "G2", "D4", "F4", "E6"])
def test_coxeter_cartan_pieces_centralise_omega(token):
    rs = rs_of(token)
    w = omega_minus_one(rs)
    for i in range(1, 2 * rs.h + 1):
        for v in coxeter_cartan_piece(rs, i):
            assert iwahori_degree(v) == Fraction(-i, rs.h)
            assert bracket(v, w).is_zero()


def opposite_degree(x):
    """t^k e_alpha has opposite-Iwahori degree k - ht(alpha)/h."""
    rs = x.base
    degs = {Fraction(p * rs.h - (rs.heights[k] if k < rs.n_roots else 0), rs.h) for (k, p) in x.terms}
    (deg,) = degs
    return deg


@pytest.mark.parametrize("token", ["A1", "A3", "C3", "D4", "G2"])
@pytest.mark.parametrize("m", [-1, 0, 2])
def test_iwahori_pieces_partition_the_algebra(token, m):
    rs = rs_of(token)
    for i in range(rs.h):
        for v in iwahori_piece(rs, m, i):
            assert iwahori_degree(v) == m + Fraction(i, rs.h)
        for v in opposite_iwahori_piece(rs, m, i):
            assert opposite_degree(v) == m + Fraction(i, rs.h)
    # one period of either grading contains every basis vector exactly once
    for piece in (iwahori_piece, opposite_iwahori_piece):
        seen = [k for i in range(rs.h) for v in piece(rs, m, i) for (k, _) in v.terms]
        assert sorted(seen) == list(range(rs.dim))


def test_iwahori_examples():
    a1, a2 = rs_of("A1"), rs_of("A2")
    assert [str(v) for v in iwahori_piece(a1, 0, 1)] == ["e[1]", "t^1*e[-1]"]
    assert [str(v) for v in opposite_iwahori_piece(a1, 0, 1)] == ["e[-1]", "t^1*e[1]"]
    assert len(iwahori_piece(a2, 0, 1)) == 3
    top = opposite_iwahori_piece(a2, 0, 1)
    assert sorted(str(v) for v in top) == ["e[-1,0]", "e[0,-1]", "t^1*e[1,1]"]
    assert [str(v) for v in opposite_iwahori_piece(a2, 4, 0)] == ["t^4*h1", "t^4*h2"]


def test_omega_basis_degrees():
    rs = rs_of("D4")
    assert omega_basis(rs).degrees() == [Fraction(-1, 6), Fraction(-1, 2), Fraction(-1, 2), Fraction(-5, 6)]


@pytest.mark.parametrize("token", ["A2", "B2", "G2", "A3"])
@given(data=st.data())
def test_rho_check_roundtrip(token, data):
    rs = rs_of(token)
    keys = data.draw(st.lists(st.tuples(st.integers(0, rs.dim - 1), st.integers(-3, 3)), min_size=1, max_size=6, unique=True))
    x = LieElement(rs, {k: Fraction(n + 1) for n, k in enumerate(keys)})
    assert rho_check_unconjugate(rs, rho_check_conjugate(x)) == x


def test_rho_check_unconjugate_rejects_fractional_powers():
    rs = rs_of("A2")
    with pytest.raises(ValueError):
        rho_check_unconjugate(rs, {0: LieElement.basis(rs, 0)})


@pytest.mark.parametrize("token", ["A2", "B2", "G2"])
@settings(max_examples=30)
@given(data=st.data())
def test_mu_h_is_a_group_action(token, data):
    ft = data.draw(formal_types(token))
    k, l = data.draw(st.integers(0, 20)), data.draw(st.integers(0, 20))
    assert mu_h_action(mu_h_action(ft, k), l) == mu_h_action(ft, k + l)
    assert mu_h_action(ft, ft.base.h) == ft
    other = mu_h_action(ft, k)
    assert equivalent_formal_types(ft, other)
    assert canonical_orbit_representative(ft) == canonical_orbit_representative(other)
    w = orbit_witness(ft, other)
    assert mu_h_action(ft, w) == other


def test_mu_h_examples():
    rs = rs_of("A1")
    ft = FormalType(rs, 1, {1: (Fraction(1),)})
    assert mu_h_action(ft, 1).coeffs == {1: (Fraction(-1),)}
    assert not equivalent_formal_types(ft, FormalType(rs, 1, {1: (Fraction(2),)}))
    rs3 = rs_of("A2")
    ft3 = FormalType(rs3, 1, {1: (Fraction(1),)})
    assert mu_h_action(ft3, 1).coeffs[1] == (cyc_root_of_unity(3, 1),)


def test_formal_type_validation():
    rs = rs_of("A2")
    with pytest.raises(FormalTypeError):
        FormalType(rs, 3, {3: ()})  # r not coprime to h
    with pytest.raises(FormalTypeError):
        FormalType(rs, 2, {1: (Fraction(1),)})  # leading coefficient missing
    with pytest.raises(FormalTypeError):
        FormalType(rs, 2, {2: (Fraction(1), Fraction(1))})  # wrong piece dimension
    assert slope(FormalType(rs, 2, {2: (Fraction(1),)})) == Fraction(2, 3)


@pytest.mark.parametrize("token", ["A2", "G2", "D4"])
def test_fundamental_strata(token):
    rs = rs_of(token)
    assert is_fundamental(Stratum(Fraction(1, rs.h), omega_minus_one(rs)))
    assert not is_fundamental(Stratum(Fraction(1, rs.h), principal_nilpotent(rs)))
    with pytest.raises(ValueError):
        Stratum(Fraction(1, rs.h), principal_nilpotent(rs) + highest_root_vector(rs))  # not homogeneous
