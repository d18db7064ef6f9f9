import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coxgal.classify import supported_groups
from coxgal.exactalg.cyclotomic import cyc_root_of_unity
from coxgal.jordan import (
    JordanForm,
    JordanFormError,
    ThetaDescriptor,
    from_jordan,
    local_galois_group,
    rho_check_element,
    term_coordinates,
    to_jordan,
)
from coxgal.liealg import LieElement, bracket, highest_root_vector, is_regular_semisimple, kostant_cartan, principal_nilpotent
from coxgal.rootsys import build, parse_type
from coxgal.strata import FormalType, coxeter_cartan_piece, equivalent_formal_types

from helpers import formal_types


ALL = [f"{l}{n}" for l, n in supported_groups(9)]


def rs_of(token):
    return build(*parse_type(token))


def fg_type(rs, a=1):
    return FormalType(rs, 1, {1: (Fraction(a),)})


@pytest.mark.parametrize("token", ["A1", "A2", "B3", "G2", "D4", "F4", "E6", "E8"])
def test_fg_single_term(token):
    rs = rs_of(token)
    jf = to_jordan(fg_type(rs))
    assert jf.b == rs.h
    assert len(jf.terms) == 1 and jf.terms[0][0] == -1
    assert jf.terms[0][1] == (principal_nilpotent(rs) + highest_root_vector(rs)) * rs.h
    assert bracket(jf.correction, jf.leading()) == rho_check_element(rs)


@pytest.mark.parametrize("token", ["A1", "A2", "B2", "G2", "A3", "B3", "C3"])
@settings(max_examples=15)
@given(data=st.data())
def test_roundtrip(token, data):
    ft = data.draw(formal_types(token))
    jf = to_jordan(ft)
    assert jf.violations() == []
    assert is_regular_semisimple(jf.leading())
    assert equivalent_formal_types(from_jordan(jf), ft)
    # the correction solves [Y, lead] = rho_check and lies in the image of ad(lead)
    assert bracket(jf.correction, jf.leading()) == rho_check_element(ft.base)


def test_theta_descriptor():
    rs = rs_of("A2")
    theta = ThetaDescriptor(3)
    e = LieElement.basis(rs, rs.highest_root_index)
    assert theta.apply(e) == e * cyc_root_of_unity(3, 2)
    for p, x in to_jordan(fg_type(rs)).terms:
        assert theta.apply(x) == x * cyc_root_of_unity(3, p)


def test_from_jordan_reports_violations():
    rs = rs_of("A2")
    good = to_jordan(fg_type(rs))
    lead = good.leading()
    cases = [
        JordanForm(rs, 3, ((-1, lead), (-2, lead)), good.theta),  # exponents decreasing
        JordanForm(rs, 4, ((-1, lead),), good.theta),  # b not a multiple of h
        JordanForm(rs, 3, ((-1, principal_nilpotent(rs)),), good.theta),  # not in the Kostant Cartan
        JordanForm(rs, 3, ((-1, lead.shift(1)),), good.theta),  # involves t
        JordanForm(rs, 3, ((-3, LieElement.basis(rs, rs.cartan_index(0))),), good.theta),  # class 0
    ]
    for jf in cases:
        assert jf.violations()
        with pytest.raises(JordanFormError):
            from_jordan(jf)


def phi(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


@pytest.mark.parametrize("token", ALL)
def test_fg_local_dimension(token):
    rs = rs_of(token)
    assert local_galois_group(to_jordan(fg_type(rs))).dim_h == phi(rs.h)


def orbit_oracle(rs, classes):
    """Exponents (with multiplicity) in the Galois orbits of the given classes mod h."""
    gcds = {math.gcd(j, rs.h) for j in classes}
    return sum(1 for e in rs.exponents if math.gcd(e, rs.h) in gcds)


SIMPLE_SPECTRUM = ["A2", "A4", "B3", "C4", "G2", "F4", "E6", "E7", "E8", "D5", "D7"]


@pytest.mark.parametrize("token", SIMPLE_SPECTRUM)
@settings(max_examples=10)
@given(data=st.data())
def test_local_dimension_orbit_oracle(token, data):
    rs = rs_of(token)
    coprime = [k for k in range(1, rs.h) if math.gcd(k, rs.h) == 1]
    r = data.draw(st.sampled_from(coprime))
    lower = data.draw(st.lists(st.integers(1, r - 1), max_size=3, unique=True)) if r > 1 else []
    coeffs = {r: None}
    for i in lower:
        coeffs[i] = None
    z = cyc_root_of_unity(3, 1)
    filled = {}
    for i in coeffs:
        dim = len(coxeter_cartan_piece(rs, i))
        if dim:
            filled[i] = tuple([1 + z] * dim)
    jf = to_jordan(FormalType(rs, r, filled))
    assert local_galois_group(jf).dim_h == orbit_oracle(rs, [-i for i in filled])


@pytest.mark.parametrize("token", ["D4", "D6", "D8"])
def test_doubled_middle_piece(token):
    rs = rs_of(token)
    mid = rs.h // 2
    base = fg_type(rs).coeffs[1]
    lead = orbit_oracle(rs, [1])
    rational = FormalType(rs, 1, {1: base})
    r = rs.h + 1  # coprime to h, leading class 1, middle piece below it
    ft_rat = FormalType(rs, r, {r: base, mid: (Fraction(1), Fraction(2))})
    ft_gen = FormalType(rs, r, {r: base, mid: (Fraction(1), cyc_root_of_unity(3, 1))})
    assert local_galois_group(to_jordan(rational)).dim_h == lead
    assert local_galois_group(to_jordan(ft_rat)).dim_h == lead + 1
    assert local_galois_group(to_jordan(ft_gen)).dim_h == lead + 2


@pytest.mark.parametrize("token", ["A1", "D4", "G2"])
def test_term_coordinates(token):
    rs = rs_of(token)
    jf = to_jordan(fg_type(rs, 2))
    ((p, coords),) = term_coordinates(jf)
    assert p == -1 and coords == [Fraction(2 * rs.h)]
    assert kostant_cartan(rs).pieces[p % rs.h][0] * coords[0] == jf.leading()
