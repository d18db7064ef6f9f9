from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from coxgal.classify import coxeter_number, lie_dimension, supported_groups
from coxgal.exactalg.cyclotomic import cyc_root_of_unity
from coxgal.rootsys import (
    InvalidRootSystem,
    OrbitBoundExceeded,
    build,
    d4_triality,
    diagram_automorphisms,
    dominant_form,
    exponents_via_coxeter,
    folding_b3_to_d4,
    levi_fundamental_degrees,
    parse_type,
    reflect,
    weyl_orbit,
)

# Standard data (Bourbaki, Planches): exponents and |W|.
KNOWN = {
    "A1": ((1,), 2),
    "A2": ((1, 2), 6),
    "A3": ((1, 2, 3), 24),
    "B2": ((1, 3), 8),
    "B3": ((1, 3, 5), 48),
    "C3": ((1, 3, 5), 48),
    "D4": ((1, 3, 3, 5), 192),
    "D5": ((1, 3, 4, 5, 7), 1920),
    "G2": ((1, 5), 12),
    "F4": ((1, 5, 7, 11), 1152),
    "E6": ((1, 4, 5, 7, 8, 11), 51840),
    "E7": ((1, 5, 7, 9, 11, 13, 17), 2903040),
    "E8": ((1, 7, 11, 13, 17, 19, 23, 29), 696729600),
}

ALL = [f"{l}{n}" for l, n in supported_groups(9)]


def rs_of(token):
    return build(*parse_type(token))


@pytest.mark.parametrize("token", sorted(KNOWN))
def test_exponents_and_weyl_order(token):
    rs = rs_of(token)
    exps, order = KNOWN[token]
    assert rs.exponents == exps
    assert rs.weyl_order == order


@pytest.mark.parametrize("token", ALL)
def test_closed_forms_and_coxeter_eigenvalues(token):
    rs = rs_of(token)
    assert rs.h == coxeter_number(rs.type_label, rs.rank)
    assert rs.dim == lie_dimension(rs.type_label, rs.rank)
    assert rs.n_roots == rs.h * rs.rank
    assert sorted(exponents_via_coxeter(rs)) == list(rs.exponents)
    assert sum(rs.exponents) == rs.n_positive
    # exponents are symmetric: m and h - m
    assert sorted(rs.h - e for e in rs.exponents) == list(rs.exponents)


@pytest.mark.parametrize("token", ["A3", "B3", "G2", "D4", "F4", "E6"])
def test_structure_constants_jacobi(token):
    from coxgal.liealg import LieElement, bracket

    rs = rs_of(token)
    basis = [LieElement.basis(rs, k) for k in range(rs.dim)]
    step = max(1, rs.dim // 12)
    sample = basis[::step]
    for x, y, z in product(sample, repeat=3):
        total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
        assert total.is_zero()


def test_parse_type_rejects_non_crystallographic():
    for bad in ["H3", "E9", "D3", "B1", "A0", "X", "G3"]:
        with pytest.raises(InvalidRootSystem):
            parse_type(bad)


@pytest.mark.parametrize("token, orders", [("A1", [1]), ("A3", [1, 2]), ("D4", [1, 2, 2, 2, 3, 3]), ("D5", [1, 2]), ("E6", [1, 2]), ("E7", [1]), ("G2", [1]), ("B3", [1])])
def test_diagram_automorphism_groups(token, orders):
    assert sorted(s.order for s in diagram_automorphisms(rs_of(token))) == orders


def test_folding_and_triality():
    d4 = rs_of("D4")
    tri = d4_triality(d4)
    assert tri.order == 3
    assert tuple(tri.act_on_coweights((1, 2, 3, 4))) != (1, 2, 3, 4)
    assert folding_b3_to_d4((1, 2, 3)) == (1, 2, 3, 3)


coords = st.lists(st.integers(-4, 4), min_size=3, max_size=3)


@given(coords, coords)
def test_dominant_form_is_an_orbit_invariant(x, y):
    rs = rs_of("B3")
    z3 = cyc_root_of_unity(3, 1)
    v = tuple(a + b * z3 for a, b in zip(x, y))
    orbit = weyl_orbit(rs, v)
    assert rs.weyl_order % len(orbit) == 0
    canon = dominant_form(rs, v)
    assert canon in orbit
    w = reflect(rs, 1, reflect(rs, 0, v))
    assert dominant_form(rs, w) == canon


def test_orbit_bound():
    rs = rs_of("E6")
    with pytest.raises(OrbitBoundExceeded):
        weyl_orbit(rs, (1, 2, 3, 4, 5, 6), bound=1000)
    assert len(weyl_orbit(rs, (1, 0, 0, 0, 0, 0))) == 27


@pytest.mark.parametrize(
    "drop, degrees",
    [
        (0, [2, 4, 5, 6, 8]),  # D5
        (1, [2, 3, 4, 5, 6]),  # A5
        (2, [2, 2, 3, 4, 5]),  # A4 x A1
        (3, [2, 2, 2, 3, 3]),  # A2 x A2 x A1
        (4, [2, 2, 3, 4, 5]),
        (5, [2, 4, 5, 6, 8]),
    ],
)
def test_levi_degrees_e6(drop, degrees):
    rs = rs_of("E6")
    assert sorted(levi_fundamental_degrees(rs, [k for k in range(6) if k != drop])) == degrees
