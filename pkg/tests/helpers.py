"""Shared strategies and numeric oracles for the test suite."""
import cmath
import math
from fractions import Fraction

from hypothesis import strategies as st

from coxgal.exactalg.cyclotomic import Cyclotomic, simplify
from coxgal.rootsys import build, parse_type
from coxgal.strata import FormalType, coxeter_cartan_piece

ORDERS = (1, 2, 3, 4, 5, 6, 8, 12)

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def cyclotomics(draw, orders=ORDERS):
    m = draw(st.sampled_from(orders))
    coeffs = draw(st.lists(small_fractions, min_size=m, max_size=m))
    return simplify(Cyclotomic(m, coeffs))


def to_complex(x) -> complex:
    """Numerical value of an exact scalar (independent of the power-basis reduction)."""
    if isinstance(x, Cyclotomic):
        z = cmath.exp(2j * cmath.pi / x.order)
        return sum(float(c) * z**k for k, c in enumerate(x.coeffs))
    return complex(Fraction(x))


@st.composite
def formal_types(draw, token):
    rs = build(*parse_type(token))
    rs_h = rs.h
    r = draw(st.sampled_from([k for k in range(1, 2 * rs_h) if math.gcd(k, rs_h) == 1]))
    coeffs = {}
    for i in range(1, r + 1):
        dim = len(coxeter_cartan_piece(rs, i))
        if dim and (i == r or draw(st.booleans())):
            vec = draw(st.lists(st.integers(-3, 3), min_size=dim, max_size=dim))
            if i == r and not any(vec):
                vec[0] = 1
            coeffs[i] = tuple(Fraction(v) for v in vec)
    return FormalType(rs, r, coeffs)
