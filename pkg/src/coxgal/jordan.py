"""Jordan canonical forms of Coxeter connections of slope r/h.

With t = u^h, conjugating by rho_check(u) sends the canonical-form coefficient
A_i (degree -i/h) to u^(-i) X_i with X_i in the Kostant Cartan t' = ker ad(N+E).
In the coordinate u the connection matrix becomes sum_i h X_i u^(-i) - rho_check
(against du/u), and one further gauge by exp(u^r Y) with [Y, h X_r] = rho_check
removes the constant term.  The Jordan form is therefore
    sum_i (h X_i) u^(-i),
twisted by theta = rho_check(zeta_h).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exactalg.cyclotomic import as_cyclotomic, cyc_root_of_unity, simplify
from .exactalg.intmat import charpoly_int, rank_int
from .exactalg.linalg import kernel_basis
from .liealg import (
    LieElement,
    ad_matrix_int,
    bracket,
    cartan_element,
    graded_indices,
    is_regular_semisimple,
    kostant_cartan,
    solve_bracket,
)
from .rootsys import RootSystem
from .strata import FormalType, rho_check_conjugate, rho_check_unconjugate

__all__ = [
    "JordanForm",
    "JordanFormError",
    "ThetaDescriptor",
    "LocalGaloisData",
    "to_jordan",
    "from_jordan",
    "local_galois_group",
    "rho_check_element",
    "term_coordinates",
]


class JordanFormError(ValueError):
    pass


@dataclass(frozen=True)
class ThetaDescriptor:
    """theta = rho_check(zeta_h), acting on e_alpha by zeta_h^ht(alpha)."""

    order: int
    normalisation: str = "adjoint"

    def apply(self, x: LieElement) -> LieElement:
        rs = x.base
        terms = {}
        for (k, p), c in x.terms.items():
            ht = rs.heights[k] if k < rs.n_roots else 0
            terms[(k, p)] = simplify(c * cyc_root_of_unity(self.order, ht))
        return LieElement(rs, terms)

    def __str__(self):
        return f"rho_check(zeta_{self.order}) of order {self.order} ({self.normalisation} normalisation)"


@dataclass
class JordanForm:
    """Terms (r_i, x_i) with r_1 = -r < r_2 < ... < 0, read as sum x_i u^(r_i), t = u^b."""

    base: RootSystem
    b: int
    terms: tuple[tuple[int, LieElement], ...]
    theta: ThetaDescriptor
    correction: LieElement | None = field(default=None, compare=False)

    @property
    def r(self) -> int:
        return -self.terms[0][0]

    def leading(self) -> LieElement:
        return self.terms[0][1]

    def violations(self) -> list[str]:
        """Human-readable list of broken invariants (empty when valid)."""
        rs = self.base
        out = []
        if not self.terms:
            return ["no terms"]
        pows = [p for p, _ in self.terms]
        if pows != sorted(set(pows)) or pows[-1] >= 0:
            out.append("exponents must be strictly increasing negative integers")
        if self.b % rs.h:
            out.append(f"b = {self.b} is not a multiple of h = {rs.h}")
        exps = {e % rs.h for e in rs.exponents}
        for p, x in self.terms:
            if x.is_zero():
                out.append(f"term u^{p} is zero")
                continue
            if x.has_t():
                out.append(f"term u^{p} involves t")
                continue
            if (-p) % rs.h not in exps:
                out.append(f"-({p}) is not congruent to an exponent mod h")
            if self.theta.apply(x) != x * cyc_root_of_unity(rs.h, p):
                out.append(f"term u^{p} is not a theta-eigenvector with eigenvalue zeta_h^{p}")
            if not bracket(x, _kostant_generator(rs)).is_zero():
                out.append(f"term u^{p} is not in the Kostant Cartan")
        if not out and not is_regular_semisimple(self.terms[0][1]):
            out.append("leading term is not regular semisimple")
        return out

    def __eq__(self, other):
        if not isinstance(other, JordanForm):
            return NotImplemented
        return (
            self.base is other.base
            and self.b == other.b
            and len(self.terms) == len(other.terms)
            and all(p == q and x == y for (p, x), (q, y) in zip(self.terms, other.terms))
        )

    def __str__(self):
        body = " + ".join(f"({x})*u^{p}" for p, x in self.terms)
        return f"JordanForm({self.base.name}, b={self.b}: {body})"


@lru_cache(maxsize=None)
def _kostant_generator(rs: RootSystem) -> LieElement:
    from .liealg import highest_root_vector, principal_nilpotent

    return principal_nilpotent(rs) + highest_root_vector(rs)


@lru_cache(maxsize=None)
def rho_check_element(rs: RootSystem) -> LieElement:
    """The Cartan element acting on e_alpha by ht(alpha)."""
    return cartan_element(rs, rs.rho_check)


def _gauge_constant_term(rs: RootSystem, r: int, terms, y: LieElement) -> dict[int, LieElement]:
    """Non-positive u-degree part of Ad(exp(u^r Y)) applied to sum terms - rho_check.

    The derivative contribution of the gauge starts in degree r > 0 and is
    therefore not part of the result.
    """
    current = {p: x for p, x in terms}
    current[0] = current.get(0, LieElement.zero(rs)) - rho_check_element(rs)
    out = {p: x for p, x in current.items()}
    k = 1
    fact = 1
    while current and min(current) + r * k <= 0:
        fact *= k
        nxt = {}
        for p, x in current.items():
            img = bracket(y, x)
            if not img.is_zero():
                nxt[p + r] = img
        for p, x in nxt.items():
            if p <= 0:
                out[p] = out.get(p, LieElement.zero(rs)) + x / fact
        current = nxt
        k += 1
    return {p: x for p, x in out.items() if p <= 0 and not x.is_zero()}


def to_jordan(ft: FormalType) -> JordanForm:
    rs = ft.base
    h = rs.h
    terms = []
    for i in sorted(ft.coeffs, reverse=True):
        parts = rho_check_conjugate(ft.element(i))
        if set(parts) != {-i}:
            raise JordanFormError(f"coefficient of degree -{i}/h is not homogeneous")
        terms.append((-i, parts[-i] * h))
    lead = terms[0][1]
    # the constant term -rho_check is removed by exp(u^r Y) with [Y, lead] = rho_check;
    # Y = [lead, W] keeps Y in the image of ad(lead), and W has height class 2r mod h
    seeds = [LieElement.basis(rs, k) for k in graded_indices(rs, (2 * ft.r) % h)]
    y = solve_bracket(lead, rho_check_element(rs), [bracket(lead, w) for w in seeds])
    if y is None:
        raise JordanFormError("rho_check is not in the image of ad of the leading term")
    after = _gauge_constant_term(rs, ft.r, terms, y)
    expected = {p: x for p, x in terms}
    if after != expected:
        raise JordanFormError("gauge correction left a non-positive tail outside the Jordan terms")
    return JordanForm(rs, h, tuple(terms), ThetaDescriptor(h), correction=y)


def from_jordan(jf: JordanForm) -> FormalType:
    rs = jf.base
    problems = jf.violations()
    if problems:
        raise JordanFormError("; ".join(problems))
    parts = {}
    for p, x in jf.terms:
        parts[-p] = rho_check_unconjugate(rs, {p: x / rs.h})
    return FormalType.from_elements(rs, jf.r, parts)


# -- local Galois group ---------------------------------------------------------------


@dataclass(frozen=True)
class LocalGaloisData:
    dim_h: int
    generators: tuple[LieElement, ...]
    theta_order: int


def _power_components(vec, order: int) -> list[list[Fraction]]:
    """Rational parts of a cyclotomic vector in the power basis of Q(zeta_order)."""
    lifted = [as_cyclotomic(c).lift(order).coeffs for c in vec]
    return [[Fraction(col[k]) for col in lifted] for k in range(len(lifted[0]))]


@lru_cache(maxsize=None)
def _coxeter_eigenvector(rs: RootSystem, j: int) -> tuple:
    """An eigenvector of the Coxeter element with eigenvalue zeta_h^j (coweight coordinates)."""
    z = cyc_root_of_unity(rs.h, j)
    mat = rs.coxeter.matrix
    rows = [[simplify(mat[a][c] - (z if a == c else 0)) for c in range(rs.rank)] for a in range(rs.rank)]
    basis = kernel_basis(rows, rs.rank)
    if len(basis) != 1:
        raise ArithmeticError(f"eigenvalue zeta_h^{j} is not simple")
    return tuple(basis[0])


def _integer_roots_certificate(x: LieElement) -> bool:
    """True iff every eigenvalue of ad x is an integer (x with integer coefficients)."""
    denom = math.lcm(*(Fraction(c).denominator for c in x.terms.values()))
    mat = ad_matrix_int(x * denom)
    cp = charpoly_int(mat)
    guesses = np.rint(np.linalg.eigvals(np.asarray(mat, dtype=float)).real).astype(np.int64)
    prod = [1]
    for root in guesses.tolist():
        prod = [0] + prod
        for k in range(len(prod) - 1):
            prod[k] -= root * prod[k + 1]
    return prod == cp


@lru_cache(maxsize=None)
def _doubled_piece_is_split(rs: RootSystem, j: int) -> bool:
    """Rational directions of the two-dimensional piece give rational tori.

    Checked on the basis vectors and their sum: if all three have integral
    ad-spectrum then the torus rational structure agrees with the Kostant
    rational structure up to one scalar on this piece.
    """
    k1, k2 = kostant_cartan(rs).pieces[j]
    return all(_integer_roots_certificate(v) for v in (k1, k2, k1 + k2))


def _kostant_coordinates(rs: RootSystem, j: int, x: LieElement) -> list:
    basis = kostant_cartan(rs).pieces[j]
    # each basis vector has a pivot root coefficient 1 where the others vanish
    coords = []
    for b in basis:
        key = next(k for k, c in sorted(b.terms.items()) if c and all(
            o.coefficient(*k) == 0 for o in basis if o is not b))
        coords.append(simplify(x.coefficient(*key) / b.coefficient(*key)))
    rebuilt = LieElement.zero(rs)
    for c, b in zip(coords, basis):
        rebuilt = rebuilt + b * c
    if rebuilt != x:
        raise JordanFormError("term does not lie in the Kostant Cartan piece")
    return coords


def term_coordinates(jf: JordanForm) -> list[tuple[int, list]]:
    """Each Jordan term as (u-exponent, coordinates in the Kostant Cartan basis of its piece)."""
    rs = jf.base
    return [(p, _kostant_coordinates(rs, p % rs.h, x)) for p, x in jf.terms]


def local_galois_group(jf: JordanForm) -> LocalGaloisData:
    """dim of the smallest torus whose Lie algebra contains the Jordan terms.

    The Kostant Cartan is identified with the standard Cartan so that theta
    goes to the Coxeter element.  Each term maps into the Coxeter eigenspace of
    its class; on a simple eigenspace only the line matters, so the Coxeter
    eigenvector is used.  A doubled eigenspace (middle exponent of D_2n) is
    matched to a rational basis of the corresponding Coxeter eigenspace through
    the Kostant coordinates.  The dimension is the rank over Q of the rational
    parts of all these vectors.
    """
    rs = jf.base
    h = rs.h
    rows: list[list[Fraction]] = []
    for p, x in jf.terms:
        j = p % h
        dim = len(kostant_cartan(rs).pieces[j])
        if dim == 1:
            rows.extend(_power_components(_coxeter_eigenvector(rs, j), h))
            continue
        if not _doubled_piece_is_split(rs, j):
            raise ArithmeticError(f"{rs.name}: could not certify the rational structure of the doubled piece")
        coords = _kostant_coordinates(rs, j, x)
        mat = rs.coxeter.matrix
        target = kernel_basis(
            [[Fraction(mat[a][c] + (1 if a == c else 0)) for c in range(rs.rank)] for a in range(rs.rank)],
            rs.rank,
        )
        image = [simplify(sum((c * t[k] for c, t in zip(coords, target)), Fraction(0))) for k in range(rs.rank)]
        order = math.lcm(h, *(as_cyclotomic(c).order for c in image))
        rows.extend(_power_components(image, order))
    denom = math.lcm(*(q.denominator for row in rows for q in row)) if rows else 1
    dim_h = rank_int([[int(q * denom) for q in row] for row in rows]) if rows else 0
    return LocalGaloisData(dim_h, tuple(x for _, x in jf.terms), h)
