"""Iwahori gradings of the loop algebra and formal types for the Coxeter torus.

The loop variable t is bookkept as an integer power per term.  Under the
Iwahori grading the element t^k e_alpha has degree k + ht(alpha)/h and t^k h_i
has degree k.  The Coxeter Cartan piece of degree -i/h is spanned by the
images t^(-m) (X + t^(-1) Y) of the Kostant Cartan vectors X + Y in the height
class -s, where i = m h + s, X has negative height and Y positive height.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exactalg.cyclotomic import Cyclotomic, cyc_root_of_unity, format_scalar, simplify
from .liealg import LieElement, is_nilpotent, kostant_cartan
from .rootsys import RootSystem

__all__ = [
    "FormalType",
    "FormalTypeError",
    "Stratum",
    "CoxeterOmegaBasis",
    "iwahori_piece",
    "opposite_iwahori_piece",
    "iwahori_degree",
    "coxeter_cartan_piece",
    "omega_basis",
    "slope",
    "is_fundamental",
    "mu_h_action",
    "canonical_orbit_representative",
    "equivalent_formal_types",
    "orbit_witness",
    "rho_check_conjugate",
    "rho_check_unconjugate",
]


class FormalTypeError(ValueError):
    pass


def iwahori_piece(rs: RootSystem, m: int, i: int) -> list[LieElement]:
    """Basis of the Iwahori graded piece of degree m + i/h (0 <= i < h)."""
    if not 0 <= i < rs.h:
        raise ValueError(f"need 0 <= i < h = {rs.h}")
    if i == 0:
        return [LieElement.basis(rs, rs.cartan_index(j), m) for j in range(rs.rank)]
    out = [LieElement.basis(rs, k, m) for k in range(rs.n_roots) if rs.heights[k] == i]
    out += [LieElement.basis(rs, k, m + 1) for k in range(rs.n_roots) if rs.heights[k] == i - rs.h]
    return out


def opposite_iwahori_piece(rs: RootSystem, m: int, i: int) -> list[LieElement]:
    """Basis of the opposite Iwahori graded piece of degree m + i/h (0 <= i < h)."""
    if not 0 <= i < rs.h:
        raise ValueError(f"need 0 <= i < h = {rs.h}")
    if i == 0:
        return [LieElement.basis(rs, rs.cartan_index(j), m) for j in range(rs.rank)]
    out = [LieElement.basis(rs, k, m) for k in range(rs.n_roots) if rs.heights[k] == -i]
    out += [LieElement.basis(rs, k, m + 1) for k in range(rs.n_roots) if rs.heights[k] == rs.h - i]
    return out


def iwahori_degree(x: LieElement) -> Fraction | None:
    """Common Iwahori degree of the terms of X, or None if X is not homogeneous."""
    rs = x.base
    degs = set()
    for (k, p) in x.terms:
        ht = rs.heights[k] if k < rs.n_roots else 0
        degs.add(Fraction(p * rs.h + ht, rs.h))
    if len(degs) != 1:
        return None
    return degs.pop()


def rho_check_conjugate(x: LieElement) -> dict[int, LieElement]:
    """Ad(rho_check(u)) with t = u^h: t^k e_alpha -> u^(hk + ht alpha) e_alpha.

    Returns the u-expansion as {power of u: t-free element}.
    """
    rs = x.base
    out: dict[int, dict] = {}
    for (k, p), c in x.terms.items():
        ht = rs.heights[k] if k < rs.n_roots else 0
        out.setdefault(rs.h * p + ht, {})[(k, 0)] = c
    return {n: LieElement(rs, t) for n, t in out.items()}


def rho_check_unconjugate(rs: RootSystem, parts: dict[int, LieElement]) -> LieElement:
    """Inverse of :func:`rho_check_conjugate`; fails if a fractional t-power would appear."""
    terms = {}
    for n, el in parts.items():
        for (k, p), c in el.terms.items():
            if p:
                raise ValueError("expected t-free components")
            ht = rs.heights[k] if k < rs.n_roots else 0
            q, rem = divmod(n - ht, rs.h)
            if rem:
                raise ValueError(f"u^{n} on a height-{ht} vector is not a power of t")
            key = (k, q)
            terms[key] = terms[key] + c if key in terms else c
    return LieElement(rs, terms)


@lru_cache(maxsize=None)
def _split_cartan_piece(rs: RootSystem, s: int) -> tuple[LieElement, ...]:
    """Kostant Cartan vectors of class -s mapped to X + t^(-1) Y (0 < s < h)."""
    vecs = kostant_cartan(rs).pieces[(-s) % rs.h]
    out = []
    for v in vecs:
        terms = {}
        for (k, _), c in v.terms.items():
            terms[(k, -1 if rs.heights[k] > 0 else 0)] = c
        out.append(LieElement(rs, terms))
    return tuple(out)


def coxeter_cartan_piece(rs: RootSystem, i: int) -> list[LieElement]:
    """Basis of the Coxeter Cartan piece of degree -i/h (empty when h divides i)."""
    if i < 0:
        raise ValueError("i must be non-negative")
    m, s = divmod(i, rs.h)
    if s == 0:
        return []
    return [v.shift(-m) for v in _split_cartan_piece(rs, s)]


@dataclass(frozen=True)
class CoxeterOmegaBasis:
    """One generator per exponent s (two for a doubled exponent), degree -s/h."""

    base: RootSystem
    generators: tuple[tuple[int, LieElement], ...]

    def degrees(self) -> list[Fraction]:
        return [Fraction(-s, self.base.h) for s, _ in self.generators]

    def omega(self, s: int) -> list[LieElement]:
        return [g for t, g in self.generators if t == s]


def omega_basis(rs: RootSystem) -> CoxeterOmegaBasis:
    gens = []
    for s in sorted(set(rs.exponents)):
        for g in coxeter_cartan_piece(rs, s):
            gens.append((s, g))
    return CoxeterOmegaBasis(rs, tuple(gens))


@dataclass
class FormalType:
    """Canonical-form coefficients A_i in the Coxeter Cartan pieces of degree -i/h.

    ``coeffs[i]`` holds coordinates relative to ``coxeter_cartan_piece(base, i)``.
    """

    base: RootSystem
    r: int
    coeffs: dict[int, tuple] = field(default_factory=dict)

    def __post_init__(self):
        rs = self.base
        if self.r < 1 or math.gcd(self.r, rs.h) != 1:
            raise FormalTypeError(f"r = {self.r} must be a positive integer coprime to h = {rs.h}")
        clean = {}
        for i, vec in self.coeffs.items():
            i = int(i)
            if not 0 <= i <= self.r:
                raise FormalTypeError(f"coefficient index {i} outside 0..{self.r}")
            dim = len(coxeter_cartan_piece(rs, i)) if i else 0
            vec = tuple(simplify(c) for c in vec)
            if any(vec) and len(vec) != dim:
                raise FormalTypeError(
                    f"degree -{i}/{rs.h} piece has dimension {dim}, got {len(vec)} coordinates"
                )
            if any(vec):
                clean[i] = vec
        self.coeffs = clean
        if self.r not in self.coeffs:
            raise FormalTypeError(f"leading coefficient (i = {self.r}) must be nonzero")

    @classmethod
    def from_elements(cls, rs: RootSystem, r: int, parts: dict[int, LieElement]) -> "FormalType":
        """Build from loop-algebra elements lying in the Coxeter Cartan pieces."""
        coeffs = {}
        for i, el in parts.items():
            if el.is_zero():
                continue
            basis = coxeter_cartan_piece(rs, i)
            coeffs[i] = _coordinates(el, basis, i)
        return cls(rs, r, coeffs)

    def element(self, i: int) -> LieElement:
        vec = self.coeffs.get(i)
        if not vec:
            return LieElement.zero(self.base)
        out = LieElement.zero(self.base)
        for c, b in zip(vec, coxeter_cartan_piece(self.base, i)):
            out = out + b * c
        return out

    def total(self) -> LieElement:
        out = LieElement.zero(self.base)
        for i in sorted(self.coeffs):
            out = out + self.element(i)
        return out

    def flat_key(self, order: int) -> tuple:
        key = []
        for i in range(self.r + 1):
            dim = len(coxeter_cartan_piece(self.base, i)) if i else 0
            vec = self.coeffs.get(i, (Fraction(0),) * dim)
            for c in vec:
                key.extend(_scalar_key(c, order))
        return tuple(key)

    def scalar_order(self) -> int:
        m = 1
        for vec in self.coeffs.values():
            for c in vec:
                if isinstance(c, Cyclotomic):
                    m = math.lcm(m, c.order)
        return m

    def __eq__(self, other):
        if not isinstance(other, FormalType):
            return NotImplemented
        return (
            other.base is self.base
            and other.r == self.r
            and set(self.coeffs) == set(other.coeffs)
            and all(all(a == b for a, b in zip(self.coeffs[i], other.coeffs[i])) for i in self.coeffs)
        )

    def __str__(self):
        parts = []
        for i in sorted(self.coeffs):
            coords = ", ".join(format_scalar(c) for c in self.coeffs[i])
            parts.append(f"{i}: [{coords}]")
        return f"FormalType({self.base.name}, r={self.r}, {{{'; '.join(parts)}}})"


def _scalar_key(c, order: int) -> tuple:
    if isinstance(c, Cyclotomic):
        return c.lift(math.lcm(order, c.order) if order % c.order else order).coeffs
    return Cyclotomic(1, (Fraction(c),)).lift(order).coeffs


def _coordinates(el: LieElement, basis: list[LieElement], i: int) -> tuple:
    from .exactalg.linalg import solve_dense

    keys = sorted({k for b in basis for k in b.terms} | set(el.terms))
    rows = [[b.coefficient(*k) for b in basis] for k in keys]
    rhs = [el.coefficient(*k) for k in keys]
    sol = solve_dense(rows, rhs) if basis else None
    if sol is None:
        raise FormalTypeError(f"element does not lie in the Coxeter Cartan piece of degree -{i}/h")
    return tuple(sol)


def slope(ft: FormalType) -> Fraction:
    return Fraction(ft.r, ft.base.h)


@dataclass(frozen=True)
class Stratum:
    """Leading term beta0 of Iwahori degree -depth at the barycentre."""

    depth: Fraction
    beta0: LieElement

    def __post_init__(self):
        deg = iwahori_degree(self.beta0)
        if self.beta0.is_zero() or deg != -Fraction(self.depth):
            raise ValueError(f"beta0 is not homogeneous of degree {-Fraction(self.depth)}")


def is_fundamental(stratum: Stratum) -> bool:
    """True iff beta0 is non-nilpotent (regular semisimple by the dichotomy)."""
    rs = stratum.beta0.base
    depth = Fraction(stratum.depth)
    j = depth * rs.h
    if j.denominator != 1 or math.gcd(int(j), rs.h) != 1:
        raise ValueError("depth must be i/h with i coprime to h")
    # rho_check(u) conjugation moves beta0 to u^(-j) times a t-free element
    parts = rho_check_conjugate(stratum.beta0)
    (flat,) = parts.values()
    return not is_nilpotent(flat)


def mu_h_action(ft: FormalType, k: int) -> FormalType:
    """zeta_h^k acts on the degree -i/h coefficient by zeta_h^(k i)."""
    h = ft.base.h
    k %= h
    if k == 0:
        return FormalType(ft.base, ft.r, dict(ft.coeffs))
    coeffs = {}
    for i, vec in ft.coeffs.items():
        z = cyc_root_of_unity(h, k * i)
        coeffs[i] = tuple(simplify(c * z) for c in vec)
    return FormalType(ft.base, ft.r, coeffs)


def _orbit(ft: FormalType) -> list[FormalType]:
    return [mu_h_action(ft, k) for k in range(ft.base.h)]


def canonical_orbit_representative(ft: FormalType) -> FormalType:
    """Lexicographically least orbit element (power-basis coefficients in Q(zeta_M))."""
    orbit = _orbit(ft)
    order = math.lcm(ft.base.h, *(o.scalar_order() for o in orbit))
    return min(orbit, key=lambda o: o.flat_key(order))


def orbit_witness(a: FormalType, b: FormalType) -> int | None:
    """Least k with mu_h_action(a, k) == b, or None."""
    if a.base is not b.base or a.r != b.r:
        raise ValueError("formal types must share the root system and r")
    for k in range(a.base.h):
        if mu_h_action(a, k) == b:
            return k
    return None


def equivalent_formal_types(a: FormalType, b: FormalType) -> bool:
    return orbit_witness(a, b) is not None
