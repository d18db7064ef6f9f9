"""Differential Galois groups of Frenkel-Gross, Airy and framable Coxeter connections.

Conventions: X, Z are given in fundamental-coweight coordinates, so
alpha_i(X) = X[i].  The adjoint form is used throughout, so the character
lattice of T is the root lattice.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .classify import Realisation, SubgroupType, lie_dimension, table1_lookup
from .exactalg.cyclotomic import as_cyclotomic, is_rational, simplify, to_fraction
from .exactalg.intmat import integer_kernel
from .exactalg.linalg import kernel_basis
from .jordan import JordanForm, LocalGaloisData, local_galois_group, to_jordan
from .liealg import LieElement, borel_normal_form, bracket, cartan_element, jordan_decomposition, principal_nilpotent
from .rootsys import (
    DEFAULT_ORBIT_BOUND,
    DiagramAutomorphism,
    OrbitBoundExceeded,
    RootSystem,
    build,
    d4_triality,
    diagram_automorphisms,
    dominant_form,
    folding_b3_to_d4,
    weyl_orbit,
)
from .strata import FormalType, coxeter_cartan_piece

__all__ = [
    "Kind",
    "ConnectionSpec",
    "SpecError",
    "GaloisVerdict",
    "RigidityResult",
    "residue",
    "monodromy_semisimple_part",
    "connectedness_check",
    "w_conjugate_into_fixed",
    "rigidity_check",
    "rigidity_data",
    "fg_monodromy_regularity",
    "galois_group_fg",
    "galois_group_airy",
    "galois_group_coxeter",
    "analyze",
]


class SpecError(ValueError):
    pass


class Kind(enum.Enum):
    FG = "fg"
    AIRY = "airy"
    COXETER = "coxeter"


@dataclass
class ConnectionSpec:
    """A framable connection on the multiplicative group (FG, Coxeter) or the line (Airy).

    FG:      d + a(N + X + tE) dt/t, slope 1/h at infinity.
    Airy:    d + Z dt/t + a(N + X + tE) dt, slope 1 + 1/h; exp(2 pi i Z) = 1.
    Coxeter: residue A(0) = X + (t^0 part of the framable lift of the formal type),
             slope r/h.
    """

    base: RootSystem
    kind: Kind
    a: object = Fraction(1)
    x: tuple = ()
    z: tuple | None = None
    r: int = 1
    formal_type: FormalType | None = None

    def __post_init__(self):
        rs = self.base
        self.a = simplify(self.a)
        if not self.a:
            raise SpecError("a must be nonzero")
        self.x = tuple(simplify(v) for v in (self.x or (0,) * rs.rank))
        if len(self.x) != rs.rank:
            raise SpecError(f"X needs {rs.rank} coweight coordinates, got {len(self.x)}")
        if self.kind is Kind.FG:
            if self.r != 1:
                raise SpecError("Frenkel-Gross connections have r = 1")
        elif self.kind is Kind.AIRY:
            self.r = rs.h + 1
            z = tuple(simplify(v) for v in (self.z or (0,) * rs.rank))
            if len(z) != rs.rank:
                raise SpecError(f"Z needs {rs.rank} coweight coordinates")
            if not all(is_rational(v) and to_fraction(v).denominator == 1 for v in z):
                raise SpecError("Z must have integer coweight coordinates (exp(2 pi i Z) = 1)")
            self.z = z
        if self.z is not None and self.kind is not Kind.AIRY:
            raise SpecError("Z is only meaningful for Airy connections")
        if self.r < 1 or math.gcd(self.r, rs.h) != 1:
            raise SpecError(f"r = {self.r} must be coprime to h = {rs.h}")
        if self.kind is Kind.COXETER:
            if self.formal_type is None:
                dim = len(coxeter_cartan_piece(rs, self.r))
                self.formal_type = FormalType(rs, self.r, {self.r: (self.a,) + (0,) * (dim - 1)})
            if self.formal_type.base is not rs or self.formal_type.r != self.r:
                raise SpecError("formal type does not match the group and r")
        elif self.formal_type is not None:
            raise SpecError("a formal type is only accepted for Coxeter connections")

    @property
    def slope(self) -> Fraction:
        return Fraction(self.r, self.base.h)

    def formal_type_at_infinity(self) -> FormalType:
        """Formal type at infinity (only the leading coefficient for Airy, see notes)."""
        rs = self.base
        if self.kind is Kind.COXETER:
            return self.formal_type
        return FormalType(rs, self.r, {self.r: (self.a,)})


def _cartan(rs: RootSystem, coweights) -> LieElement:
    return cartan_element(rs, coweights)


def residue(spec: ConnectionSpec) -> LieElement:
    """A(0), the residue of the connection at 0."""
    rs = spec.base
    if spec.kind is Kind.FG:
        return (principal_nilpotent(rs) + _cartan(rs, spec.x)) * spec.a
    if spec.kind is Kind.AIRY:
        return _cartan(rs, spec.z)
    out = _cartan(rs, spec.x)
    ft = spec.formal_type
    for i in ft.coeffs:
        if i < rs.h:
            # the t^0 part of the lift is the negative-height component
            out = out + ft.element(i).at_power(0)
    return out


def monodromy_semisimple_part(spec: ConnectionSpec) -> LieElement:
    return jordan_decomposition(residue(spec))[0]


# -- connectedness --------------------------------------------------------------------

def connectedness_check(ys) -> bool:
    """No rational non-integer lies in the group generated by alpha_i(Y_s).

    ``ys`` is a Cartan element or its coweight coordinates.  The simple roots
    form a basis of the character lattice of the adjoint torus, so the values
    alpha_i(Y_s) = ys[i] generate X^*(Y_s).
    """
    if isinstance(ys, LieElement):
        if any(k < ys.base.n_roots for k, _ in ys.terms):
            raise ValueError("expected an element of the Cartan subalgebra")
        ys = ys.cartan_coweights()
    vals = [as_cyclotomic(simplify(v)) for v in ys]
    order = math.lcm(1, *(v.order for v in vals))
    comps = [v.lift(order).coeffs for v in vals]  # comps[i][k]
    width = len(comps[0]) if comps else 0
    if width <= 1:
        return all(Fraction(c[0]).denominator == 1 for c in comps)
    # integer combinations killing every irrational power-basis component
    rows = []
    for k in range(1, width):
        den = math.lcm(1, *(Fraction(c[k]).denominator for c in comps))
        rows.append([int(Fraction(c[k]) * den) for c in comps])
    lattice = integer_kernel(rows, len(comps)) if any(any(r) for r in rows) else [
        [int(i == j) for j in range(len(comps))] for i in range(len(comps))
    ]
    for vec in lattice:
        value = sum((n * Fraction(c[0]) for n, c in zip(vec, comps)), Fraction(0))
        if value.denominator != 1:
            return False
    return True


# -- conjugacy into fixed Cartans ---------------------------------------------------------

def _fixed(sigma: DiagramAutomorphism, x) -> bool:
    return tuple(sigma.act_on_coweights(x)) == tuple(x)


def w_conjugate_into_fixed(
    rs: RootSystem,
    x,
    sigma: DiagramAutomorphism,
    method: str = "auto",
    bound: int = DEFAULT_ORBIT_BOUND,
) -> bool:
    """Does the W-orbit of X meet the sigma-fixed part of the Cartan?

    ``chamber``: sigma permutes the simple coroots, so it preserves the
    canonical chamber representative; the orbit meets the fixed space iff that
    representative is itself fixed.  ``orbit``: enumerate the orbit.
    ``auto`` is the chamber method.
    """
    x = tuple(simplify(v) for v in x)
    if method in ("auto", "chamber"):
        return _fixed(sigma, dominant_form(rs, x))
    if method == "orbit":
        return any(_fixed(sigma, y) for y in weyl_orbit(rs, x, bound))
    raise ValueError(f"unknown method {method!r}")


def _g2_line_in_b3(rs: RootSystem, x, bound: int) -> bool:
    """W(B3)-orbit of X meets the G2 Cartan {x_1 = x_3} of B3."""
    return any(y[0] == y[2] for y in weyl_orbit(rs, x, bound))


def _automorphisms_of_order(rs: RootSystem, order: int) -> list[DiagramAutomorphism]:
    return [s for s in diagram_automorphisms(rs) if s.order == order]


def _decide(rs: RootSystem, x, notes: list[str], method: str, bound: int, b3_mode: str) -> SubgroupType:
    """Walk the proper rows of the classification from the smallest subgroup up."""
    rows = table1_lookup(rs.type_label, rs.rank)
    proper = sorted((s for s in rows if s.realisation is not Realisation.SELF), key=lambda s: _dim(s))
    if not proper:
        notes.append(f"{rs.name}: no proper subgroup of maximal degree, no automorphism test needed")
        return rows[0]
    for sub in proper:
        if sub.realisation is Realisation.VIA_D4:
            hit = _b3_test(rs, x, notes, method, bound, b3_mode)
        else:
            hit = False
            for sigma in _automorphisms_of_order(rs, sub.sigma_order):
                ok = w_conjugate_into_fixed(rs, x, sigma, method, bound)
                notes.append(f"sigma {sigma.perm} (order {sigma.order}): X {'is' if ok else 'is not'} W-conjugate into the fixed Cartan")
                if ok:
                    hit = True
                    break
        if hit:
            return sub
    return rows[0]


def _dim(sub: SubgroupType) -> int:
    return lie_dimension(sub.label, sub.rank)


def _b3_test(rs: RootSystem, x, notes, method, bound, b3_mode) -> bool:
    d4 = build("D", 4)
    lifted = folding_b3_to_d4(x)
    via_d4 = w_conjugate_into_fixed(d4, lifted, d4_triality(d4), method, bound)
    notes.append(f"B3 via D4: folded X {'is' if via_d4 else 'is not'} W(D4)-conjugate into the triality-fixed Cartan")
    try:
        in_b3 = _g2_line_in_b3(rs, x, bound)
    except OrbitBoundExceeded:  # pragma: no cover - |W(B3)| = 48
        in_b3 = None
    if in_b3 is not None:
        notes.append(f"B3 direct: X {'is' if in_b3 else 'is not'} W(B3)-conjugate into the G2 Cartan")
        if in_b3 != via_d4:
            notes.append("B3 tests disagree between W(D4) and W(B3) conjugacy")
    if b3_mode == "b3":
        return bool(in_b3)
    if b3_mode != "d4":
        raise ValueError(f"unknown b3 mode {b3_mode!r}")
    return via_d4


# -- rigidity -------------------------------------------------------------------------------

@dataclass(frozen=True)
class RigidityResult:
    rigid: bool | None
    dim_centraliser: int | None
    required: int
    note: str = ""


def _resonant(rs: RootSystem, hvals) -> bool:
    for k in range(rs.n_positive):
        v = simplify(rs.root_value(k, hvals))
        if is_rational(v) and v and to_fraction(v).denominator == 1:
            return True
    return False


def _centraliser_of_exp(h: LieElement, m: LieElement) -> int:
    """dim of the centraliser of exp(2 pi i (H + M)) for H in t, M nilpotent commuting with H.

    The semisimple part centralises t plus the root spaces with alpha(H) integral;
    inside that subalgebra the unipotent part cuts down to ker ad M.
    """
    rs = h.base
    hvals = h.cartan_coweights()
    keep = [rs.cartan_index(i) for i in range(rs.rank)]
    for k in range(rs.n_roots):
        v = simplify(rs.root_value(k, hvals))
        if is_rational(v) and to_fraction(v).denominator == 1:
            keep.append(k)
    if m.is_zero():
        return len(keep)
    images = [bracket(m, LieElement.basis(rs, k)) for k in keep]
    keys = sorted({key for im in images for key in im.terms})
    if not keys:
        return len(keep)
    rows = [[im.coefficient(*key) for im in images] for key in keys]
    return len(kernel_basis(rows, len(keep)))


def rigidity_data(spec: ConnectionSpec) -> RigidityResult:
    """dim Z_G(monodromy) against the rigidity threshold r * rank.

    Non-resonant residues use exp(2 pi i A(0)) directly.  When some root takes
    a nonzero integer value on the semisimple part, the local monodromy is no
    longer read off from A(0).
    """
    rs = spec.base
    required = spec.r * rs.rank
    if spec.kind is Kind.AIRY:
        # exp(2 pi i Z) = 1, so the monodromy centraliser is all of G
        return RigidityResult(rs.dim == required, rs.dim, required, "monodromy is trivial")
    h, m = borel_normal_form(residue(spec))
    if _resonant(rs, h.cartan_coweights()):
        if spec.kind is Kind.FG:
            return RigidityResult(
                True, rs.rank, required,
                "resonant residue: monodromy regularity taken from the general FG regularity result",
            )
        return RigidityResult(None, None, required, "resonant residue: unipotent part of the monodromy not determined")
    dim = _centraliser_of_exp(h, m)
    return RigidityResult(dim == required, dim, required)


def rigidity_check(spec: ConnectionSpec) -> bool | None:
    """Cohomological rigidity; None when the monodromy centraliser is not computable."""
    return rigidity_data(spec).rigid


def fg_monodromy_regularity(spec: ConnectionSpec) -> bool:
    if spec.kind is not Kind.FG:
        raise SpecError("regularity check applies to Frenkel-Gross specs")
    res = rigidity_data(spec)
    return res.dim_centraliser == spec.base.rank


# -- verdicts --------------------------------------------------------------------------------

@dataclass
class GaloisVerdict:
    group: SubgroupType | None
    connected_monodromy: bool
    slope: Fraction
    rigid: bool | None
    local: LocalGaloisData | None
    notes: list[str] = field(default_factory=list)
    jordan: JordanForm | None = None
    dim_centraliser: int | None = None

    @property
    def determined(self) -> bool:
        return self.group is not None


def _local(spec: ConnectionSpec, notes: list[str]) -> tuple[JordanForm, LocalGaloisData]:
    jf = to_jordan(spec.formal_type_at_infinity())
    if spec.kind is Kind.AIRY:
        notes.append("local data at infinity from the leading Jordan term only")
    return jf, local_galois_group(jf)


def _group_or_none(rs, x, notes, method, bound, b3_mode):
    try:
        return _decide(rs, x, notes, method, bound, b3_mode)
    except OrbitBoundExceeded as exc:
        notes.append(f"undetermined: orbit infeasible (bound {exc.bound})")
        return None


def galois_group_fg(
    spec: ConnectionSpec, method: str = "auto", bound: int = DEFAULT_ORBIT_BOUND, b3_mode: str = "d4"
) -> GaloisVerdict:
    if spec.kind is not Kind.FG:
        raise SpecError("expected a Frenkel-Gross spec")
    rs = spec.base
    notes = ["framability of generalised FG connections assumed (physical rigidity conjecture)"]
    hs = borel_normal_form(residue(spec))[0]
    connected = connectedness_check(hs)
    rig = rigidity_data(spec)
    if rig.note:
        notes.append(rig.note)
    jf, local = _local(spec, notes)
    group = None
    if connected:
        group = _group_or_none(rs, spec.x, notes, method, bound, b3_mode)
    else:
        notes.append("undetermined: geometric monodromy is not connected (a*X has a rational non-integral character value)")
    return GaloisVerdict(group, connected, spec.slope, rig.rigid, local, notes, jf, rig.dim_centraliser)


def galois_group_airy(
    spec: ConnectionSpec, method: str = "auto", bound: int = DEFAULT_ORBIT_BOUND, b3_mode: str = "d4"
) -> GaloisVerdict:
    """Same group as the FG connection with the same a and X; slope 1 + 1/h."""
    if spec.kind is not Kind.AIRY:
        raise SpecError("expected an Airy spec")
    rs = spec.base
    fg = galois_group_fg(ConnectionSpec(rs, Kind.FG, spec.a, spec.x), method, bound, b3_mode)
    notes = ["group delegated to the associated Frenkel-Gross connection"] + fg.notes[1:]
    if any(v for v in spec.z):
        notes.append("nonzero residue Z: group verdict not covered, reported undetermined")
        group = None
    else:
        group = fg.group
    rig = rigidity_data(spec)
    jf, local = _local(spec, notes)
    return GaloisVerdict(group, True, spec.slope, rig.rigid, local, notes, jf, rig.dim_centraliser)


def galois_group_coxeter(
    spec: ConnectionSpec, method: str = "auto", bound: int = DEFAULT_ORBIT_BOUND, b3_mode: str = "d4"
) -> GaloisVerdict:
    """Maximal degree when the monodromy is connected; the group is pinned down only
    when the classification leaves a single candidate."""
    if spec.kind is not Kind.COXETER:
        raise SpecError("expected a Coxeter spec")
    rs = spec.base
    notes: list[str] = []
    jf, local = _local(spec, notes)
    hs = borel_normal_form(residue(spec))[0]
    connected = connectedness_check(hs)
    rig = rigidity_data(spec)
    if rig.note:
        notes.append(rig.note)
    rows = table1_lookup(rs.type_label, rs.rank)
    group = None
    if not connected:
        notes.append("undetermined: geometric monodromy is not connected")
    elif len(rows) == 1:
        group = rows[0]
    else:
        names = ", ".join(s.name for s in rows)
        notes.append(f"undetermined among {names}: needs a gauge-equivalence test against pinned automorphisms")
    return GaloisVerdict(group, connected, spec.slope, rig.rigid, local, notes, jf, rig.dim_centraliser)


def analyze(spec: ConnectionSpec, method: str = "auto", bound: int = DEFAULT_ORBIT_BOUND, b3_mode: str = "d4") -> GaloisVerdict:
    if spec.kind is Kind.FG:
        return galois_group_fg(spec, method, bound, b3_mode)
    if spec.kind is Kind.AIRY:
        return galois_group_airy(spec, method, bound, b3_mode)
    return galois_group_coxeter(spec, method, bound, b3_mode)

