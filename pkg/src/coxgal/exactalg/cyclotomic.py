"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored in the power basis 1, z, ..., z^(phi(m)-1) of Q(zeta_m),
fully reduced modulo the m-th cyclotomic polynomial.  Rationals are plain
:class:`fractions.Fraction` objects; they mix freely with :class:`Cyclotomic`.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

Rational = Fraction

__all__ = [
    "Rational",
    "Cyclotomic",
    "cyclotomic_polynomial",
    "cyc_root_of_unity",
    "lift_to_common_order",
    "rational_part_decomposition",
    "as_cyclotomic",
    "simplify",
    "is_rational",
    "to_fraction",
    "scalar_order",
]


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # integer polynomials, low -> high, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    assert not any(num[: len(den) - 1]), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients (low -> high) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Rows k = 0 .. max(m, 2*phi) - 1 holding x^k mod Phi_m."""
    phi = _phi(m)
    cp = cyclotomic_polynomial(m)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(max(m, 2 * phi)):
        rows.append(tuple(cur))
        # multiply by x and reduce
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * cp[j]
    return tuple(rows)


def _reduce_long(m: int, coeffs) -> tuple[Fraction, ...]:
    """Reduce a coefficient list of arbitrary length (index = exponent)."""
    phi = _phi(m)
    table = _power_table(m)
    out = [Fraction(0)] * phi
    for k, c in enumerate(coeffs):
        if not c:
            continue
        row = table[k % m] if k >= len(table) else table[k]
        for j, rj in enumerate(row):
            if rj:
                out[j] += c * rj
    return tuple(out)


@lru_cache(maxsize=None)
def _lift_matrix(m: int, big: int) -> tuple[tuple[int, ...], ...]:
    """Images of z_m^j (j < phi(m)) in the power basis of Q(zeta_big)."""
    step = big // m
    table = _power_table(big)
    return tuple(table[(j * step) % big] for j in range(_phi(m)))


class Cyclotomic:
    """An element of Q(zeta_order) in reduced power-basis form.

    Instances are immutable.  Equality is value equality across orders,
    and hashing is consistent with it (the hash uses the minimal
    cyclotomic field containing the value).
    """

    __slots__ = ("order", "coeffs", "_canon")

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise ValueError("order must be positive")
        coeffs = tuple(Fraction(c) for c in coeffs)
        phi = _phi(order)
        if len(coeffs) != phi:
            coeffs = _reduce_long(order, coeffs)
        self.order = order
        self.coeffs = coeffs
        self._canon = None

    # -- constructors -------------------------------------------------
    @classmethod
    def rational(cls, q) -> "Cyclotomic":
        return cls(1, (Fraction(q),))

    @classmethod
    def root_of_unity(cls, m: int, k: int = 1) -> "Cyclotomic":
        coeffs = [0] * m
        coeffs[k % m] = 1
        return cls(m, coeffs)

    # -- structure ----------------------------------------------------
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def lift(self, big: int) -> "Cyclotomic":
        """Re-express in Q(zeta_big); ``big`` must be a multiple of the order."""
        if big == self.order:
            return self
        if big % self.order:
            raise ValueError(f"cannot lift order {self.order} to {big}")
        out = [Fraction(0)] * _phi(big)
        for c, row in zip(self.coeffs, _lift_matrix(self.order, big)):
            if c:
                for j, rj in enumerate(row):
                    if rj:
                        out[j] += c * rj
        new = Cyclotomic.__new__(Cyclotomic)
        new.order, new.coeffs, new._canon = big, tuple(out), None
        return new

    def canonical(self) -> tuple[int, tuple[Fraction, ...]]:
        """(conductor, coefficients) in the smallest Q(zeta_d) holding the value."""
        if self._canon is None:
            self._canon = self._compute_canonical()
        return self._canon

    def _compute_canonical(self):
        if self.is_rational():
            return (1, (self.coeffs[0],))
        from .linalg import solve_dense  # local import: linalg imports this module

        for d in _divisors(self.order)[1:]:
            if d == self.order:
                return (self.order, self.coeffs)
            rows = _lift_matrix(d, self.order)
            # columns = images of basis of Q(zeta_d)
            mat = [[Fraction(rows[j][i]) for j in range(len(rows))] for i in range(_phi(self.order))]
            sol = solve_dense(mat, list(self.coeffs))
            if sol is not None:
                return (d, tuple(sol))
        return (self.order, self.coeffs)

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, _RationalABC)):
            return Cyclotomic(1, (Fraction(other),))
        return NotImplemented

    def _binary_prepare(self, other):
        if self.order == other.order:
            return self, other
        big = math.lcm(self.order, other.order)
        return self.lift(big), other.lift(big)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            c = list(self.coeffs)
            c[0] += other
            return _make(self.order, c)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._binary_prepare(other)
        return _make(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return _make(self.order, [-x for x in self.coeffs])

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return _make(self.order, [x * other for x in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.order == 1:
            return self * other.coeffs[0]
        if self.order == 1:
            return other * self.coeffs[0]
        a, b = self._binary_prepare(other)
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return _make(a.order, _reduce_long(a.order, prod))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        if self.is_rational():
            return _make(1, [1 / self.coeffs[0]])
        from .linalg import solve_dense

        m, phi = self.order, _phi(self.order)
        # column j = self * z^j
        cols = []
        for j in range(phi):
            shifted = [Fraction(0)] * j + list(self.coeffs)
            cols.append(_reduce_long(m, shifted))
        mat = [[cols[j][i] for j in range(phi)] for i in range(phi)]
        rhs = [Fraction(1)] + [Fraction(0)] * (phi - 1)
        sol = solve_dense(mat, rhs)
        return _make(m, sol)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return _make(self.order, [x / other for x in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = _make(1, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._binary_prepare(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        d, c = self.canonical()
        if d == 1:
            return hash(c[0])
        return hash((d, c))

    def __bool__(self):
        return not self.is_zero()

    def sort_key(self, order: int) -> tuple[Fraction, ...]:
        """Coefficient tuple in Q(zeta_order); a total order once ``order`` is fixed."""
        return self.lift(order).coeffs

    # -- display ------------------------------------------------------
    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.order)
        return complex(sum(float(c) * z**k for k, c in enumerate(self.coeffs)))

    def __repr__(self):
        return f"Cyclotomic({self})"

    def __str__(self):
        return format_scalar(self)


def _make(order: int, coeffs) -> Cyclotomic:
    new = Cyclotomic.__new__(Cyclotomic)
    new.order = order
    new.coeffs = tuple(coeffs)
    new._canon = None
    return new


def format_scalar(x) -> str:
    """Render a scalar in the literal grammar accepted by :func:`parse_cyclotomic`."""
    if not isinstance(x, Cyclotomic):
        return str(Fraction(x))
    if x.is_rational():
        return str(x.coeffs[0])
    d, coeffs = x.canonical()
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mon = f"z{d}" if k == 1 else f"z{d}^{k}"
            body = mon if a == 1 else f"{a}*{mon}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- module-level operations ------------------------------------------------

def cyc_root_of_unity(m: int, k: int) -> Cyclotomic:
    """zeta_m ** k in canonical form."""
    if m < 1:
        raise ValueError("m must be positive")
    return Cyclotomic.root_of_unity(m, k)


def as_cyclotomic(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    return Cyclotomic(1, (Fraction(x),))


def simplify(x):
    """Collapse rational cyclotomics to Fraction; leave the rest alone."""
    if isinstance(x, Cyclotomic):
        return x.coeffs[0] if x.is_rational() else x
    return Fraction(x)


def is_rational(x) -> bool:
    return not isinstance(x, Cyclotomic) or x.is_rational()


def to_fraction(x) -> Fraction:
    return x.to_rational() if isinstance(x, Cyclotomic) else Fraction(x)


def scalar_order(x) -> int:
    return x.order if isinstance(x, Cyclotomic) else 1


def lift_to_common_order(a, b) -> tuple[Cyclotomic, Cyclotomic]:
    a, b = as_cyclotomic(a), as_cyclotomic(b)
    big = math.lcm(a.order, b.order)
    return a.lift(big), b.lift(big)


def rational_part_decomposition(values) -> tuple[list, list[bool]]:
    """For each value return its rational value (or None) and an irrationality flag."""
    rationals, irrational = [], []
    for v in values:
        if is_rational(v):
            rationals.append(to_fraction(v))
            irrational.append(False)
        else:
            rationals.append(None)
            irrational.append(True)
    return rationals, irrational
