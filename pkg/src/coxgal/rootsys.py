"""Simple root systems, Chevalley structure constants and Weyl group data.

Conventions
-----------
* Simple roots are numbered as in Bourbaki.
* ``cartan[i][j] = alpha_j(h_i) = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)``.
* Roots are integer vectors in the simple-root basis.  The root list holds the
  positive roots sorted by (height, coordinates with alpha_1 first), followed
  by their negatives in the same order.
* Vectors in the Cartan subalgebra are written in fundamental-coweight
  coordinates, so the i-th coordinate of X is alpha_i(X).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from . import kernels
from .exactalg.cyclotomic import Cyclotomic, cyclotomic_polynomial, simplify
from .exactalg.intmat import charpoly_int

__all__ = [
    "RootSystem",
    "RootSystemData",
    "WeylElement",
    "DiagramAutomorphism",
    "OrbitBoundExceeded",
    "InvalidRootSystem",
    "DEFAULT_ORBIT_BOUND",
    "build",
    "parse_type",
    "coxeter_element",
    "exponents_via_coxeter",
    "levi_fundamental_degrees",
    "exponents_from_cartan",
    "weyl_orbit",
    "diagram_automorphisms",
    "reflect",
    "dominant_form",
]

DEFAULT_ORBIT_BOUND = 10**6


class InvalidRootSystem(ValueError):
    pass


class OrbitBoundExceeded(RuntimeError):
    """Raised when a Weyl orbit has more elements than the configured bound."""

    def __init__(self, bound: int):
        self.bound = bound
        super().__init__(f"Weyl orbit has more than {bound} elements")


def _valid(label: str, rank: int) -> bool:
    minimum = {"A": 1, "B": 2, "C": 2, "D": 4}
    if label in minimum:
        return rank >= minimum[label]
    return (label, rank) in {("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)}


def parse_type(token: str) -> tuple[str, int]:
    """Split a token such as ``"E6"`` or ``"D_4"`` into (label, rank)."""
    tok = token.strip().replace("_", "")
    if len(tok) < 2 or not tok[1:].isdigit():
        raise InvalidRootSystem(f"not a simple type token: {token!r}")
    label, rank = tok[0].upper(), int(tok[1:])
    if not _valid(label, rank):
        raise InvalidRootSystem(f"{token!r} is not a crystallographic simple type")
    return label, rank


def _inner_products(label: str, n: int) -> list[list[int]]:
    """Symmetric matrix of (alpha_i, alpha_j) for the simple roots."""
    b = [[0] * n for _ in range(n)]

    def edge(i, j, v):
        b[i - 1][j - 1] = b[j - 1][i - 1] = v

    if label == "A":
        for i in range(n):
            b[i][i] = 2
        for i in range(1, n):
            edge(i, i + 1, -1)
    elif label == "B":
        for i in range(n - 1):
            b[i][i] = 2
        b[n - 1][n - 1] = 1
        for i in range(1, n):
            edge(i, i + 1, -1)
    elif label == "C":
        for i in range(n - 1):
            b[i][i] = 2
        b[n - 1][n - 1] = 4
        for i in range(1, n - 1):
            edge(i, i + 1, -1)
        edge(n - 1, n, -2)
    elif label == "D":
        for i in range(n):
            b[i][i] = 2
        for i in range(1, n - 1):
            edge(i, i + 1, -1)
        edge(n - 2, n, -1)
    elif label == "E":
        for i in range(n):
            b[i][i] = 2
        edge(1, 3, -1)
        edge(2, 4, -1)
        for i in range(3, n):
            edge(i, i + 1, -1)
    elif label == "F":
        b[0][0] = b[1][1] = 4
        b[2][2] = b[3][3] = 2
        edge(1, 2, -2)
        edge(2, 3, -2)
        edge(3, 4, -1)
    elif label == "G":
        b[0][0], b[1][1] = 2, 6
        edge(1, 2, -3)
    return b


def _cartan_from_form(form) -> tuple[tuple[int, ...], ...]:
    n = len(form)
    return tuple(tuple(2 * form[i][j] // form[i][i] for j in range(n)) for i in range(n))


def _positive_roots(cartan) -> list[tuple[int, ...]]:
    """Positive roots generated from simple roots by root strings."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    out = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # q = largest k with beta - k alpha_i a root
                q = 0
                while True:
                    cand = tuple(c - (q + 1) * int(j == i) for j, c in enumerate(beta))
                    if cand in found:
                        q += 1
                    else:
                        break
                pairing = sum(beta[j] * cartan[i][j] for j in range(n))
                if q - pairing > 0:
                    new = tuple(c + int(j == i) for j, c in enumerate(beta))
                    if new not in found:
                        found.add(new)
                        nxt.append(new)
                        out.append(new)
        layer = nxt
    return out


def _root_sort_key(root):
    return (sum(root), tuple(-c for c in root))


def exponents_from_cartan(cartan) -> list[int]:
    """Exponents of the Weyl group of a (possibly reducible) Cartan matrix.

    Uses the dual-partition rule: the number of exponents equal to k is
    #(roots of height k) - #(roots of height k+1), computed per component.
    """
    out = []
    for comp in _components(cartan):
        sub = tuple(tuple(cartan[i][j] for j in comp) for i in comp)
        pos = _positive_roots(sub)
        counts = {}
        for r in pos:
            counts[sum(r)] = counts.get(sum(r), 0) + 1
        top = max(counts)
        for k in range(1, top + 1):
            out.extend([k] * (counts.get(k, 0) - counts.get(k + 1, 0)))
    return sorted(out)


def _components(cartan) -> list[list[int]]:
    n = len(cartan)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and cartan[i][j]:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element as a root permutation plus its matrix on coweight coordinates."""

    perm: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]
    word: tuple[int, ...] = ()

    def act(self, x):
        return tuple(simplify(sum((m * v for m, v in zip(row, x)), Fraction(0))) for row in self.matrix)

    def order(self) -> int:
        n = len(self.perm)
        seen = [False] * n
        out = 1
        for s in range(n):
            if seen[s]:
                continue
            length, j = 0, s
            while not seen[j]:
                seen[j] = True
                j = self.perm[j]
                length += 1
            out = math.lcm(out, length)
        return out


@dataclass(frozen=True)
class DiagramAutomorphism:
    """Permutation ``perm[i] = sigma(i)`` of simple-root indices (0-based)."""

    perm: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for s in range(len(self.perm)):
            length, j = 1, self.perm[s]
            while j != s:
                j = self.perm[j]
                length += 1
            out = math.lcm(out, length)
        return out

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.perm))

    def orbits(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for s in range(len(self.perm)):
            if s in seen:
                continue
            orb, j = [], s
            while j not in seen:
                seen.add(j)
                orb.append(j)
                j = self.perm[j]
            out.append(tuple(orb))
        return out

    def act_on_coweights(self, x):
        """sigma acting on coweight coordinates: (sigma X)_{sigma(i)} = X_i."""
        out = [None] * len(x)
        for i, p in enumerate(self.perm):
            out[p] = x[i]
        return tuple(out)


class RootSystem:
    """Combinatorial and structural data of one simple root system."""

    def __init__(self, label: str, rank: int):
        if not _valid(label, rank):
            raise InvalidRootSystem(f"invalid type {label}{rank}")
        self.type_label = label
        self.rank = rank
        self.form = tuple(tuple(r) for r in _inner_products(label, rank))
        self.cartan_matrix = _cartan_from_form(self.form)
        pos = sorted(_positive_roots(self.cartan_matrix), key=_root_sort_key)
        self.n_positive = len(pos)
        self.roots: tuple[tuple[int, ...], ...] = tuple(pos) + tuple(tuple(-c for c in r) for r in pos)
        self.n_roots = len(self.roots)
        self.index = {r: k for k, r in enumerate(self.roots)}
        self.heights = tuple(sum(r) for r in self.roots)
        self.h = self.n_roots // rank
        self.dim = self.n_roots + rank
        counts = {}
        for r in pos:
            counts[sum(r)] = counts.get(sum(r), 0) + 1
        exps = []
        for k in range(1, max(counts) + 1):
            exps.extend([k] * (counts.get(k, 0) - counts.get(k + 1, 0)))
        self.exponents = tuple(sorted(exps))
        self.degrees = tuple(e + 1 for e in self.exponents)
        self.rho_check = tuple(Fraction(1) for _ in range(rank))
        self.structure_constants = self._structure_constants()

    # -- basic accessors --------------------------------------------------
    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    def __repr__(self):
        return f"RootSystem({self.name})"

    def __reduce__(self):
        return (build, (self.type_label, self.rank))

    def cartan_index(self, i: int) -> int:
        """Basis index of the simple coroot h_i (0-based i)."""
        return self.n_roots + i

    def negative(self, k: int) -> int:
        return (k + self.n_positive) % self.n_roots

    def is_positive(self, k: int) -> bool:
        return k < self.n_positive

    def simple_index(self, i: int) -> int:
        return self.index[tuple(int(j == i) for j in range(self.rank))]

    @cached_property
    def highest_root_index(self) -> int:
        return self.n_positive - 1

    def inner(self, a, b) -> int:
        return sum(a[i] * self.form[i][j] * b[j] for i in range(self.rank) for j in range(self.rank) if a[i] and b[j])

    def pairing(self, root, i: int) -> int:
        """alpha(h_i) for a root vector alpha."""
        return sum(root[j] * self.cartan_matrix[i][j] for j in range(self.rank))

    def root_value(self, k: int, x):
        """alpha_k(X) for X in coweight coordinates."""
        return simplify(sum((c * v for c, v in zip(self.roots[k], x) if c), Fraction(0)))

    @cached_property
    def coroots(self) -> tuple[tuple[int, ...], ...]:
        """Coroot of each root in the simple-coroot basis."""
        out = []
        for r in self.roots:
            norm = self.inner(r, r)
            out.append(tuple(c * self.form[i][i] // norm for i, c in enumerate(r)))
        return tuple(out)

    @cached_property
    def weyl_order(self) -> int:
        return math.prod(self.degrees)

    # -- structure constants ---------------------------------------------
    def _string_p(self, a: int, b: int) -> int:
        """Largest p with beta - p alpha a root."""
        alpha, beta = self.roots[a], self.roots[b]
        p = 0
        while tuple(x - (p + 1) * y for x, y in zip(beta, alpha)) in self.index:
            p += 1
        return p

    def _structure_constants(self) -> dict[tuple[int, int], int]:
        idx, roots = self.index, self.roots
        npos = self.n_positive
        norm = [self.inner(r, r) for r in roots]
        pos_table: dict[tuple[int, int], int] = {}

        def add(a, b):
            return idx.get(tuple(x + y for x, y in zip(roots[a], roots[b])))

        def neg(a):
            return self.negative(a)

        def n_of(a, b):
            # N_{a,b} for roots with a + b a root
            pa, pb = a < npos, b < npos
            if pa and pb:
                return pos_table[(a, b)]
            if not pa and not pb:
                return -pos_table[(neg(a), neg(b))]
            w = neg(add(a, b))
            pw = w < npos
            if pb == pw:
                return Fraction(norm[w], norm[a]) * n_of(b, w)
            return Fraction(norm[w], norm[b]) * n_of(w, a)

        def n_or_zero(a, b):
            return n_of(a, b) if add(a, b) is not None else 0

        for xi in range(npos):
            pairs = []
            for a in range(xi):
                b = idx.get(tuple(x - y for x, y in zip(roots[xi], roots[a])))
                if b is not None and b < npos and a < b:
                    pairs.append((a, b))
            if not pairs:
                continue
            a1, b1 = pairs[0]  # extraspecial: smallest first entry
            for a, b in pairs:
                if (a, b) == (a1, b1):
                    val = self._string_p(a1, b1) + 1
                else:
                    n1 = pos_table[(a1, b1)]
                    t = Fraction(0)
                    g = add(b, neg(a1))
                    if g is not None:
                        t += Fraction(n_of(b, neg(a1)) * n_or_zero(a, neg(b1)), norm[g])
                    g = add(a, neg(a1))
                    if g is not None:
                        t += Fraction(n_of(neg(a1), a) * n_or_zero(b, neg(b1)), norm[g])
                    val = Fraction(norm[xi], n1) * t
                assert Fraction(val).denominator == 1
                pos_table[(a, b)] = int(val)
                pos_table[(b, a)] = -int(val)

        full: dict[tuple[int, int], int] = {}
        n = self.n_roots
        for a in range(n):
            for b in range(n):
                if add(a, b) is not None:
                    full[(a, b)] = int(n_of(a, b))
        return full

    def N(self, a: int, b: int) -> int:
        return self.structure_constants.get((a, b), 0)

    # -- Weyl group -------------------------------------------------------
    def reflection_matrix(self, i: int) -> tuple[tuple[int, ...], ...]:
        """s_i on coweight coordinates: x_j -> x_j - cartan[i][j] x_i."""
        n = self.rank
        rows = []
        for j in range(n):
            row = [int(j == k) for k in range(n)]
            row[i] -= self.cartan_matrix[i][j]
            rows.append(tuple(row))
        return tuple(rows)

    def reflect_root(self, i: int, k: int) -> int:
        r = self.roots[k]
        c = self.pairing(r, i)
        return self.index[tuple(x - c * int(j == i) for j, x in enumerate(r))]

    def weyl_element(self, word) -> WeylElement:
        """Product s_{w0} s_{w1} ... (rightmost acts first)."""
        n = self.rank
        mat = np.eye(n, dtype=np.int64)
        for i in word:
            mat = mat @ np.array(self.reflection_matrix(i), dtype=np.int64)
        perm = list(range(self.n_roots))
        for k in range(self.n_roots):
            j = k
            for i in reversed(word):
                j = self.reflect_root(i, j)
            perm[k] = j
        return WeylElement(tuple(perm), tuple(tuple(int(v) for v in row) for row in mat), tuple(word))

    @cached_property
    def coxeter(self) -> WeylElement:
        return self.weyl_element(tuple(range(self.rank)))


RootSystemData = RootSystem


@lru_cache(maxsize=None)
def build(type_label: str, rank: int) -> RootSystem:
    """Build (and cache) the root system of type ``type_label`` and rank ``rank``."""
    label = str(type_label).upper()
    return RootSystem(label, int(rank))


def coxeter_element(rs: RootSystem) -> WeylElement:
    """The Coxeter element s_1 s_2 ... s_rank."""
    return rs.coxeter


def exponents_via_coxeter(rs: RootSystem) -> list[int]:
    """Exponents read off from the characteristic polynomial of the Coxeter element.

    The polynomial is factored into cyclotomic factors Phi_d (d | h); each
    copy of Phi_d contributes every m in [1, h) with h / gcd(m, h) = d.
    """
    poly = charpoly_int(np.array(rs.coxeter.matrix, dtype=np.int64))
    h = rs.h
    out = []
    for d in sorted(x for x in range(1, h + 1) if h % x == 0):
        phi = list(cyclotomic_polynomial(d))
        while len(poly) >= len(phi):
            q, rem = _polydiv(poly, phi)
            if any(rem):
                break
            poly = q
            out.extend(m for m in range(1, h) if h // math.gcd(m, h) == d)
    if len(poly) != 1:
        raise ArithmeticError("Coxeter polynomial did not split into cyclotomic factors")
    return sorted(out)


def _polydiv(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        out[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    return out, num[: len(den) - 1]


def levi_fundamental_degrees(rs: RootSystem, J) -> list[int]:
    """Fundamental degrees of the parabolic subgroup W_J (0-based indices)."""
    J = sorted(set(J))
    if any(j < 0 or j >= rs.rank for j in J):
        raise ValueError(f"indices out of range for {rs.name}: {J}")
    if not J:
        return []
    sub = tuple(tuple(rs.cartan_matrix[i][j] for j in J) for i in J)
    return [e + 1 for e in exponents_from_cartan(sub)]


def _to_integer_block(x):
    """Write cyclotomic coordinates as an integer (rank x phi) block plus scale data."""
    order = 1
    for v in x:
        if isinstance(v, Cyclotomic):
            order = math.lcm(order, v.order)
    cols = []
    for v in x:
        c = v.lift(order).coeffs if isinstance(v, Cyclotomic) else Cyclotomic(1, (Fraction(v),)).lift(order).coeffs
        cols.append(c)
    den = 1
    for c in cols:
        for q in c:
            den = math.lcm(den, q.denominator)
    block = [[int(q * den) for q in c] for c in cols]
    return np.array(block, dtype=np.int64).reshape(len(x), len(block[0])), order, den


def _from_integer_block(block, order, den):
    out = []
    for row in block.tolist():
        coeffs = [Fraction(v, den) for v in row]
        out.append(simplify(Cyclotomic(order, coeffs)) if order > 1 else Fraction(coeffs[0]))
    return tuple(out)


def weyl_orbit(rs: RootSystem, x, bound: int = DEFAULT_ORBIT_BOUND) -> set[tuple]:
    """The full W-orbit of X (coweight coordinates), deduplicated exactly."""
    x = tuple(simplify(v) for v in x)
    block, order, den = _to_integer_block(x)
    if np.abs(block).max(initial=0) >= (1 << 40):
        raise OverflowError("coordinates too large for the orbit kernel")
    res = kernels.weyl_orbit(block, np.array(rs.cartan_matrix, dtype=np.int64), bound)
    if res is None:
        raise OrbitBoundExceeded(bound)
    return {_from_integer_block(b, order, den) for b in res}


def reflect(rs: RootSystem, i: int, x) -> tuple:
    xi = x[i]
    return tuple(simplify(v - rs.cartan_matrix[i][j] * xi) if rs.cartan_matrix[i][j] else v for j, v in enumerate(x))


def dominant_form(rs: RootSystem, x) -> tuple:
    """Canonical representative of the W-orbit of X (exact, no enumeration).

    X is split into rational power-basis components v_1, ..., v_d.  v_1 is
    moved into the dominant chamber, then v_2 into the dominant chamber of the
    stabiliser of v_1, and so on.  Two vectors are W-conjugate iff their
    canonical forms coincide.
    """
    x = tuple(simplify(v) for v in x)
    block, order, den = _to_integer_block(x)
    rows = block.tolist()  # rows[j][c]: coordinate j, component c
    ncomp = len(rows[0])
    cart = rs.cartan_matrix
    active = list(range(rs.rank))
    for c in range(ncomp):
        changed = True
        while changed:
            changed = False
            for i in active:
                if rows[i][c] < 0:
                    xi = list(rows[i])
                    for j in range(rs.rank):
                        if cart[i][j]:
                            rows[j] = [a - cart[i][j] * b for a, b in zip(rows[j], xi)]
                    changed = True
                    break
        active = [i for i in active if rows[i][c] == 0]
        if not active:
            break
    return _from_integer_block(np.array(rows, dtype=np.int64).reshape(block.shape), order, den)


def diagram_automorphisms(rs: RootSystem) -> list[DiagramAutomorphism]:
    """All permutations of simple roots preserving the Cartan matrix (identity first)."""
    n = rs.rank
    c = rs.cartan_matrix
    out = []

    def extend(partial):
        k = len(partial)
        if k == n:
            out.append(DiagramAutomorphism(tuple(partial)))
            return
        for t in range(n):
            if t in partial:
                continue
            if c[t][t] != c[k][k]:
                continue
            if all(c[t][partial[j]] == c[k][j] and c[partial[j]][t] == c[j][k] for j in range(k)):
                extend(partial + [t])

    extend([])
    out.sort(key=lambda s: (not s.is_identity(), s.order, s.perm))
    return out


def folding_b3_to_d4(x) -> tuple:
    """Embed t(B3) into t(D4)^tau, tau swapping the two outer nodes 3 and 4."""
    if len(x) != 3:
        raise ValueError("expected a B3 coweight vector")
    return (x[0], x[1], x[2], x[2])


def d4_triality(rs: RootSystem) -> DiagramAutomorphism:
    """The order-3 automorphism 1 -> 3 -> 4 -> 1 of D4 (0-based 0 -> 2 -> 3 -> 0)."""
    if rs.name != "D4":
        raise ValueError("triality only exists for D4")
    return DiagramAutomorphism((2, 1, 3, 0))


def all_proper_subsets(n: int):
    for k in range(n):
        yield from itertools.combinations(range(n), k)
