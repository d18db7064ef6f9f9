"""Reductive subgroups of maximal degree: stored table, filter-based re-derivation,
and the Levi-degree irreducibility certificate.

A connected reductive subgroup K of G has maximal degree when one of its
fundamental degrees equals the Coxeter number h of G.  Such K turn out to be
simple with Coxeter number h; the derivation below starts from every simple
type and discards candidates by a fixed sequence of elementary filters.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .rootsys import RootSystem, _valid, all_proper_subsets, build, levi_fundamental_degrees, parse_type

__all__ = [
    "Realisation",
    "SubgroupType",
    "Rule",
    "EliminationTrace",
    "UnsupportedType",
    "table1_lookup",
    "derive_maximal_degree_subgroups",
    "minimal_faithful_rep_dim",
    "irreducibility_certificate",
    "IrreducibilityCertificate",
    "certificate_for",
    "coxeter_number",
    "lie_dimension",
    "supported_groups",
]


class UnsupportedType(ValueError):
    pass


class Realisation(enum.Enum):
    SELF = "Self"
    PINNED_FIXED_POINT = "PinnedFixedPoint"
    VIA_D4 = "ViaD4"


@dataclass(frozen=True)
class SubgroupType:
    label: str
    rank: int
    realisation: Realisation
    sigma_order: int | None = None

    @property
    def name(self) -> str:
        return f"{self.label}{self.rank}"

    def note(self) -> str:
        if self.realisation is Realisation.PINNED_FIXED_POINT:
            return f"PinnedFixedPoint({self.sigma_order})"
        return self.realisation.value


class Rule(enum.Enum):
    COXETER_NUMBER_MISMATCH = "CoxeterNumberMismatch"
    RANK_EXCEEDS = "RankExceeds"
    DIMENSION_EXCEEDS = "DimensionExceeds"
    NO_FAITHFUL_REP = "NoFaithfulRepOfRequiredDim"
    NO_ORTHOGONAL_EMBEDDING = "NoOrthogonalEmbedding"


@dataclass(frozen=True)
class EliminationTrace:
    candidate: str
    accepted: bool
    rule: Rule | None = None
    detail: str = ""


# -- closed formulas (cross-checked against built root systems in the tests) -----------

_EXCEPTIONAL = {"E6": (12, 78), "E7": (18, 133), "E8": (30, 248), "F4": (12, 52), "G2": (6, 14)}


def coxeter_number(label: str, rank: int) -> int:
    if label == "A":
        return rank + 1
    if label in "BC":
        return 2 * rank
    if label == "D":
        return 2 * rank - 2
    return _EXCEPTIONAL[f"{label}{rank}"][0]


def lie_dimension(label: str, rank: int) -> int:
    if label == "A":
        return rank * (rank + 2)
    if label in "BC":
        return rank * (2 * rank + 1)
    if label == "D":
        return rank * (2 * rank - 1)
    return _EXCEPTIONAL[f"{label}{rank}"][1]


def minimal_faithful_rep_dim(label: str, rank: int) -> tuple[int, str]:
    """Smallest faithful representation of the Lie algebra and its invariant form."""
    if not _valid(label, rank):
        raise UnsupportedType(f"{label}{rank} is not a simple type")
    if label == "A":
        return (2, "symplectic") if rank == 1 else (rank + 1, "neither")
    if label == "B":
        return (4, "symplectic") if rank == 2 else (2 * rank + 1, "orthogonal")
    if label == "C":
        return 2 * rank, "symplectic"
    if label == "D":
        return 2 * rank, "orthogonal"
    return {
        "G2": (7, "orthogonal"),
        "F4": (26, "orthogonal"),
        "E6": (27, "neither"),
        "E7": (56, "symplectic"),
        "E8": (248, "orthogonal"),
    }[f"{label}{rank}"]


# -- the stored classification ---------------------------------------------------------

def _self(label, rank):
    return SubgroupType(label, rank, Realisation.SELF)


def _fixed(label, rank, order):
    return SubgroupType(label, rank, Realisation.PINNED_FIXED_POINT, order)


def table1_lookup(token_or_label, rank: int | None = None) -> list[SubgroupType]:
    label, rank = _resolve(token_or_label, rank)
    out = [_self(label, rank)]
    if label == "A" and rank % 2 == 1 and rank >= 3:
        out.append(_fixed("C", (rank + 1) // 2, 2))
    elif label == "B" and rank == 3:
        out.append(SubgroupType("G", 2, Realisation.VIA_D4, 3))
    elif label == "D" and rank == 4:
        out += [_fixed("B", 3, 2), _fixed("G", 2, 3)]
    elif label == "D":
        out.append(_fixed("B", rank - 1, 2))
    elif label == "E" and rank == 6:
        out.append(_fixed("F", 4, 2))
    return out


def _resolve(token_or_label, rank):
    if rank is None:
        try:
            return parse_type(str(token_or_label))
        except ValueError as exc:
            raise UnsupportedType(str(exc)) from None
    label = str(token_or_label).upper()
    if not _valid(label, int(rank)):
        raise UnsupportedType(f"{label}{rank} is not a simple type")
    return label, int(rank)


def supported_groups(max_classical_rank: int = 9) -> list[tuple[str, int]]:
    out = [("A", n) for n in range(1, max_classical_rank + 1)]
    out += [("B", n) for n in range(2, max_classical_rank + 1)]
    out += [("C", n) for n in range(2, max_classical_rank + 1)]
    out += [("D", n) for n in range(4, max_classical_rank + 1)]
    out += [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
    return out


# -- re-derivation ---------------------------------------------------------------------

def _candidate_pool(label: str, rank: int) -> list[tuple[str, int]]:
    """Every simple type up to rank h - 1, one label per isomorphism class.

    B2 and C2 are one class, listed as C2 unless the group itself is B2.
    """
    h = coxeter_number(label, rank)
    pool = []
    for n in range(1, max(h - 1, rank) + 1):
        for lab in "ABCD":
            if not _valid(lab, n):
                continue
            if n == 2 and lab in "BC" and lab != ("B" if (label, rank) == ("B", 2) else "C"):
                continue
            pool.append((lab, n))
    pool += [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
    return pool


def _natural_dim(label: str, rank: int) -> tuple[int, str]:
    """Dimension and form type of the defining representation used for embeddings."""
    if label == "A":
        return rank + 1, "neither"
    if label == "B":
        return 2 * rank + 1, "orthogonal"
    if label == "C":
        return 2 * rank, "symplectic"
    if label == "D":
        return 2 * rank, "orthogonal"
    return minimal_faithful_rep_dim(label, rank)


def _filter(g: tuple[str, int], k: tuple[str, int]) -> tuple[Rule, str] | None:
    gl, gn = g
    kl, kn = k
    if k == g:
        return None
    hg, hk = coxeter_number(gl, gn), coxeter_number(kl, kn)
    if hk != hg:
        return Rule.COXETER_NUMBER_MISMATCH, f"h = {hk} != {hg}"
    if kn > gn:
        return Rule.RANK_EXCEEDS, f"rank {kn} > {gn}"
    dk, dg = lie_dimension(kl, kn), lie_dimension(gl, gn)
    if dk >= dg:
        return Rule.DIMENSION_EXCEEDS, f"dim {dk} >= {dg} for a proper subalgebra"
    need, g_form = _natural_dim(gl, gn)
    have, k_form = minimal_faithful_rep_dim(kl, kn)
    if have > need:
        return Rule.NO_FAITHFUL_REP, f"smallest faithful representation has dim {have} > {need}"
    # a symplectic irreducible summand cannot sit orthogonally beside trivial summands
    if g_form == "orthogonal" and k_form == "symplectic" and 2 * have > need:
        return Rule.NO_ORTHOGONAL_EMBEDDING, f"symplectic {have}-dim representation inside orthogonal {need}"
    return None


def _realise(g: tuple[str, int], k: tuple[str, int]) -> SubgroupType:
    for st in table1_lookup(*g):
        if (st.label, st.rank) == k:
            return st
    raise AssertionError(f"{k} survived the filters for {g} without a known realisation")


def derive_maximal_degree_subgroups(token_or_label, rank: int | None = None):
    """Run the filter pipeline; returns (accepted subgroup types, elimination traces)."""
    g = _resolve(token_or_label, rank)
    accepted, traces = [], []
    for k in _candidate_pool(*g):
        verdict = _filter(g, k)
        name = f"{k[0]}{k[1]}"
        if verdict is None:
            accepted.append(_realise(g, k))
            traces.append(EliminationTrace(name, True))
        else:
            traces.append(EliminationTrace(name, False, verdict[0], verdict[1]))
    accepted.sort(key=lambda s: s.realisation is not Realisation.SELF)
    return accepted, traces


# -- irreducibility certificate --------------------------------------------------------

@dataclass(frozen=True)
class IrreducibilityCertificate:
    group: str
    h: int
    entries: tuple[tuple[tuple[int, ...], int], ...]  # (J, largest degree of W_J)

    def holds(self) -> bool:
        return all(d < self.h for _, d in self.entries)


@lru_cache(maxsize=None)
def irreducibility_certificate(rs: RootSystem) -> IrreducibilityCertificate:
    """Largest fundamental degree of every proper parabolic W_J (0-based J)."""
    entries = []
    for J in all_proper_subsets(rs.rank):
        degs = levi_fundamental_degrees(rs, J)
        entries.append((tuple(J), max(degs, default=1)))
    return IrreducibilityCertificate(rs.name, rs.h, tuple(entries))


def certificate_for(token: str) -> IrreducibilityCertificate:
    label, rank = _resolve(token, None)
    return irreducibility_certificate(build(label, rank))
