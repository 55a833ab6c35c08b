"""Alpha-twisted Euler characteristics and the index of rigidity."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import ConfigError, NegativeLength, NotDisjoint, RankNonzero
from .kclass import SheafClass, ext_euler
from .lattice import DivisorClass, canonical_class, intersect
from .pseudo_twist import JetProfile
from .surface import SurfaceModel, anticanonical_class

INTEGRALITY_DISCLAIMER = (
    "numeric test only: rigidity also needs the support (Fitting scheme) to be an "
    "integral curve, which is assumed and not verified"
)


class RestrictionKind(enum.Enum):
    DISJOINT = "disjoint"
    TRANSVERSE_JETS = "transverse_jets"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class RestrictionData:
    """Derived restrictions of a pair of sheaves to the anticanonical curve."""

    kind: RestrictionKind
    jets_m: Optional[JetProfile] = None
    jets_n: Optional[JetProfile] = None
    hom_dim: int = 0
    ext_minus1_dim: int = 0

    def __post_init__(self):
        if self.kind is RestrictionKind.DISJOINT and (self.hom_dim or self.ext_minus1_dim):
            raise ConfigError("disjoint restriction data cannot carry correction dimensions")
        if self.kind is RestrictionKind.TRANSVERSE_JETS and self.jets_m is None:
            raise ConfigError("transverse restriction data needs a jet profile")
        if self.hom_dim < 0 or self.ext_minus1_dim < 0:
            raise NegativeLength("restriction Ext dimensions must be nonnegative")

    @classmethod
    def disjoint(cls) -> RestrictionData:
        return cls(RestrictionKind.DISJOINT)

    @classmethod
    def transverse(cls, jets_m: JetProfile, jets_n: Optional[JetProfile] = None) -> RestrictionData:
        return cls(RestrictionKind.TRANSVERSE_JETS, jets_m, jets_n if jets_n is not None else jets_m)

    @classmethod
    def explicit(cls, hom_dim: int, ext_minus1_dim: int = 0) -> RestrictionData:
        return cls(RestrictionKind.EXPLICIT, hom_dim=hom_dim, ext_minus1_dim=ext_minus1_dim)

    def swapped(self) -> RestrictionData:
        if self.kind is RestrictionKind.TRANSVERSE_JETS:
            return RestrictionData(self.kind, self.jets_n, self.jets_m)
        return self

    def corrections(self) -> tuple[int, int]:
        """``(dim Ext^0, dim Ext^{-1})`` of the derived restrictions."""
        if self.kind is RestrictionKind.TRANSVERSE_JETS:
            # Transversality kills Tor_1; Hom between sums of jets at a site is the shorter length.
            a, b = self.jets_m.lengths(), self.jets_n.lengths()
            return sum(min(a[s], b[s]) for s in a.keys() & b.keys()), 0
        return self.hom_dim, self.ext_minus1_dim


def chi_alpha(surface: SurfaceModel, m: SheafClass, n: SheafClass, restr: RestrictionData) -> int:
    if restr.kind is RestrictionKind.TRANSVERSE_JETS and (m.rank or n.rank):
        raise RankNonzero("jet-profile restrictions only model rank-0 classes")
    hom, ext_minus1 = restr.corrections()
    return ext_euler(surface, m, n) + hom - ext_minus1


def index_of_rigidity(surface: SurfaceModel, m: SheafClass, restr: RestrictionData) -> int:
    return chi_alpha(surface, m, m, restr)


def leaf_tangent_dim(surface: SurfaceModel, m: SheafClass, restr: RestrictionData, dim_end: int = 1) -> int:
    """Dimension of the symplectic leaf through M: ``2 dim End(M) - chi_alpha(M, M)``."""
    if dim_end < 1:
        raise ConfigError("dim End(M) is at least 1")
    dim = 2 * dim_end - index_of_rigidity(surface, m, restr)
    if dim < 0:
        raise NegativeLength(f"leaf tangent dimension {dim} < 0: inconsistent input")
    return dim


@dataclass(frozen=True)
class RigidityReport:
    chi_alpha: int
    numeric_rigid: bool
    c1_squared: int
    c1_dot_k: int
    in_minus_two_search: bool
    coeff_bound: int
    disclaimer: str = INTEGRALITY_DISCLAIMER


def is_rigid_candidate(surface: SurfaceModel, m: SheafClass, restr: RestrictionData,
                       coeff_bound: int = 5) -> RigidityReport:
    """Numerical test for rigidity of a rank-0 sheaf disjoint from the anticanonical curve."""
    if m.rank != 0:
        raise RankNonzero(f"rigidity test needs rank 0, got rank {m.rank}")
    if restr.kind is not RestrictionKind.DISJOINT:
        raise ConfigError("rigidity test needs disjoint restriction data")
    meet = intersect(surface, m.c1, anticanonical_class(surface))
    if meet:
        raise NotDisjoint(f"c1.C_alpha = {meet}; the class cannot be disjoint from the anticanonical curve")
    value = index_of_rigidity(surface, m, restr)
    c1 = m.c1
    sq = intersect(surface, c1, c1)
    dk = intersect(surface, c1, canonical_class(surface))
    return RigidityReport(
        chi_alpha=value,
        numeric_rigid=value == 2,
        c1_squared=sq,
        c1_dot_k=dk,
        # same predicate as enumerate_minus_two_classes, without enumerating the box
        in_minus_two_search=sq == -2 and dk == 0 and _in_box(c1, coeff_bound),
        coeff_bound=coeff_bound,
    )


def _in_box(d: DivisorClass, bound: int) -> bool:
    return all(abs(c) <= bound for c in d.vector())
