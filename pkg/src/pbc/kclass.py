"""Numerical K-theory classes ``(rank, c1, chi)`` and their transforms along blowups."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import DimensionMismatch, NegativeLength, ParityError
from .lattice import DivisorClass, canonical_class, e_pi, intersect
from .surface import SurfaceModel


@dataclass(frozen=True)
class SheafClass:
    rank: int
    c1: DivisorClass
    chi: int

    def __post_init__(self):
        if self.rank < 0:
            raise NegativeLength(f"negative rank {self.rank}")

    @property
    def n(self) -> int:
        return self.c1.n

    def is_pure_one_dimensional(self) -> bool:
        return self.rank == 0 and not self.c1.is_zero()


@dataclass(frozen=True)
class LiftDatum:
    """``dim Ext^1(O_p, M)`` for each blown-up node ``p``; absent nodes count as 0."""

    multiplicities: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "multiplicities", dict(sorted(self.multiplicities.items())))
        for node, m in self.multiplicities.items():
            if m < 0:
                raise NegativeLength(f"negative Ext^1 dimension {m} at node {node}")

    def get(self, node: int) -> int:
        return self.multiplicities.get(node, 0)

    def merge(self, other: LiftDatum) -> LiftDatum:
        overlap = set(self.multiplicities) & set(other.multiplicities)
        if overlap:
            raise ValueError(f"lift data overlap on nodes {sorted(overlap)}")
        return LiftDatum({**self.multiplicities, **other.multiplicities})


def structure_sheaf(surface: SurfaceModel) -> SheafClass:
    return SheafClass(1, DivisorClass.zero(surface.n), surface.chi_structure)


def _lift_c1(m: SheafClass, surface_x: SurfaceModel) -> DivisorClass:
    if m.n > surface_x.n:
        raise DimensionMismatch(f"class lives on n={m.n}, target surface has n={surface_x.n}")
    return m.c1.extend(surface_x.n)


def pullback_class(m: SheafClass, surface_x: SurfaceModel) -> SheafClass:
    # R pi_* pi^* M = M, so chi is unchanged.
    return SheafClass(m.rank, _lift_c1(m, surface_x), m.chi)


def shriek_class(m: SheafClass, surface_x: SurfaceModel) -> SheafClass:
    """``pi^! M = pi^* M (x) omega_X (x) pi^* omega_Y^{-1}``; only the new nodes contribute."""
    c1 = _lift_c1(m, surface_x)
    return SheafClass(m.rank, c1 + m.rank * e_pi(surface_x, m.n), m.chi)


def minimal_lift_class(m: SheafClass, lift: LiftDatum, surface_x: SurfaceModel) -> SheafClass:
    """Class of the minimal lift: ``pi^*[M]`` minus ``m_i [O_{e_i}(-1)]`` for each new node."""
    c1 = _lift_c1(m, surface_x)
    for node, mult in lift.multiplicities.items():
        if not m.n <= node < surface_x.n:
            raise DimensionMismatch(
                f"lift datum names node {node}, but only nodes {m.n}..{surface_x.n - 1} are blown up here")
        if mult:
            c1 = c1 - mult * DivisorClass.exceptional(node, surface_x.n)
    return SheafClass(m.rank, c1, m.chi)


def twist_class(surface: SurfaceModel, m: SheafClass, d: DivisorClass) -> SheafClass:
    """Tensor with the line bundle ``L(D)``; Riemann-Roch gives the change in chi."""
    dd = intersect(surface, d, d)
    dk = intersect(surface, d, canonical_class(surface))
    if (dd - dk) % 2:
        raise ParityError(f"D^2 - D.K = {dd - dk} is odd for D = {d}")
    chi = m.chi + intersect(surface, m.c1, d) + m.rank * (dd - dk) // 2
    return SheafClass(m.rank, m.c1 + m.rank * d, chi)


def ext_euler(surface: SurfaceModel, m: SheafClass, n: SheafClass) -> int:
    """``hom(N, M) - ext^1(N, M) + ext^2(N, M)`` by Hirzebruch-Riemann-Roch."""
    k = canonical_class(surface)
    return (-surface.chi_structure * m.rank * n.rank
            + m.chi * n.rank + m.rank * n.chi
            - intersect(surface, m.c1, n.c1)
            + m.rank * intersect(surface, k, n.c1))
