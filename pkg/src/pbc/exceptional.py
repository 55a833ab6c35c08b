"""Numerical shadow of the category of sheaves killed by ``R pi_*``.

Such sheaves have rank 0 and chi 0, so a class is just an exceptional
divisor; its coordinates in the component basis are the composition
multiplicities of the simple objects ``O_f(-1)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ConfigError, MathError, SizeLimitError
from .lattice import DivisorClass, component_coordinates, dual_component, e_pi, intersect
from .surface import SurfaceModel

MAX_LATTICE_BLOWUPS = 20


@dataclass(frozen=True)
class ExceptionalClass:
    c1: DivisorClass
    multiplicities: tuple[int, ...]


def exceptional_class(surface: SurfaceModel, c1: DivisorClass) -> ExceptionalClass:
    return ExceptionalClass(c1, component_coordinates(surface, c1))


def composition_multiplicities(surface: SurfaceModel, c1: DivisorClass) -> tuple[int, ...]:
    """How often each ``O_f(-1)`` occurs in a composition series of a sheaf with class ``c1``."""
    coords = component_coordinates(surface, c1)
    if any(c < 0 for c in coords):
        raise MathError(f"class {c1} has negative multiplicities {coords}; not an exceptional sheaf")
    return coords


def projective_class(surface: SurfaceModel, f: int) -> ExceptionalClass:
    return exceptional_class(surface, dual_component(surface, f))


def injective_class(surface: SurfaceModel, f: int) -> ExceptionalClass:
    # Duality E -> Ext^1(E, omega_X) swaps P_f and I_f and preserves c1.
    return exceptional_class(surface, dual_component(surface, f))


def orthonormal_divisor(surface: SurfaceModel, f: int) -> DivisorClass:
    """``e_f``: the effective exceptional divisor with ``e_f^2 = e_f.f = -1``."""
    return DivisorClass.exceptional(f, surface.n)


def subset_divisor(surface: SurfaceModel, subset: Sequence[int]) -> DivisorClass:
    d = DivisorClass.zero(surface.n)
    for f in subset:
        d = d + orthonormal_divisor(surface, f)
    return d


def iter_subsheaf_lattice(surface: SurfaceModel) -> Iterator[tuple[tuple[int, ...], DivisorClass]]:
    """Exceptional subsheaves of ``pi^! O_Y / O_X`` as ``(S, sum_{f in S} e_f)``.

    Ordered by subset size, then lexicographically.
    """
    n = surface.n
    if n > MAX_LATTICE_BLOWUPS:
        raise SizeLimitError(f"subsheaf lattice has 2^{n} elements; limit is n <= {MAX_LATTICE_BLOWUPS}")
    for k in range(n + 1):
        for subset in itertools.combinations(range(n), k):
            yield subset, subset_divisor(surface, subset)


def subsheaf_lattice(surface: SurfaceModel) -> list[tuple[tuple[int, ...], DivisorClass]]:
    return list(iter_subsheaf_lattice(surface))


def chain_for_ordering(surface: SurfaceModel, ordering: Sequence[int]) -> list[ExceptionalClass]:
    """The maximal chain ``0 = E_0 < ... < E_n`` whose i-th step adds ``e_{f_i}``."""
    if sorted(ordering) != list(range(surface.n)):
        raise ConfigError(f"{list(ordering)} is not a permutation of the {surface.n} components")
    chain = [exceptional_class(surface, DivisorClass.zero(surface.n))]
    for f in ordering:
        chain.append(exceptional_class(surface, chain[-1].c1 + orthonormal_divisor(surface, f)))
    return chain


def maximal_chains(surface: SurfaceModel) -> Iterator[list[ExceptionalClass]]:
    for ordering in itertools.permutations(range(surface.n)):
        yield chain_for_ordering(surface, ordering)


def chain_count(surface: SurfaceModel) -> int:
    return math.factorial(surface.n)


def hom_length(surface: SurfaceModel, f: int, g: int) -> int:
    """Length of ``Hom(P_f, E_i/E_{i-1})`` for a subquotient with class ``e_g``.

    The raw pairing ``f^vee . e_g`` is nonpositive for this sign convention;
    the absolute value is the length.
    """
    return abs(intersect(surface, dual_component(surface, f), orthonormal_divisor(surface, g)))


def jet_degree(surface: SurfaceModel, f: int) -> int:
    return abs(intersect(surface, dual_component(surface, f), e_pi(surface)))
