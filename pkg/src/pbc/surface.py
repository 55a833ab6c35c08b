"""Standard Poisson surfaces and Poisson-legal blowups of them."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .errors import ConfigError, PoissonViolation
from .lattice import BlowupForest, BlowupNode, DivisorClass, canonical_class


class BaseCase(enum.Enum):
    F2_RATIONAL = 1
    GENUS1_PRODUCT = 2
    STANDARD_RULED = 3
    TRIVIAL_CANONICAL = 4


class Subcase(enum.Enum):
    """Kodaira symbol of the anticanonical curve on F2 (metadata only)."""

    I0 = "I0"
    I1 = "I1"
    II = "II"
    I2 = "I2"
    III = "III"


@dataclass(frozen=True)
class SurfaceModel:
    base_case: BaseCase
    genus: int = 0
    forest: BlowupForest = field(default_factory=BlowupForest)
    subcase: Optional[Subcase] = None
    # Euler characteristic of O for case 4 (K3: 2, abelian: 0); ignored otherwise.
    trivial_canonical_chi: int = 2

    def __post_init__(self):
        if self.genus < 0:
            raise ConfigError("genus must be nonnegative")
        if self.base_case is BaseCase.F2_RATIONAL and self.genus != 0:
            raise ConfigError("F2_RATIONAL forces genus 0")
        if self.base_case is BaseCase.GENUS1_PRODUCT and self.genus != 1:
            raise ConfigError("GENUS1_PRODUCT forces genus 1")
        if self.subcase is not None and self.base_case is not BaseCase.F2_RATIONAL:
            raise ConfigError("Kodaira subcases only apply to F2_RATIONAL")
        if self.base_case is BaseCase.TRIVIAL_CANONICAL and len(self.forest):
            raise PoissonViolation("a surface with trivial anticanonical bundle admits no Poisson blowups")
        for i, node in enumerate(self.forest.nodes):
            if not _is_poisson_center(self.trivial_canonical, self.forest.nodes[:i], node):
                raise PoissonViolation(f"blowup node {i}: center is not on the anticanonical curve")

    @property
    def n(self) -> int:
        return len(self.forest)

    @property
    def trivial_canonical(self) -> bool:
        return self.base_case is BaseCase.TRIVIAL_CANONICAL

    @property
    def chi_structure(self) -> int:
        """Euler characteristic of the structure sheaf (a birational invariant)."""
        if self.base_case is BaseCase.F2_RATIONAL:
            return 1
        if self.base_case is BaseCase.GENUS1_PRODUCT:
            return 0
        if self.base_case is BaseCase.STANDARD_RULED:
            return 1 - self.genus
        return self.trivial_canonical_chi

    def prefix(self, k: int) -> SurfaceModel:
        """The intermediate surface after the first ``k`` blowups."""
        return SurfaceModel(self.base_case, self.genus, self.forest.prefix(k),
                            self.subcase, self.trivial_canonical_chi)

    def blow_up(self, node: BlowupNode) -> SurfaceModel:
        return SurfaceModel(self.base_case, self.genus, self.forest.append(node),
                            self.subcase, self.trivial_canonical_chi)


def validate_poisson_blowup(surface: SurfaceModel, node: BlowupNode) -> bool:
    """Whether ``node``, appended next, keeps ``pi^*C - e_pi`` effective."""
    return _is_poisson_center(surface.trivial_canonical, surface.forest.nodes, node)


def _is_poisson_center(trivial_canonical: bool, earlier: tuple[BlowupNode, ...], node: BlowupNode) -> bool:
    if trivial_canonical:
        return False
    if not node.on_anticanonical or node.multiplicity < 1:
        return False
    if node.is_base:
        return True
    if not 0 <= node.parent < len(earlier):
        return False
    parent = earlier[node.parent]
    return parent.on_anticanonical and parent.multiplicity >= 1


def anticanonical_class(surface: SurfaceModel) -> DivisorClass:
    return -canonical_class(surface)


def h1_anticanonical(surface: SurfaceModel) -> int:
    if surface.trivial_canonical:
        raise ConfigError("h1 of the anticanonical curve is undefined when it is empty")
    return surface.genus + 1


_SUBCASE_NOTES = {
    Subcase.I0: "smooth anticanonical curve",
    Subcase.I1: "integral nodal anticanonical; equivalent to I2",
    Subcase.I2: "two components meeting in a reduced scheme; equivalent to I1",
    Subcase.II: "integral cuspidal anticanonical; equivalent to III",
    Subcase.III: "two components meeting in a nonreduced scheme; equivalent to II",
}


def classify_birational_type(surface: SurfaceModel) -> dict:
    """Birational-equivalence metadata for the base case; no geometry is computed."""
    case = surface.base_case
    if case is BaseCase.F2_RATIONAL:
        cls = "rational"
        if surface.subcase is not None:
            cls += ", " + _SUBCASE_NOTES[surface.subcase]
        notes = "rich group of Poisson birational automorphisms"
    elif case is BaseCase.GENUS1_PRODUCT:
        cls = "C x P1 with C of genus 1; anticanonical = two disjoint fibers"
        notes = "ruling unique; only elementary transformations"
    elif case is BaseCase.STANDARD_RULED:
        cls = f"P(O_C + omega_C) over a curve of genus {surface.genus}; anticanonical = 2 C0"
        notes = "ruling unique; only elementary transformations"
        if surface.genus == 0:
            notes = "rational; rich group of Poisson birational automorphisms"
    else:
        cls = "minimal surface with trivial anticanonical bundle"
        notes = "no nontrivial Poisson birational maps"
    return {
        "base_case": case.name,
        "genus": surface.genus,
        "subcase": surface.subcase.value if surface.subcase else None,
        "class": cls,
        "notes": notes,
    }
