"""Pseudo-twists of numerical classes and the blowup loop that separates a
pure 1-dimensional sheaf from the anticanonical curve."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .errors import ConfigError, DimensionMismatch, MathError, NegativeLength, NotTransverse, RankNonzero
from .kclass import LiftDatum, SheafClass, minimal_lift_class
from .lattice import BlowupNode, DivisorClass, ExceptionalComponent, intersect
from .surface import SurfaceModel, anticanonical_class

NODE_PREFIX = "node:"


@dataclass(frozen=True)
class JetEntry:
    """A jet of ``length`` where the sheaf meets the anticanonical curve.

    ``site`` is either a base-point label or ``"node:<i>"`` for a point on the
    exceptional curve of node ``i`` (0-based).
    """

    site: str
    length: int
    on_anticanonical: bool = True

    def __post_init__(self):
        if self.length < 1:
            raise ConfigError(f"jet at {self.site!r} has length {self.length}; lengths are >= 1")

    @property
    def node(self) -> int | None:
        if self.site.startswith(NODE_PREFIX):
            return int(self.site[len(NODE_PREFIX):])
        return None


def site_key(site: str) -> tuple:
    """Total order on sites: base labels alphabetically, then nodes numerically."""
    if site.startswith(NODE_PREFIX):
        return (1, int(site[len(NODE_PREFIX):]), "")
    return (0, 0, site)


@dataclass(frozen=True)
class JetProfile:
    entries: tuple[JetEntry, ...] = ()

    def __post_init__(self):
        entries = tuple(sorted(self.entries, key=lambda j: site_key(j.site)))
        sites = [j.site for j in entries]
        if len(set(sites)) != len(sites):
            raise ConfigError(f"jet profile repeats a site: {sites}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, mapping: dict[str, int]) -> JetProfile:
        return cls(tuple(JetEntry(site, a) for site, a in mapping.items()))

    @property
    def total_length(self) -> int:
        return sum(j.length for j in self.entries)

    def lengths(self) -> dict[str, int]:
        return {j.site: j.length for j in self.entries}

    def __len__(self) -> int:
        return len(self.entries)


def _e_f(surface_x: SurfaceModel, f: Union[ExceptionalComponent, int]) -> DivisorClass:
    d = f.class_e_f if isinstance(f, ExceptionalComponent) else DivisorClass.exceptional(f, surface_x.n)
    if intersect(surface_x, d, d) != -1:
        raise MathError(f"pseudo-twist divisor {d} does not have self-intersection -1")
    return d


def _twist_length(surface_x: SurfaceModel, m_on_y: SheafClass, lift: SheafClass,
                  f: Union[ExceptionalComponent, int]) -> int:
    if lift.n != surface_x.n or m_on_y.n > surface_x.n:
        raise DimensionMismatch("class and lift do not match the blown-up surface")
    if lift.rank != m_on_y.rank or lift.chi != m_on_y.chi:
        raise MathError("lift does not have the rank and chi of the class it lifts")
    return intersect(surface_x, lift.c1, _e_f(surface_x, f))


def pseudo_twist_up(surface_x: SurfaceModel, m_on_y: SheafClass, lift: SheafClass,
                    f: Union[ExceptionalComponent, int]) -> tuple[SheafClass, int]:
    """Direct image of ``lift (x) L(e_f)``: an extension of ``r1`` copies of a point by M."""
    r1 = _twist_length(surface_x, m_on_y, lift, f)
    if r1 < 0:
        raise NegativeLength(f"r1 = {r1} < 0; lift datum is inconsistent")
    return SheafClass(m_on_y.rank, m_on_y.c1, m_on_y.chi + r1), r1


def pseudo_twist_down(surface_x: SurfaceModel, m_on_y: SheafClass, lift: SheafClass,
                      f: Union[ExceptionalComponent, int]) -> tuple[SheafClass, int]:
    """Direct image of ``lift (x) L(-e_f)``: the kernel of M onto ``r2`` copies of a point."""
    r2 = _twist_length(surface_x, m_on_y, lift, f) + m_on_y.rank
    if r2 < 0:
        raise NegativeLength(f"r2 = {r2} < 0; lift datum is inconsistent")
    return SheafClass(m_on_y.rank, m_on_y.c1, m_on_y.chi - r2), r2


@dataclass(frozen=True)
class ResolutionStep:
    node_index: int
    node: BlowupNode
    site: str
    direction: str
    r_value: int
    sheaf: SheafClass
    jets: JetProfile


@dataclass(frozen=True)
class ResolutionTrace:
    initial_surface: SurfaceModel
    initial_sheaf: SheafClass
    initial_jets: JetProfile
    steps: tuple[ResolutionStep, ...] = field(default=())
    final_surface: SurfaceModel | None = None

    @property
    def final_sheaf(self) -> SheafClass:
        return self.steps[-1].sheaf if self.steps else self.initial_sheaf

    @property
    def final_jets(self) -> JetProfile:
        return self.steps[-1].jets if self.steps else self.initial_jets


def _check_sites(surface: SurfaceModel, jets: JetProfile) -> None:
    used_base = surface.forest.base_sites()
    for j in jets.entries:
        if not j.on_anticanonical:
            raise NotTransverse(f"jet site {j.site!r} is not on the anticanonical curve")
        node = j.node
        if node is None:
            if j.site in used_base:
                raise ConfigError(f"jet site {j.site!r} names a point that has already been blown up")
        elif not 0 <= node < surface.n:
            raise ConfigError(f"jet site {j.site!r} names a node that does not exist")
        elif not surface.forest.nodes[node].on_anticanonical:
            raise NotTransverse(f"jet site {j.site!r} lies on an exceptional curve off the anticanonical curve")


def resolve_disjoint(surface: SurfaceModel, m: SheafClass, jets: JetProfile) -> ResolutionTrace:
    """Blow up intersection points one at a time until the minimal lift misses the anticanonical curve.

    Each step blows up the site carrying the longest jet (lowest site on ties)
    with ``dim Ext^1(O_p, M) = 1``; the minimal lift stays transverse to the new
    exceptional curve, so no pseudo-twist is applied (direction ``"none"``) and
    ``r_value`` records ``c1(lift).e``.  The residual jet of length ``a - 1``
    moves to the point of the new exceptional curve on the strict transform of
    the anticanonical curve.
    """
    if m.rank != 0:
        raise RankNonzero(f"resolution needs a rank-0 class, got rank {m.rank}")
    if m.n != surface.n:
        raise DimensionMismatch(f"class lives on n={m.n}, surface has n={surface.n}")
    _check_sites(surface, jets)
    meet = intersect(surface, m.c1, anticanonical_class(surface))
    if meet != jets.total_length:
        raise NotTransverse(
            f"jet lengths sum to {jets.total_length} but c1.C_alpha = {meet}; "
            "a transverse sheaf meets the anticanonical curve exactly in its jets")

    steps = []
    current_surface, current, lengths = surface, m, jets.lengths()
    while lengths:
        site = min(lengths, key=lambda s: (-lengths[s], site_key(s)))
        parent = int(site[len(NODE_PREFIX):]) if site.startswith(NODE_PREFIX) else site
        node = BlowupNode(parent, on_anticanonical=True, multiplicity=1)
        new_index = current_surface.n
        current_surface = current_surface.blow_up(node)
        current = minimal_lift_class(current, LiftDatum({new_index: 1}), current_surface)
        r_value = intersect(current_surface, current.c1, DivisorClass.exceptional(new_index, current_surface.n))
        a = lengths.pop(site)
        if a > 1:
            lengths[f"{NODE_PREFIX}{new_index}"] = a - 1
        steps.append(ResolutionStep(new_index, node, site, "none", r_value, current, JetProfile.of(lengths)))

    return ResolutionTrace(surface, m, jets, tuple(steps), current_surface)
