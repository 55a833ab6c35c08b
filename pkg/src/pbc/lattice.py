"""Néron-Severi lattice of a blown-up standard Poisson surface.

Classes are integer vectors in the basis ``s, f, e_1 .. e_n`` where ``s`` is a
section with ``s^2 = 2 - 2g``, ``f`` a fiber (``f^2 = 0``, ``s.f = 1``) and the
``e_i`` are total transforms of the exceptional curves (``e_i.e_j = -delta_ij``,
orthogonal to ``s`` and ``f``).  Node indices are 0-based in the Python API;
text renderings use the 1-based labels ``e1 .. en``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator, Sequence, Union

from .errors import DimensionMismatch, ForestError, MathError

if TYPE_CHECKING:
    from .surface import SurfaceModel


@dataclass(frozen=True)
class DivisorClass:
    s: int = 0
    f: int = 0
    e: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "e", tuple(int(c) for c in self.e))

    @classmethod
    def zero(cls, n: int) -> DivisorClass:
        return cls(0, 0, (0,) * n)

    @classmethod
    def exceptional(cls, i: int, n: int) -> DivisorClass:
        """Total transform ``e_{i+1}`` of the exceptional curve of node ``i``."""
        if not 0 <= i < n:
            raise DimensionMismatch(f"node index {i} out of range for n={n}")
        e = [0] * n
        e[i] = 1
        return cls(0, 0, tuple(e))

    @classmethod
    def from_vector(cls, vec: Sequence[int]) -> DivisorClass:
        return cls(vec[0], vec[1], tuple(vec[2:]))

    @property
    def n(self) -> int:
        return len(self.e)

    def vector(self) -> tuple[int, ...]:
        return (self.s, self.f) + self.e

    def is_zero(self) -> bool:
        return self.s == 0 and self.f == 0 and not any(self.e)

    def in_exceptional_span(self) -> bool:
        return self.s == 0 and self.f == 0

    def extend(self, n: int) -> DivisorClass:
        """Pull back along further blowups: append zero ``e`` coefficients."""
        if n < self.n:
            raise DimensionMismatch(f"cannot pull back a class on n={self.n} to n={n}")
        return DivisorClass(self.s, self.f, self.e + (0,) * (n - self.n))

    def _check(self, other: DivisorClass) -> None:
        if self.n != other.n:
            raise DimensionMismatch(f"classes live on surfaces with n={self.n} and n={other.n}")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(self.s + other.s, self.f + other.f,
                            tuple(a + b for a, b in zip(self.e, other.e)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return self + (-other)

    def __neg__(self) -> DivisorClass:
        return DivisorClass(-self.s, -self.f, tuple(-c for c in self.e))

    def __mul__(self, k: int) -> DivisorClass:
        return DivisorClass(k * self.s, k * self.f, tuple(k * c for c in self.e))

    __rmul__ = __mul__

    def __str__(self) -> str:
        terms = [(self.s, "s"), (self.f, "f")]
        terms += [(c, f"e{i + 1}") for i, c in enumerate(self.e)]
        out = ""
        for c, name in terms:
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            if not out:
                out = ("-" if c < 0 else "") + mag + name
            else:
                out += (" - " if c < 0 else " + ") + mag + name
        return out or "0"


@dataclass(frozen=True)
class BlowupNode:
    """One monoidal transformation.

    ``parent`` is either a base-site label (``str``, a point of the minimal
    surface) or the index of an earlier node whose exceptional curve contains
    the center.
    """

    parent: Union[str, int]
    on_anticanonical: bool = True
    multiplicity: int = 1

    @property
    def is_base(self) -> bool:
        return isinstance(self.parent, str)


@dataclass(frozen=True)
class BlowupForest:
    nodes: tuple[BlowupNode, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        for i, node in enumerate(self.nodes):
            where = f"blowup node {i}"
            if isinstance(node.parent, bool) or not isinstance(node.parent, (str, int)):
                raise ForestError(f"{where}: parent must be a base-site label or a node index")
            if not node.is_base and not 0 <= node.parent < i:
                raise ForestError(f"{where}: parent index {node.parent} must refer to an earlier node")
            if node.multiplicity < 0:
                raise ForestError(f"{where}: negative anticanonical multiplicity")
            if node.on_anticanonical and node.multiplicity < 1:
                raise ForestError(f"{where}: on the anticanonical curve but multiplicity {node.multiplicity}")
            if not node.on_anticanonical and node.multiplicity != 0:
                raise ForestError(f"{where}: off the anticanonical curve but multiplicity {node.multiplicity}")
            if not node.is_base and node.multiplicity > self.nodes[node.parent].multiplicity:
                raise ForestError(
                    f"{where}: multiplicity {node.multiplicity} exceeds parent node "
                    f"{node.parent} multiplicity {self.nodes[node.parent].multiplicity}")

    def __len__(self) -> int:
        return len(self.nodes)

    def append(self, node: BlowupNode) -> BlowupForest:
        return BlowupForest(self.nodes + (node,))

    def prefix(self, k: int) -> BlowupForest:
        return BlowupForest(self.nodes[:k])

    def children(self, i: int) -> list[int]:
        return [j for j, node in enumerate(self.nodes) if not node.is_base and node.parent == i]

    def ancestors(self, i: int) -> list[int]:
        """Node ``i`` followed by its parent, grandparent, ... up to a base point."""
        chain = [i]
        while not self.nodes[chain[-1]].is_base:
            chain.append(self.nodes[chain[-1]].parent)
        return chain

    def base_sites(self) -> set[str]:
        return {node.parent for node in self.nodes if node.is_base}


@dataclass(frozen=True)
class ExceptionalComponent:
    index: int
    class_f: DivisorClass
    class_f_dual: DivisorClass
    class_e_f: DivisorClass


def _check_on(surface: SurfaceModel, *classes: DivisorClass) -> None:
    for d in classes:
        if d.n != surface.n:
            raise DimensionMismatch(f"class {d} has {d.n} exceptional coefficients, surface has n={surface.n}")


def intersect(surface: SurfaceModel, a: DivisorClass, b: DivisorClass) -> int:
    _check_on(surface, a, b)
    s2 = 2 - 2 * surface.genus
    return (a.s * b.s * s2 + a.s * b.f + a.f * b.s
            - sum(x * y for x, y in zip(a.e, b.e)))


def self_intersection(surface: SurfaceModel, a: DivisorClass) -> int:
    return intersect(surface, a, a)


def canonical_class(surface: SurfaceModel) -> DivisorClass:
    if surface.trivial_canonical:
        return DivisorClass.zero(surface.n)
    return DivisorClass(-2, 0, (1,) * surface.n)


def e_pi(surface: SurfaceModel, start: int = 0) -> DivisorClass:
    """Relative canonical divisor ``K_X - pi^*K_Y`` of the blowups ``start .. n-1``."""
    return DivisorClass(0, 0, (0,) * start + (1,) * (surface.n - start))


def component_class(surface: SurfaceModel, i: int) -> DivisorClass:
    """Strict transform ``f_i = e_i - sum of e_j over children j of i``."""
    coeffs = [0] * surface.n
    coeffs[i] = 1
    for j in surface.forest.children(i):
        coeffs[j] = -1
    return DivisorClass(0, 0, tuple(coeffs))


def component_coordinates(surface: SurfaceModel, d: DivisorClass) -> tuple[int, ...]:
    """Coordinates of an exceptional class in the basis of components ``f_i``.

    Since ``e_i`` is the sum of ``f_j`` over the subtree rooted at ``i``, the
    coefficient of ``f_j`` is the sum of the ``e`` coefficients along the
    ancestor chain of ``j``.
    """
    _check_on(surface, d)
    if not d.in_exceptional_span():
        raise MathError(f"class {d} is not supported on the exceptional locus")
    forest = surface.forest
    return tuple(sum(d.e[a] for a in forest.ancestors(j)) for j in range(surface.n))


def dual_component(surface: SurfaceModel, i: int) -> DivisorClass:
    """The exceptional class pairing to ``-delta`` with every component.

    Writing the unknown as ``sum x_j e_j``, the equations ``x . f_g = -delta``
    read ``x_g - sum_{children c of g} x_c = delta_{g,i}``; children have larger
    indices, so back-substitution from the last node solves the system exactly.
    """
    n = surface.n
    if not 0 <= i < n:
        raise DimensionMismatch(f"no exceptional component {i} on a surface with n={n}")
    children = [surface.forest.children(g) for g in range(n)]
    x = [0] * n
    for g in reversed(range(n)):
        x[g] = (1 if g == i else 0) + sum(x[c] for c in children[g])
    dual = DivisorClass(0, 0, tuple(x))
    if any(c < 0 for c in component_coordinates(surface, dual)):
        raise MathError(f"dual of component {i} is not effective; forest data is corrupt")
    return dual


def exceptional_components(surface: SurfaceModel) -> list[ExceptionalComponent]:
    return [
        ExceptionalComponent(
            index=i,
            class_f=component_class(surface, i),
            class_f_dual=dual_component(surface, i),
            class_e_f=DivisorClass.exceptional(i, surface.n),
        )
        for i in range(surface.n)
    ]


def intersection_matrix(surface: SurfaceModel) -> list[list[int]]:
    """Gram matrix of the basis ``s, f, e_1 .. e_n``."""
    dim = surface.n + 2
    basis = [DivisorClass.from_vector([int(k == j) for k in range(dim)]) for j in range(dim)]
    return [[intersect(surface, a, b) for b in basis] for a in basis]


def enumerate_minus_one_divisors(surface: SurfaceModel, coeff_bound: int = 2) -> list[DivisorClass]:
    """Effective exceptional divisors ``D = sum c_i f_i`` (``0 <= c_i <= bound``) with ``D^2 = -1``.

    In total-transform coordinates ``D = sum (c_i - c_parent(i)) e_i``, so
    ``-D^2`` accumulates one square per node and the search prunes as soon as
    it exceeds 1.
    """
    n = surface.n
    forest = surface.forest
    found: list[DivisorClass] = []
    coeffs = [0] * n

    def walk(i: int, deficit: int) -> None:
        if i == n:
            if deficit == 1:
                e = tuple(c - (0 if forest.nodes[j].is_base else coeffs[forest.nodes[j].parent])
                          for j, c in enumerate(coeffs))
                found.append(DivisorClass(0, 0, e))
            return
        node = forest.nodes[i]
        parent_c = 0 if node.is_base else coeffs[node.parent]
        for c in range(coeff_bound + 1):
            step = (c - parent_c) ** 2
            if deficit + step > 1:
                continue
            coeffs[i] = c
            walk(i + 1, deficit + step)
        coeffs[i] = 0

    walk(0, 0)
    return sorted(found, key=DivisorClass.vector)


def _vectors_with_norm(k: int, bound: int, sq: int, total: int | None) -> Iterator[tuple[int, ...]]:
    """Integer vectors of length ``k``, entries in ``[-bound, bound]``, with the
    given sum of squares and (optionally) the given sum, in lexicographic order."""
    if k == 0:
        if sq == 0 and (total is None or total == 0):
            yield ()
        return
    if sq < 0:
        return
    if total is not None:
        if total * total > k * sq or (total - sq) % 2:
            return
    top = min(bound, math.isqrt(sq))
    for c in range(-top, top + 1):
        rest_total = None if total is None else total - c
        for tail in _vectors_with_norm(k - 1, bound, sq - c * c, rest_total):
            yield (c,) + tail


def enumerate_minus_two_classes(surface: SurfaceModel, coeff_bound: int = 5) -> list[DivisorClass]:
    """Numerical ``-2``-classes: ``D^2 = -2`` and ``D.K = 0`` inside a coefficient box.

    Effectivity is not decided.  For each ``(s, f)`` pair the ``e`` part must
    have a prescribed sum of squares and (unless ``K = 0``) a prescribed sum.
    """
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be >= 1")
    s2 = 2 - 2 * surface.genus
    out = []
    for a in range(-coeff_bound, coeff_bound + 1):
        for b in range(-coeff_bound, coeff_bound + 1):
            sq = s2 * a * a + 2 * a * b + 2
            total = None if surface.trivial_canonical else -2 * (s2 * a + b)
            for e in _vectors_with_norm(surface.n, coeff_bound, sq, total):
                out.append(DivisorClass(a, b, e))
    return sorted(out, key=DivisorClass.vector)
