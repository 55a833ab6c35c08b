import os
import random

import pytest
from hypothesis import strategies as st

from pbc.kclass import SheafClass
from pbc.lattice import BlowupForest, BlowupNode, DivisorClass, intersect
from pbc.pseudo_twist import JetEntry, JetProfile
from pbc.surface import BaseCase, SurfaceModel, anticanonical_class

SEED = int(os.environ.get("PBC_SEED", "20240611"))

BASE_LABELS = ("p", "q", "r", "t")


def random_forest(rng: random.Random, n: int) -> BlowupForest:
    nodes = []
    for i in range(n):
        if i == 0 or rng.random() < 0.4:
            nodes.append(BlowupNode(rng.choice(BASE_LABELS), True, rng.randint(1, 2)))
        else:
            parent = rng.randrange(i)
            nodes.append(BlowupNode(parent, True, rng.randint(1, nodes[parent].multiplicity)))
    return BlowupForest(tuple(nodes))


def random_surface(rng: random.Random, n: int) -> SurfaceModel:
    case = rng.choice([BaseCase.F2_RATIONAL, BaseCase.GENUS1_PRODUCT, BaseCase.STANDARD_RULED])
    genus = {BaseCase.F2_RATIONAL: 0, BaseCase.GENUS1_PRODUCT: 1}.get(case, rng.randint(0, 4))
    return SurfaceModel(case, genus, random_forest(rng, n))


def chain(n: int, case=BaseCase.F2_RATIONAL, genus=0) -> SurfaceModel:
    nodes = [BlowupNode("p")] + [BlowupNode(i) for i in range(n - 1)]
    return SurfaceModel(case, genus, BlowupForest(tuple(nodes[:n])))


def independent(n: int, case=BaseCase.F2_RATIONAL, genus=0) -> SurfaceModel:
    return SurfaceModel(case, genus, BlowupForest(tuple(BlowupNode(f"p{i}") for i in range(n))))


def random_class(rng, n, rank=None):
    return SheafClass(
        rng.randint(0, 3) if rank is None else rank,
        DivisorClass(rng.randint(-3, 3), rng.randint(-3, 3), tuple(rng.randint(-2, 2) for _ in range(n))),
        rng.randint(-5, 5),
    )


def random_resolution_instance(rng, max_total=12):
    x = random_surface(rng, rng.randint(0, 4))
    free = [b for b in BASE_LABELS + ("u", "v", "w") if b not in x.forest.base_sites()]
    sites = rng.sample(free, rng.randint(0, min(4, len(free))))
    sites += [f"node:{i}" for i in rng.sample(range(x.n), rng.randint(0, x.n))]
    entries, total = [], 0
    for s in sites:
        a = rng.randint(1, 4)
        if total + a > max_total:
            break
        entries.append(JetEntry(s, a))
        total += a
    jets = JetProfile(tuple(entries))
    s2 = 2 - 2 * x.genus
    a = rng.randint(-2, 2)
    es = [rng.randint(-2, 2) for _ in range(x.n)]
    if (total - sum(es)) % 2:
        if not es:
            return random_resolution_instance(rng, max_total)
        es[0] += 1
    b = (total - sum(es)) // 2 - a * s2
    m = SheafClass(0, DivisorClass(a, b, tuple(es)), rng.randint(-3, 3))
    assert intersect(x, m.c1, anticanonical_class(x)) == total
    return x, m, jets


@st.composite
def surfaces(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    return random_surface(random.Random(draw(st.integers(0, 2**32 - 1))), n)


@pytest.fixture
def rng():
    return random.Random(SEED)
