import pytest

from pbc.errors import ConfigError, ForestError, PoissonViolation
from pbc.lattice import BlowupForest, BlowupNode, DivisorClass, intersect
from pbc.surface import (
    BaseCase, Subcase, SurfaceModel, anticanonical_class, classify_birational_type, h1_anticanonical,
    validate_poisson_blowup,
)

from conftest import chain, random_surface


def test_validate_blowup():
    y = SurfaceModel(BaseCase.F2_RATIONAL)
    assert validate_poisson_blowup(y, BlowupNode("p", True, 1))
    assert not validate_poisson_blowup(y, BlowupNode("p", False, 0))
    with pytest.raises(PoissonViolation):
        y.blow_up(BlowupNode("p", False, 0))


def test_child_multiplicity_cannot_grow():
    with pytest.raises(ForestError):
        SurfaceModel(BaseCase.F2_RATIONAL, 0, BlowupForest((BlowupNode("p", True, 1), BlowupNode(0, True, 2))))


def test_descendants_of_exhausted_site_rejected():
    # A point infinitely near an off-curve center can never be on the anticanonical curve.
    nodes = (BlowupNode("p", False, 0),)
    y = SurfaceModel(BaseCase.F2_RATIONAL)
    assert not validate_poisson_blowup(y, nodes[0])
    with pytest.raises(ForestError):
        BlowupForest(nodes + (BlowupNode(0, True, 1),))


def test_anticanonical_examples():
    assert anticanonical_class(SurfaceModel(BaseCase.STANDARD_RULED, 3)) == DivisorClass(2, 0, ())
    assert anticanonical_class(chain(2)) == DivisorClass(2, 0, (-1, -1))
    assert anticanonical_class(SurfaceModel(BaseCase.TRIVIAL_CANONICAL)).is_zero()


def test_anticanonical_self_intersection(rng):
    for _ in range(50):
        x = random_surface(rng, rng.randint(0, 8))
        a = anticanonical_class(x)
        assert a == DivisorClass(2, 0, (-1,) * x.n)
        assert intersect(x, a, a) == 8 * (1 - x.genus) - x.n


@pytest.mark.parametrize("g", [0, 1, 5])
def test_h1_anticanonical(g):
    assert h1_anticanonical(SurfaceModel(BaseCase.STANDARD_RULED, g)) == g + 1


def test_h1_undefined_for_trivial_canonical():
    with pytest.raises(ConfigError):
        h1_anticanonical(SurfaceModel(BaseCase.TRIVIAL_CANONICAL))


def test_case_constraints():
    with pytest.raises(ConfigError):
        SurfaceModel(BaseCase.F2_RATIONAL, 1)
    with pytest.raises(ConfigError):
        SurfaceModel(BaseCase.GENUS1_PRODUCT, 0)
    with pytest.raises(PoissonViolation):
        SurfaceModel(BaseCase.TRIVIAL_CANONICAL, 0, BlowupForest((BlowupNode("p"),)))


def test_classification_notes():
    r = classify_birational_type(SurfaceModel(BaseCase.F2_RATIONAL, subcase=Subcase.I1))
    assert "integral nodal" in r["class"] and "equivalent to I2" in r["class"]
    assert "equivalent to III" in classify_birational_type(
        SurfaceModel(BaseCase.F2_RATIONAL, subcase=Subcase.II))["class"]
    r = classify_birational_type(SurfaceModel(BaseCase.STANDARD_RULED, 2))
    assert r["notes"] == "ruling unique; only elementary transformations"
    r = classify_birational_type(SurfaceModel(BaseCase.TRIVIAL_CANONICAL))
    assert r["notes"] == "no nontrivial Poisson birational maps"


def test_chi_structure():
    assert SurfaceModel(BaseCase.F2_RATIONAL).chi_structure == 1
    assert SurfaceModel(BaseCase.GENUS1_PRODUCT, 1).chi_structure == 0
    assert SurfaceModel(BaseCase.STANDARD_RULED, 3).chi_structure == -2
