from fractions import Fraction

import pytest

from corpus import generate
from oracle import slice_dim
from qsplines.groebner import FreeModuleElement, Submodule
from qsplines.homogenization import bounded_slice_dim
from qsplines.poly import PolyRing, UnknownVariableError
from qsplines.quasispline import (
    DifferenceConditions,
    check_quasispline_algebra,
    restriction_compare,
    specialize,
    spline_kernel,
)

Qx = PolyRing(("x",))
Qzxy = PolyRing(("x", "y"), ("z",))
TRIANGLE = {(1, 2): ["x"], (2, 3): ["y"], (1, 3): ["x + y - z"]}
VS = [
    ["1", "1", "1"],
    ["0", "z*x - x^2", "z*x - x^2 - x*y"],
    ["0", "0", "z*y - x*y - y^2"],
    ["0", "x*y", "0"],
]


def simplest(gen="x^2"):
    return DifferenceConditions.from_strings(Qx, 2, {(1, 2): [gen]})


def test_simplest_kernel():
    s = spline_kernel(simplest())
    assert s.module.equals(Submodule(Qx, 2, [["1", "1"], ["0", "x^2"]]))
    for d in range(5):
        assert bounded_slice_dim(s, d) == slice_dim(1, 2, {(1, 2): {(2,): 1}}, d)


def test_triangle_contains_listed_elements():
    c = DifferenceConditions.from_strings(Qzxy, 3, TRIANGLE)
    s = spline_kernel(c)
    for v in VS:
        assert s.contains(FreeModuleElement(Qzxy, v))
        assert c.satisfied_by(FreeModuleElement(Qzxy, v))


def test_x2_plus_1_kernel():
    s = spline_kernel(simplest("x^2+1"))
    assert s.contains(FreeModuleElement(Qx, ["0", "x^2+1"]))
    assert s.contains(FreeModuleElement(Qx, ["1", "1"]))
    assert not s.contains(FreeModuleElement(Qx, ["0", "x"]))


def test_conditions_validation():
    with pytest.raises(ValueError):
        DifferenceConditions.from_strings(Qx, 2, {(2, 1): ["x"]})
    with pytest.raises(ValueError):
        DifferenceConditions.from_strings(Qx, 2, {(1, 3): ["x"]})
    c = DifferenceConditions.from_strings(Qx, 3, {(1, 2): ["x"]})
    assert c.ideal(2, 3).is_unit()
    assert c.violations(FreeModuleElement(Qx, ["1", "0", "5"])) == [(1, 2)]


def test_algebra_check():
    ok = check_quasispline_algebra(Submodule(Qx, 2, [["1", "1"], ["0", "x^2"]]))
    assert ok.ok
    bad = check_quasispline_algebra(Submodule(Qx, 2, [["0", "x"]]))
    assert not bad.ok and "diagonal" in bad.reason
    m = Submodule(Qx, 2, [["1", "1"], ["0", "x"]])
    assert check_quasispline_algebra(m).ok
    res = check_quasispline_algebra(m, simplest())
    assert not res.ok and "violates" in res.reason


def test_not_multiplication_closed():
    m = Submodule(Qx, 2, [["1", "1"], ["0", "x"], ["x", "0"]])
    assert check_quasispline_algebra(m).ok
    # (0, x, y)^2 = (0, x^2, y^2) is not in the span
    m = Submodule(PolyRing(("x", "y")), 3, [["1", "1", "1"], ["0", "x", "y"]])
    res = check_quasispline_algebra(m)
    assert not res.ok and res.product is not None


def test_specialize_examples():
    c = DifferenceConditions.from_strings(Qzxy, 3, TRIANGLE)
    sp = specialize(c, {"z": Fraction(0)})
    ring = sp.ring
    assert sp.ideal(1, 3).equals(type(sp.ideal(1, 3))(ring, ["x + y"]))
    assert sp.ideal(1, 2).gb() == (ring.parse("x"),)
    assert specialize(c, {}) is c
    sp1 = specialize(c, {"z": 1})
    assert sp1.ideal(1, 3).contains("x + y - 1")
    with pytest.raises(UnknownVariableError):
        specialize(c, {"x": 1})


def test_family_compare_triangle():
    c = DifferenceConditions.from_strings(Qzxy, 3, TRIANGLE)
    rep = restriction_compare(c, 0)
    assert rep.flat and rep.inclusion_proper
    w = FreeModuleElement(rep.special.ring, ["y", "y - x", "-x"])
    assert rep.special.contains(w) and not rep.restricted.contains(w)
    # the emitted witness is valid
    assert rep.special.contains(rep.witness) and not rep.restricted.contains(rep.witness)
    assert specialize(c, {"z": 0}).satisfied_by(rep.witness)


def test_family_compare_base_identified():
    ring = PolyRing(("x",), ("z",))
    c = DifferenceConditions.from_strings(ring, 2, {(1, 2): ["x^2"]}, base=["z - x"])
    rep = restriction_compare(c, 0)
    assert not rep.flat


def test_family_compare_isomorphism():
    ring = PolyRing(("x",), ("z",))
    c = DifferenceConditions.from_strings(ring, 2, {(1, 2): ["x - z"]})
    rep = restriction_compare(c, 0)
    assert rep.flat and not rep.inclusion_proper and rep.witness is None


def test_family_compare_needs_one_parameter():
    with pytest.raises(ValueError):
        restriction_compare(simplest(), 0)


# ----------------------------------------------------------------------------
# corpus properties


@pytest.mark.parametrize("inst", generate(7, 8) + generate(8, 4, homogeneous=True), ids=repr)
def test_kernel_is_quasispline_algebra(inst):
    c = inst.conditions
    s = spline_kernel(c)
    assert check_quasispline_algebra(s.module, c).ok
    for d in range(4):
        assert bounded_slice_dim(c, d) == slice_dim(inst.n, inst.s, inst.dicts, d)


def test_kernel_algebra_rank_four():
    ring = PolyRing(("x", "y"))
    c = DifferenceConditions.from_strings(
        ring, 4, {(1, 2): ["x"], (2, 3): ["y"], (3, 4): ["x - y"], (1, 4): ["x + y"]}
    )
    assert check_quasispline_algebra(spline_kernel(c).module, c).ok


PARAM_FAMILIES = [
    {(1, 2): ["x - z*y"]},
    {(1, 2): ["x"], (2, 3): ["y"], (1, 3): ["x + y - z"]},
    {(1, 2): ["x^2 - z*y"], (1, 3): ["y + z"]},
    {(1, 2): ["x*y + z"], (2, 3): ["x - z"]},
]


@pytest.mark.parametrize("ideals", PARAM_FAMILIES, ids=str)
@pytest.mark.parametrize("value", [-1, 0, Fraction(1, 2), 2])
def test_specialization_inclusion(ideals, value):
    s = max(k for _, k in ideals)
    c = DifferenceConditions.from_strings(Qzxy, s, ideals)
    generic = spline_kernel(c).module
    special = spline_kernel(specialize(c, {"z": Fraction(value)})).module
    for g in generic.gb():
        assert special.contains(g.substitute({"z": Fraction(value)}))
