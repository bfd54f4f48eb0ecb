from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from corpus import homogeneous_corpus
from oracle import slice_dim
from qsplines.hilbert import hilbert_function, hilbert_series
from qsplines.homogenization import homogenize
from qsplines.poly import PolyRing
from qsplines.quasispline import DifferenceConditions, specialize, spline_kernel
from qsplines.strata import (
    delta_matrix,
    free_slice_dim,
    generic_rank,
    rank_exact,
    spline_dimension,
    sweep,
)
from qsplines.univariate import UPoly

Qxz = PolyRing(("x", "z"))
Qxy_z = PolyRing(("x", "y"), ("z",))
TRIANGLE = {(1, 2): ["x"], (2, 3): ["y"], (1, 3): ["x + y - z"]}


def triangle_h():
    return homogenize(DifferenceConditions.from_strings(Qxy_z, 3, TRIANGLE))


def test_delta_matrix_simplest():
    c = DifferenceConditions.from_strings(Qxz, 2, {(1, 2): ["x^2"]})
    m = delta_matrix(c, 1)
    assert m.shape == (2, 4)
    assert sorted(e for _, e in m.rows) == [(0, 1), (1, 0)]
    assert rank_exact(m) == 2
    assert spline_dimension(c, 1) == 2
    assert spline_dimension(c, 3) == 6


def test_delta_matrix_degree_zero():
    ring = PolyRing(("x", "y"))
    c = DifferenceConditions.from_strings(ring, 3, {(1, 2): ["x"], (2, 3): ["y"]})
    m = delta_matrix(c, 0)
    assert rank_exact(m) == 2 and spline_dimension(c, 0) == 1


def test_delta_matrix_unit_ideal():
    c = DifferenceConditions.from_strings(Qxz, 2, {(1, 2): ["1"]})
    m = delta_matrix(c, 2)
    assert m.shape[0] == 0 and rank_exact(m) == 0
    assert spline_dimension(c, 2) == 6


def test_matrix_shape_bookkeeping():
    c = triangle_h()
    sp = specialize(c, {"z": Fraction(1)})
    for d in range(4):
        m = delta_matrix(sp, d)
        rows = sum(len(sp.ideal(j, k).standard_monomials(d)) for j, k in sp.pairs)
        assert m.shape == (rows, 3 * free_slice_dim(sp.ring, d))


def test_inhomogeneous_rejected():
    c = DifferenceConditions.from_strings(Qxz, 2, {(1, 2): ["x^2 + z"]})
    with pytest.raises(ValueError):
        delta_matrix(c, 1)


def test_rank_examples():
    z = UPoly.t()
    assert generic_rank([[z]]) == 1
    assert generic_rank([[z, UPoly.const(1)], [z, UPoly.const(1)]]) == 1
    assert generic_rank([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]) == 2
    with pytest.raises(ValueError):
        rank_exact(delta_matrix(triangle_h(), 1))


def test_triangle_rank_drop_at_zero():
    c = triangle_h()
    m = delta_matrix(c, 2)
    g = generic_rank(m)
    at0 = rank_exact(delta_matrix(specialize(c, {"z": Fraction(0)}), 2))
    at1 = rank_exact(delta_matrix(specialize(c, {"z": Fraction(1)}), 2))
    assert g > at0 and g == at1
    # confirm against kernel slice dimensions
    for v, r in [(0, at0), (1, at1)]:
        sp = specialize(c, {"z": Fraction(v)})
        hs = hilbert_series(spline_kernel(sp).module, of="module")
        assert hilbert_function(hs, 2) == 3 * free_slice_dim(sp.ring, 2) - r


def test_sweep_triangle():
    res = sweep(triangle_h(), [-1, 0, 1], range(4))
    assert res.stratum_of[Fraction(-1)] == res.stratum_of[Fraction(1)]
    assert res.stratum_of[Fraction(0)] != res.stratum_of[Fraction(1)]
    assert any(a > b for a, b in zip(res.dims(0), res.dims(1)))
    assert res.generic_points() == [Fraction(-1), Fraction(1)]
    assert res.strata == [[Fraction(-1), Fraction(1)], [Fraction(0)]]


def test_sweep_constant_family_single_stratum():
    ring = PolyRing(("x", "y"), ("z",))
    c = DifferenceConditions.from_strings(ring, 2, {(1, 2): ["x^2"]})
    res = sweep(c, [-2, 0, 3], range(4))
    assert len(res.strata) == 1


def test_sweep_single_stratum_principal():
    c = DifferenceConditions.from_strings(Qxy_z, 2, {(1, 2): ["x - z*y"]})
    res = sweep(c, [0, 1], range(5))
    assert len(res.strata) == 1
    for v in (0, 1):
        sp = specialize(c, {"z": Fraction(v)})
        f = {(1, 0): 1} if v == 0 else {(1, 0): 1, (0, 1): -1}
        assert list(res.dims(v)) == [slice_dim(2, 2, {(1, 2): f}, d, exact=True) for d in range(5)]


def test_sweep_executor_matches_serial():
    c = triangle_h()
    serial = sweep(c, [-1, 0, 1, 2], range(3))
    with ThreadPoolExecutor(4) as ex:
        par = sweep(c, [-1, 0, 1, 2], range(3), executor=ex)
    assert serial.to_csv() == par.to_csv()
    assert serial.to_dict() == par.to_dict()


def test_sweep_csv_shape():
    c = triangle_h()
    res = sweep(c, [0, 1], [1, 2])
    lines = res.to_csv().splitlines()
    assert lines[0] == "value,d,rank,splineDim,stratumId"
    assert len(lines) == 1 + 2 * 2
    for line in lines[1:]:
        v, d, r, dim, sid = line.split(",")
        assert int(dim) == 3 * free_slice_dim(c.ring, int(d)) - int(r)


@pytest.mark.parametrize("inst", homogeneous_corpus(), ids=repr)
def test_spline_dimension_equals_kernel_slice(inst):
    c = inst.conditions
    hs = hilbert_series(spline_kernel(c).module, of="module")
    for d in range(7):
        dim = spline_dimension(c, d)
        assert dim == hilbert_function(hs, d)
        assert dim == slice_dim(inst.n, inst.s, inst.dicts, d, exact=True)


FAMILIES = [
    {(1, 2): ["x - z*y"]},
    {(1, 2): ["x^2 + z*x*y"], (2, 3): ["y + (z+2)*x"]},
    {(1, 2): ["x"], (2, 3): ["y"], (1, 3): ["x + y - z*y"]},
    {(1, 2): ["x*y - z*y^2"], (1, 3): ["(z^2+1)*x + y"]},
]


@pytest.mark.parametrize("ideals", FAMILIES, ids=str)
def test_semicontinuity(ideals):
    s = max(k for _, k in ideals)
    c = DifferenceConditions.from_strings(Qxy_z, s, ideals)
    res = sweep(c, [-1, Fraction(-1, 2), 0, 1, 3], range(5))
    generic = [r for _, r, _ in res.generic]
    for v in res.grid:
        for (_, r, _), g in zip(res.per_point[v], generic):
            assert r <= g
