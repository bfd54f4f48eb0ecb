import random
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import homogeneous_corpus
from qsplines.groebner import Ideal, Submodule, unit_vector
from qsplines.hilbert import (
    HilbertSeries,
    NotHilbertPolynomialError,
    NotHomogeneousError,
    cokernel_identity_check,
    gotzmann_expansion,
    gotzmann_number,
    gotzmann_sum,
    hilbert_function,
    hilbert_polynomial,
    hilbert_series,
    monomial_numerator,
    nl_polynomials,
    quasispline_hilbert_data,
    regularity_bound,
)
from qsplines.poly import PolyRing
from qsplines.quasispline import spline_kernel
from qsplines.univariate import UPoly

Qxy = PolyRing(("x", "y"))
Qxz = PolyRing(("x", "z"))
Qxyz = PolyRing(("x", "y", "z"))
U = UPoly.parse


def test_series_examples():
    hs = hilbert_series(Ideal(Qxy, ["x^2"]))
    assert hs == HilbertSeries((1, 0, -1), 2)
    assert [hilbert_function(hs, d) for d in range(5)] == [1, 2, 2, 2, 2]
    assert hilbert_series(Qxz) == HilbertSeries((1,), 2)
    free = Submodule.free(Qxz, 2)
    assert hilbert_series(free, shifts=[1, 1], of="module") == HilbertSeries((0, 2), 2)


def test_function_examples():
    hs = hilbert_series(Ideal(Qxz, ["x^2"]))
    assert hilbert_function(hs, 3) == 2
    assert hilbert_function(hs, -1) == 0
    assert hilbert_function(hilbert_series(Qxz), 5) == 6


def test_polynomial_examples():
    assert hilbert_polynomial(hilbert_series(Qxz)).poly == U("t + 1")
    hp = hilbert_polynomial(hilbert_series(Ideal(Qxz, ["x^2"])))
    assert hp.poly == U("2") and hp.regularity_index == 1
    assert hilbert_polynomial(hilbert_series(Qxyz)).poly == U("1/2*(t+1)*(t+2)")


def test_inhomogeneous_rejected():
    with pytest.raises(NotHomogeneousError):
        hilbert_series(Ideal(Qxy, ["x^2 + y"]))
    with pytest.raises(ValueError):
        hilbert_series(PolyRing(("x",), ("z",)))


def test_monomial_numerator_with_variable_generator():
    # x is itself a generator and shares no variable with y*z, but y*z and
    # y^2 overlap
    assert monomial_numerator([(1, 0, 0), (0, 1, 1), (0, 2, 0)], 3) == monomial_numerator(
        [(0, 1, 1), (0, 2, 0), (1, 0, 0)], 3
    )
    hs = HilbertSeries(monomial_numerator([(1, 0, 0), (0, 1, 1), (0, 2, 0)], 3), 3)
    # quotient is Q[y,z]/(yz, y^2): 1, 2, 1, 1, ...
    assert [hs.coefficient(d) for d in range(5)] == [1, 2, 1, 1, 1]


def test_gotzmann_examples():
    assert gotzmann_expansion("1") == (0,)
    assert gotzmann_number("1") == 1
    assert gotzmann_expansion("3*t+1") == (1, 1, 1, 0)
    assert gotzmann_number("3*t+1") == 4
    assert gotzmann_expansion("t+3") == (1, 0, 0)
    assert gotzmann_number("t+3") == 3
    assert gotzmann_number("0") == 0


def test_gotzmann_rejects_non_hilbert():
    for bad in ["-t", "t - 3", "1/2", "1/2*t^2 - 7*t"]:
        with pytest.raises(NotHilbertPolynomialError):
            gotzmann_expansion(bad)


def test_nl_polynomials():
    pn, pl = nl_polynomials("t+1", "2", 2)
    assert pn == U("3*t+1") and pl == U("t+3")
    pn, pl = nl_polynomials("t+1", "0", 2)
    assert pl == U("t+1")
    pb = U("1/2*t^2 + 3/2*t + 1")
    pn, _ = nl_polynomials(pb, "0", 3)
    assert pn == pb + pb.shift(-1) * 3
    # p_S form: p_G = s*p_B - p_S
    assert nl_polynomials("t+1", "2*t", 2, kind="S") == nl_polynomials("t+1", "2", 2)


def test_regularity_bound_examples():
    assert regularity_bound("t+1", "2", 2) == 4
    assert regularity_bound("1", "0", 2) == 3
    assert regularity_bound("t+1", "0", 1) == 2


def test_cokernel_identity_check_examples():
    assert cokernel_identity_check("0", ["0"], "0", "0", 2)
    assert cokernel_identity_check(U("t+1"), [U("t-1")], U("0"), U("2"), 2)
    assert not cokernel_identity_check(U("t+2"), [U("t-1")], U("0"), U("2"), 2)
    assert not cokernel_identity_check(U("t+1"), [U("t-1")], U("1"), U("2"), 2)
    assert not cokernel_identity_check(U("t+1"), [U("t-1")], U("0"), U("3"), 2)


def _standard_count(module, d):
    leads = module.leading_terms()
    ring = module.ring
    return sum(
        1
        for comp in range(module.rank)
        for e in ring.monomials_of_degree(d)
        if not any(c == comp and all(a <= b for a, b in zip(le, e)) for c, le in leads)
    )


@pytest.mark.parametrize("inst", homogeneous_corpus(), ids=repr)
def test_series_matches_standard_monomials(inst):
    m = spline_kernel(inst.conditions).module
    hs = hilbert_series(m)
    for d in range(7):
        assert hilbert_function(hs, d) == _standard_count(m, d)


@pytest.mark.parametrize("inst", homogeneous_corpus(), ids=repr)
def test_polynomial_agrees_past_regularity_index(inst):
    data = quasispline_hilbert_data(inst.conditions)
    for series, hp in [(data.series_g, data.p_g), (data.series_s, data.p_s)]:
        for d in range(hp.regularity_index, hp.regularity_index + 6):
            assert series.coefficient(d) == hp(d)


def _random_monomial_ideal_polys(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, 4)
        gens = []
        for _ in range(rng.randint(1, 4)):
            deg = rng.randint(1, 4)
            e = [0] * n
            for i in rng.choices(range(n), k=deg):
                e[i] += 1
            gens.append(tuple(e))
        hp = hilbert_polynomial(HilbertSeries(monomial_numerator(gens, n), n)).poly
        if hp:
            out.append(hp)
    return out


def _random_expansions(seed, count):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        a = sorted((rng.randint(0, 3) for _ in range(rng.randint(1, 12))), reverse=True)
        out.append(gotzmann_sum(a))
    return out


@pytest.mark.parametrize(
    "p", _random_monomial_ideal_polys(11, 25) + _random_expansions(12, 25), ids=str
)
def test_gotzmann_resum(p):
    a = gotzmann_expansion(p)
    assert list(a) == sorted(a, reverse=True)
    assert gotzmann_sum(a) == p


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=15))
def test_gotzmann_expansion_unique(a):
    a = sorted(a, reverse=True)
    assert gotzmann_expansion(gotzmann_sum(a)) == tuple(a)
