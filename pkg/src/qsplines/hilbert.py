"""Hilbert series, Hilbert polynomials and Gotzmann numbers.

Series are computed from the leading-term module of a Gröbner basis with the
usual splitting recursion on monomial ideals

    N(J) = N(J + (x)) + t * N(J : x),

where ``N(J)`` is the numerator of the Hilbert series of R/J over
``(1 - t)^n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from .groebner import Ideal, Submodule, _term_key
from .poly import Exponent, PolyRing, _divides
from .univariate import UPoly

MAX_EXPANSION_STEPS = 100_000


class NotHomogeneousError(ValueError):
    pass


class NotHilbertPolynomialError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer polynomials in t as coefficient lists


def _iadd(a: List[int], b: List[int], shift: int = 0) -> List[int]:
    out = list(a) + [0] * max(0, len(b) + shift - len(a))
    for i, c in enumerate(b):
        out[i + shift] += c
    return out


def _imul(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _istrip(a: List[int]) -> Tuple[int, ...]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _minimalize(gens) -> FrozenSet[Exponent]:
    gens = sorted(set(gens), key=sum)
    out: List[Exponent] = []
    for g in gens:
        if not any(_divides(m, g) for m in out):
            out.append(g)
    return frozenset(out)


@lru_cache(maxsize=None)
def _numerator(gens: FrozenSet[Exponent], n: int) -> Tuple[int, ...]:
    if not gens:
        return (1,)
    if any(not any(g) for g in gens):
        return ()
    glist = sorted(gens)
    support = [frozenset(i for i, a in enumerate(g) if a) for g in glist]
    coprime = all(
        not (support[i] & support[j]) for i in range(len(glist)) for j in range(i + 1, len(glist))
    )
    if coprime:
        out = [1]
        for g in glist:
            out = _imul(out, [1] + [0] * (sum(g) - 1) + [-1])
        return _istrip(out)
    # a variable shared by two minimal generators is not itself a generator,
    # so both branches shrink
    pivot = min(
        i for i in range(n) if sum(1 for sup in support if i in sup) > 1
    )
    var = tuple(1 if i == pivot else 0 for i in range(n))
    plus = _minimalize(list(gens) + [var])
    quot = _minimalize(tuple(max(a - b, 0) for a, b in zip(g, var)) for g in gens)
    return _istrip(_iadd(list(_numerator(plus, n)), list(_numerator(quot, n)), shift=1))


def monomial_numerator(gens: Sequence[Exponent], n: int) -> Tuple[int, ...]:
    """Numerator of the Hilbert series of R/J for a monomial ideal J."""
    return _numerator(_minimalize(tuple(g) for g in gens), n)


# ---------------------------------------------------------------------------
# series and polynomials


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / (1 - t)^power`` with integer numerator (low degree first)."""

    numerator: Tuple[int, ...]
    power: int

    def coefficient(self, d: int) -> int:
        if d < 0:
            return 0
        n = self.power
        if n == 0:
            return self.numerator[d] if d < len(self.numerator) else 0
        return sum(
            c * comb(d - k + n - 1, n - 1) for k, c in enumerate(self.numerator) if k <= d
        )

    def __add__(self, other: "HilbertSeries") -> "HilbertSeries":
        if self.power != other.power:
            raise ValueError("series over different denominators")
        return HilbertSeries(_istrip(_iadd(list(self.numerator), list(other.numerator))), self.power)

    def __sub__(self, other: "HilbertSeries") -> "HilbertSeries":
        neg = HilbertSeries(tuple(-c for c in other.numerator), other.power)
        return self + neg

    def format(self, var: str = "t") -> str:
        num = UPoly(self.numerator).format(var)
        return f"({num})/(1 - {var})^{self.power}"

    def __str__(self):
        return self.format()


@dataclass(frozen=True)
class HilbertPolynomial:
    poly: UPoly
    regularity_index: int

    def __call__(self, d):
        return self.poly(d)

    def __str__(self):
        return str(self.poly)


def _graded_ring(ring: PolyRing):
    if ring.params:
        raise ValueError(f"Hilbert data needs a ring without parameters, got {ring}")


def hilbert_series(
    obj: Union[PolyRing, Ideal, Submodule],
    shifts: Sequence[int] = None,
    of: str = "quotient",
) -> HilbertSeries:
    """Hilbert series of R/I, R^s/M (``of="quotient"``) or of I, M themselves.

    ``shifts[i]`` is the degree of the i-th basis vector of R^s.
    """
    if isinstance(obj, PolyRing):
        obj = Ideal(obj, [])
    if isinstance(obj, Ideal):
        obj = obj.to_submodule()
    ring, s = obj.ring, obj.rank
    _graded_ring(ring)
    shifts = list(shifts) if shifts is not None else [0] * s
    if len(shifts) != s:
        raise ValueError(f"{len(shifts)} shifts for rank {s}")
    if not obj.is_homogeneous(shifts):
        raise NotHomogeneousError("Hilbert series requires homogeneous input")
    n = ring.ngens
    by_comp: Dict[int, List[Exponent]] = {i: [] for i in range(s)}
    for comp, e in obj.leading_terms():
        by_comp[comp].append(e)
    quotient: List[int] = []
    for i in range(s):
        quotient = _iadd(quotient, list(monomial_numerator(by_comp[i], n)), shift=shifts[i])
    if of == "quotient":
        return HilbertSeries(_istrip(quotient), n)
    if of != "module":
        raise ValueError(f"of must be 'quotient' or 'module', not {of!r}")
    free: List[int] = []
    for i in range(s):
        free = _iadd(free, [1], shift=shifts[i])
    return HilbertSeries(_istrip(_iadd(free, [-c for c in quotient])), n)


def hilbert_function(series: HilbertSeries, d: int) -> int:
    return series.coefficient(d)


def hilbert_polynomial(series: HilbertSeries) -> HilbertPolynomial:
    n = series.power
    poly = UPoly()
    if n > 0:
        for k, c in enumerate(series.numerator):
            if c:
                poly = poly + UPoly.binomial(n - 1 - k, n - 1) * c
    index = max(0, len(series.numerator) - n)
    while index > 0 and series.coefficient(index - 1) == poly(index - 1):
        index -= 1
    return HilbertPolynomial(poly, index)


# ---------------------------------------------------------------------------
# Gotzmann expansions


def _as_upoly(p) -> UPoly:
    if isinstance(p, HilbertPolynomial):
        return p.poly
    if isinstance(p, UPoly):
        return p
    if isinstance(p, str):
        return UPoly.parse(p)
    return UPoly.const(p)


def gotzmann_expansion(p) -> Tuple[int, ...]:
    """Exponents a_1 >= ... >= a_m with p(t) = sum_i C(t + a_i - (i - 1), a_i).

    Extracted greedily; raises :class:`NotHilbertPolynomialError` if the
    sequence stops decreasing or a coefficient goes negative.
    """
    rem = _as_upoly(p)
    a: List[int] = []
    while rem:
        deg = rem.degree
        if rem.lc < 0:
            raise NotHilbertPolynomialError(f"{p}: negative leading coefficient after {len(a)} terms")
        if a and deg > a[-1]:
            raise NotHilbertPolynomialError(f"{p}: expansion is not weakly decreasing")
        if deg == 0:
            c = rem.lc
            if c.denominator != 1:
                raise NotHilbertPolynomialError(f"{p}: non-integral constant remainder {c}")
            a.extend([0] * int(c))
            break
        if len(a) >= MAX_EXPANSION_STEPS:
            raise NotHilbertPolynomialError(f"{p}: expansion exceeds {MAX_EXPANSION_STEPS} terms")
        rem = rem - UPoly.binomial(deg - len(a), deg)
        a.append(deg)
    return tuple(a)


def gotzmann_number(p) -> int:
    return len(gotzmann_expansion(p))


def gotzmann_sum(a: Sequence[int]) -> UPoly:
    """Re-sum an expansion: sum_i C(t + a_i - (i - 1), a_i)."""
    out = UPoly()
    for i, ai in enumerate(a):
        out = out + UPoly.binomial(ai - i, ai)
    return out


def nl_polynomials(p_b, p, s: int, kind: str = "G") -> Tuple[UPoly, UPoly]:
    """Hilbert polynomials of O_N and O_L.

    p_N(t) = p_B(t) + s p_B(t - 1) and p_L(t) = p_B(t) + p_G(t - 1); pass
    ``kind="S"`` to give p_S instead, using p_G = s p_B - p_S.
    """
    pb = _as_upoly(p_b)
    p = _as_upoly(p)
    if kind == "S":
        pg = pb * s - p
    elif kind == "G":
        pg = p
    else:
        raise ValueError(f"kind must be 'G' or 'S', not {kind!r}")
    pn = pb + pb.shift(-1) * s
    pl = pb + pg.shift(-1)
    return pn, pl


def regularity_bound(p_b, p_g, s: int) -> int:
    pn, pl = nl_polynomials(p_b, p_g, s)
    return max(gotzmann_number(pn), gotzmann_number(pl))


def cokernel_identity_check(p_y, p_ideals: Sequence, p_h, p_g, s: int) -> bool:
    """Exact check of p_G = C(s,2) p_Y - sum p_{I_jk} - p_H."""
    rhs = _as_upoly(p_y) * comb(s, 2) - _as_upoly(p_h)
    for q in p_ideals:
        rhs = rhs - _as_upoly(q)
    return _as_upoly(p_g) == rhs


# ---------------------------------------------------------------------------
# data of a quasi-spline module


@dataclass
class QuasiSplineHilbertData:
    s: int
    series_ring: HilbertSeries
    series_g: HilbertSeries
    series_s: HilbertSeries
    series_h: HilbertSeries
    series_ideals: Dict[Tuple[int, int], HilbertSeries]
    p_b: HilbertPolynomial
    p_g: HilbertPolynomial
    p_s: HilbertPolynomial
    p_h: HilbertPolynomial
    p_ideals: Dict[Tuple[int, int], HilbertPolynomial]

    def regularity_bound(self) -> int:
        return regularity_bound(self.p_b, self.p_g, self.s)

    def cokernel_identity(self) -> bool:
        return cokernel_identity_check(
            self.p_b, list(self.p_ideals.values()), self.p_h, self.p_g, self.s
        )


def cokernel_h_module(conditions) -> Submodule:
    """Image of Delta plus the ideals, inside R^(s choose 2); its quotient is H."""
    from .groebner import FreeModuleElement

    ring, s = conditions.ring, conditions.s
    pairs = [(j, k) for j in range(1, s + 1) for k in range(j + 1, s + 1)]
    P = len(pairs)
    gens = []
    for i in range(1, s + 1):
        ents = []
        for j, k in pairs:
            ents.append(ring.one() if i == j else (-ring.one() if i == k else ring.zero()))
        gens.append(FreeModuleElement(ring, ents))
    for row, (j, k) in enumerate(pairs):
        for g in conditions.ideal(j, k).generators:
            ents = [ring.zero()] * P
            ents[row] = g
            gens.append(FreeModuleElement(ring, ents))
    return Submodule(ring, P, gens)


def quasispline_hilbert_data(conditions, module: Submodule = None) -> QuasiSplineHilbertData:
    """Hilbert series and polynomials of R, G = R^s/S, S, H and the ideals."""
    from .quasispline import spline_kernel

    ring, s = conditions.ring, conditions.s
    _graded_ring(ring)
    if not conditions.is_homogeneous():
        raise NotHomogeneousError("conditions must be homogeneous")
    if module is None:
        module = spline_kernel(conditions).module
    series_r = hilbert_series(ring)
    series_g = hilbert_series(module)
    series_s = hilbert_series(module, of="module")
    pairs = [(j, k) for j in range(1, s + 1) for k in range(j + 1, s + 1)]
    series_i = {jk: hilbert_series(conditions.ideal(*jk), of="module") for jk in pairs}
    if pairs:
        series_h = hilbert_series(cokernel_h_module(conditions))
    else:
        series_h = HilbertSeries((), ring.ngens)
    return QuasiSplineHilbertData(
        s,
        series_r,
        series_g,
        series_s,
        series_h,
        series_i,
        hilbert_polynomial(series_r),
        hilbert_polynomial(series_g),
        hilbert_polynomial(series_s),
        hilbert_polynomial(series_h),
        {jk: hilbert_polynomial(v) for jk, v in series_i.items()},
    )
