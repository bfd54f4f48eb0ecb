"""Billera-Rose homogenization of ideals, submodules and difference-conditions.

A polynomial f of degree D becomes z^D f(x/z); a vector (g_1, ..., g_s)
of degree D = max deg g_i becomes (z^D g_i(x/z))_i.  Homogenizing a module
given by generators homogenizes the generators and then saturates by z,
which yields the full homogenization (generator-wise homogenization alone
can be too small).  Dehomogenization sets z = 1.

Degrees are geometric: parameters have degree 0.  The homogenizing variable
is appended to the geometric variables and defaults to ``z_h``.
"""

from __future__ import annotations

from typing import Tuple, Union

from .groebner import FreeModuleElement, Ideal, Submodule, _term_key, saturate_by_element
from .hilbert import hilbert_function, hilbert_series
from .poly import PolyRing, Polynomial, change_ring
from .quasispline import DifferenceConditions, QuasiSplineModule, spline_kernel

HVAR = "z_h"


def homogenized_ring(ring: PolyRing, name: str = HVAR) -> PolyRing:
    if name in ring.names:
        raise ValueError(f"homogenizing variable {name!r} already in {ring}")
    return PolyRing(ring.vars + (name,), ring.params, ring.order_kind)


def dehomogenized_ring(ring: PolyRing, name: str = HVAR) -> PolyRing:
    if name not in ring.vars:
        raise ValueError(f"{name!r} is not a variable of {ring}")
    return ring.drop([name])


def _homogenize_poly(f: Polynomial, ring_h: PolyRing, degree: int, name: str) -> Polynomial:
    k = f.ring.nvars
    deg = f.ring.degree
    out = {}
    for e, c in f.terms:
        out[e[:k] + (degree - deg(e),) + e[k:]] = c
    return Polynomial(ring_h, out)


def homogenize_element(v, ring_h: PolyRing = None, name: str = HVAR):
    """Homogenize a single polynomial or vector (no saturation involved)."""
    if isinstance(v, Polynomial):
        ring_h = ring_h or homogenized_ring(v.ring, name)
        return _homogenize_poly(v, ring_h, v.degree(), name)
    ring_h = ring_h or homogenized_ring(v.ring, name)
    D = v.degree()
    return FreeModuleElement(ring_h, [_homogenize_poly(g, ring_h, D, name) for g in v.entries])


def homogenize(obj, name: str = HVAR):
    """Homogenization of a polynomial, vector, ideal, submodule or conditions.

    Ideals and submodules are z-saturated after homogenizing generators;
    conditions homogenize each ideal (and the base ideal, if any).
    """
    if isinstance(obj, (Polynomial, FreeModuleElement)):
        return homogenize_element(obj, name=name)
    if isinstance(obj, QuasiSplineModule):
        obj = obj.module
    if isinstance(obj, DifferenceConditions):
        ring_h = homogenized_ring(obj.ring, name)
        ideals = {jk: homogenize(I, name) for jk, I in obj.ideals.items()}
        base = homogenize(obj.base, name) if obj.base is not None else None
        return DifferenceConditions(ring_h, obj.s, ideals, base)
    ring_h = homogenized_ring(obj.ring, name)
    z = ring_h.gen(name)
    if isinstance(obj, Ideal):
        gens = [homogenize_element(g, ring_h) for g in obj.generators if g]
        return saturate_by_element(Ideal(ring_h, gens), z)
    if isinstance(obj, Submodule):
        gens = [homogenize_element(g, ring_h) for g in obj.generators if not g.is_zero()]
        return saturate_by_element(Submodule(ring_h, obj.rank, gens), z)
    raise TypeError(f"cannot homogenize {type(obj).__name__}")


def dehomogenize(obj, name: str = HVAR):
    """Set the homogenizing variable to 1."""
    if isinstance(obj, (Polynomial, FreeModuleElement)):
        return obj.substitute({name: 1})
    if isinstance(obj, Ideal):
        ring = dehomogenized_ring(obj.ring, name)
        return Ideal(ring, [g.substitute({name: 1}) for g in obj.generators])
    if isinstance(obj, Submodule):
        return obj.substitute({name: 1})
    if isinstance(obj, DifferenceConditions):
        ring = dehomogenized_ring(obj.ring, name)
        ideals = {jk: dehomogenize(I, name) for jk, I in obj.ideals.items()}
        base = dehomogenize(obj.base, name) if obj.base is not None else None
        return DifferenceConditions(ring, obj.s, ideals, base)
    raise TypeError(f"cannot dehomogenize {type(obj).__name__}")


def z_saturate(obj, name: str = HVAR):
    return saturate_by_element(obj, obj.ring.gen(name))


def _same(a, b) -> bool:
    return a.equals(b)


def round_trip_check(m: Union[Ideal, Submodule, QuasiSplineModule], name: str = HVAR) -> bool:
    """Counit law: dehomogenize(homogenize(M)) == M."""
    if isinstance(m, QuasiSplineModule):
        m = m.module
    return _same(dehomogenize(homogenize(m, name), name), m)


def unit_defect_check(n: Union[Ideal, Submodule], name: str = HVAR) -> Tuple[bool, object]:
    """Is N already z-saturated, i.e. N == homogenize(dehomogenize(N))?

    Returns the flag and the z-saturation of N.
    """
    sat = z_saturate(n, name)
    rehom = homogenize(dehomogenize(n, name), name)
    flag = _same(rehom, n)
    return flag, sat


def graded_slice_dim(n: Union[Ideal, Submodule], d: int) -> int:
    """dim N_d from the Hilbert series of N."""
    return hilbert_function(hilbert_series(n, of="module"), d)


def bounded_slice_dim(m, d: int) -> int:
    """dim M_{<=d} (elements whose entries all have degree <= d).

    Conditions (or a quasi-spline module carrying them) are handled by exact
    linear algebra on the degree-bounded difference map; generated modules
    by counting leading terms of degree <= d for a degree-compatible order.
    """
    from .strata import delta_matrix, rank_exact

    if isinstance(m, QuasiSplineModule):
        m = m.conditions
    if isinstance(m, DifferenceConditions):
        if m.ring.params:
            raise ValueError("degree-bounded slices need a parameter-free ring")
        mat = delta_matrix(m, d, filtered=True)
        return len(mat.cols) - rank_exact(mat)
    if isinstance(m, Ideal):
        m = m.to_submodule()
    if m.ring.params:
        raise ValueError("degree-bounded slices need a parameter-free ring")
    ring = m.ring
    if ring.order_kind == "lex":
        ring = PolyRing(ring.vars)
        m = Submodule(
            ring, m.rank, [[change_ring(g, ring) for g in v.entries] for v in m.generators]
        )
    mod = Submodule(ring, m.rank, m.generators, module_order="degpot")
    key = _term_key(ring, "degpot")
    leads = [max(g.to_vec(), key=key) for g in mod.gb()]
    count = 0
    for k in range(d + 1):
        for e in ring.monomials_of_degree(k):
            for comp in range(m.rank):
                if any(c == comp and all(a <= b for a, b in zip(le, e)) for c, le in leads):
                    count += 1
    return count


def homogenized_conditions_commute(c: DifferenceConditions, name: str = HVAR) -> bool:
    """Kernel of the homogenized ideals == saturated homogenization of the kernel."""
    lhs = spline_kernel(homogenize(c, name)).module
    rhs = z_saturate(homogenize(spline_kernel(c).module, name), name)
    return _same(lhs, rhs)
