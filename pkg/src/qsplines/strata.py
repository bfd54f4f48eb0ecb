"""Rank strata of the degree-d difference map.

For homogeneous conditions Delta(d) : (R_d)^s -> (+)_jk (R/I_jk)_d is
written in monomial bases: columns are (strand i, monomial u of degree d),
rows are (pair jk, standard monomial of I_jk in degree d), and column
(i, u) holds +/- the normal form of u modulo I_jk.

With one parameter z the Gröbner basis is taken for the block order with z
in the trailing block, which is a Gröbner basis over Q(z).  Normal forms are
then computed by pseudo-reduction, giving entries in Q[z]; each row block is
rescaled by a common multiplier so the rank over Q(z) is unchanged.

The sweep only samples parameter values.  It does not compute degeneracy
loci as schemes.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import Ideal, _Basis, _poly_to_vec, _term_key
from .hilbert import NotHomogeneousError
from .linalg import rank_rational, rank_upoly
from .poly import Exponent, PolyRing, _add_exp, _divides, change_ring
from .quasispline import DifferenceConditions, specialize
from .univariate import UPoly


@dataclass
class DeltaMatrix:
    degree: int
    rows: List[Tuple[Tuple[int, int], Exponent]]
    cols: List[Tuple[int, Exponent]]
    entries: List[list]
    parametric: bool = False

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.cols)


def _degree_compatible(ring: PolyRing) -> PolyRing:
    if ring.order_kind == "lex":
        return PolyRing(ring.vars, ring.params)
    return ring


def _standard(lms: Sequence[Exponent], monomials: Sequence[Exponent], k: int) -> List[Exponent]:
    return [u for u in monomials if not any(_divides(m[:k], u[:k]) for m in lms)]


def _rational_block(ideal: Ideal, monomials: Sequence[Exponent]):
    """Normal forms of the column monomials modulo one ideal."""
    b = _Basis(_term_key(ideal.ring, "pot"))
    for g in ideal.gb():
        b.add(_poly_to_vec(g))
    nfs = []
    for u in monomials:
        red = b.reduce({(0, u): Fraction(1)}, full=True)
        nfs.append({e: c for (_, e), c in red.items()})
    return nfs


def _upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, a.divmod(b)[1]
    return a * (1 / a.lc) if a else a


def _param_block(ideal: Ideal, monomials: Sequence[Exponent]):
    """Pseudo-reduction modulo a block-order GB; coefficients in Q[z]."""
    ring = ideal.ring
    k = ring.nvars
    xkey = ring.order.keyfunc()

    def split(poly):
        out: Dict[Exponent, UPoly] = {}
        for e, c in poly.terms:
            x = e[:k]
            zc = [0] * (e[k] + 1)
            zc[e[k]] = c
            out[x] = out.get(x, UPoly()) + UPoly(zc)
        return {x: c for x, c in out.items() if c}

    basis = []
    for g in ideal.gb():
        parts = split(g)
        lead = g.lm[:k]
        basis.append((lead, parts[lead], parts))

    def xk(x):
        return xkey(x + (0,))

    nfs, mults = [], []
    for u in monomials:
        f = {u[:k]: UPoly([1])}
        mult = UPoly([1])
        done: Dict[Exponent, UPoly] = {}
        while f:
            m = max(f, key=xk)
            red = next((b for b in basis if _divides(b[0], m)), None)
            if red is None:
                done[m] = f.pop(m)
                continue
            lead, lc, parts = red
            c = f[m]
            shift = tuple(a - b for a, b in zip(m, lead))
            f = {x: v * lc for x, v in f.items()}
            done = {x: v * lc for x, v in done.items()}
            mult = mult * lc
            for x, v in parts.items():
                t = _add_exp(shift, x)
                val = f.get(t, UPoly()) - c * v
                if val:
                    f[t] = val
                else:
                    f.pop(t, None)
        nfs.append(done)
        mults.append(mult)
    common = UPoly([1])
    for m in mults:
        common = (common * m).exact_div(_upoly_gcd(common, m))
    nfs = [{x: v * common.exact_div(m) for x, v in nf.items()} for nf, m in zip(nfs, mults)]
    return nfs


def delta_matrix(c: DifferenceConditions, d: int, filtered: bool = False) -> DeltaMatrix:
    """Matrix of Delta(d) (or of the degree <= d map when ``filtered``)."""
    ring = c.ring
    if len(ring.params) > 1:
        raise ValueError("at most one parameter is supported")
    parametric = bool(ring.params)
    if parametric:
        if ring.order_kind != "block":
            ring = PolyRing(ring.vars, ring.params, "block")
    elif filtered:
        ring = _degree_compatible(ring)
    if d < 0:
        raise ValueError("degree must be non-negative")
    if filtered:
        if parametric:
            raise ValueError("degree-bounded slices need a parameter-free ring")
        monomials = [e for k in range(d, -1, -1) for e in ring.monomials_of_degree(k)]
        monomials.sort(key=ring.order.key, reverse=True)
    else:
        monomials = ring.monomials_of_degree(d)
    s = c.s
    k = ring.nvars
    position = {u: n for n, u in enumerate(monomials)}
    cols = [(i, u) for i in range(1, s + 1) for u in monomials]
    rows, entries = [], []
    for (j, kk) in c.pairs:
        ideal = c.ideal(j, kk)
        if ideal.ring != ring:
            ideal = Ideal(ring, [change_ring(g, ring) for g in ideal.generators])
        if not filtered and not ideal.is_homogeneous():
            raise NotHomogeneousError(f"I_{j}{kk} is not homogeneous")
        row_mons = _standard([g.lm for g in ideal.gb()], monomials, k)
        if parametric:
            nfs = _param_block(ideal, monomials)
            row_mons = [m[:k] for m in row_mons]
            zero = UPoly()
        else:
            nfs = _rational_block(ideal, monomials)
            zero = Fraction(0)
        for m in row_mons:
            line = []
            for i, u in cols:
                sign = 1 if i == j else (-1 if i == kk else 0)
                if sign == 0:
                    line.append(zero)
                    continue
                line.append(nfs[position[u]].get(m, zero) * sign)
            rows.append(((j, kk), m))
            entries.append(line)
    return DeltaMatrix(d, rows, cols, entries, parametric)


def rank_exact(m: DeltaMatrix) -> int:
    if m.parametric:
        raise ValueError("rank_exact needs a parameter-free matrix; specialize first")
    return rank_rational(m.entries)


def generic_rank(m) -> int:
    """Rank over Q(z) of a DeltaMatrix or a plain matrix with UPoly/rational entries."""
    entries = m.entries if isinstance(m, DeltaMatrix) else m
    if not entries:
        return 0
    if any(isinstance(x, UPoly) for row in entries for x in row):
        return rank_upoly([[x if isinstance(x, UPoly) else UPoly.const(x) for x in row] for row in entries])
    return rank_rational(entries)


def free_slice_dim(ring: PolyRing, d: int) -> int:
    """dim R_d over the base: C(d + n, n) for n + 1 geometric variables."""
    n = ring.nvars - 1
    if d < 0 or n < 0:
        return int(d == 0 and n < 0)
    return comb(d + n, n)


def spline_dimension(c: DifferenceConditions, d: int, value=None) -> int:
    """s * C(d + n, n) - rank Delta(d); generic if the ring has a parameter and no value."""
    if value is not None:
        c = specialize(c, {c.ring.params[0]: Fraction(value)})
    m = delta_matrix(c, d)
    rank = generic_rank(m) if m.parametric else rank_exact(m)
    return c.s * free_slice_dim(c.ring, d) - rank


@dataclass
class SweepResult:
    grid: List[Fraction]
    degrees: List[int]
    per_point: Dict[Fraction, List[Tuple[int, int, int]]]
    generic: List[Tuple[int, int, int]]
    stratum_of: Dict[Fraction, int] = field(default_factory=dict)

    @property
    def strata(self) -> List[List[Fraction]]:
        out: Dict[int, List[Fraction]] = {}
        for v in self.grid:
            out.setdefault(self.stratum_of[v], []).append(v)
        return [out[k] for k in sorted(out)]

    def dims(self, value) -> Tuple[int, ...]:
        return tuple(dim for _, _, dim in self.per_point[Fraction(value)])

    def generic_points(self) -> List[Fraction]:
        """Grid points whose ranks match the generic ranks in every degree."""
        gen = [r for _, r, _ in self.generic]
        return [v for v in self.grid if [r for _, r, _ in self.per_point[v]] == gen]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["value", "d", "rank", "splineDim", "stratumId"])
        for v in self.grid:
            for d, r, dim in self.per_point[v]:
                w.writerow([str(v), d, r, dim, self.stratum_of[v]])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "grid": [str(v) for v in self.grid],
            "degrees": list(self.degrees),
            "points": [
                {
                    "value": str(v),
                    "stratum": self.stratum_of[v],
                    "ranks": [r for _, r, _ in self.per_point[v]],
                    "splineDims": [dim for _, _, dim in self.per_point[v]],
                }
                for v in self.grid
            ],
            "strata": [[str(v) for v in st] for st in self.strata],
            "generic": {
                "ranks": [r for _, r, _ in self.generic],
                "splineDims": [dim for _, _, dim in self.generic],
            },
        }


def _point_task(args):
    c, value, d = args
    cs = specialize(c, {c.ring.params[0]: value}) if c.ring.params else c
    rank = rank_exact(delta_matrix(cs, d))
    return rank


def _generic_task(args):
    c, d = args
    return generic_rank(delta_matrix(c, d))


def sweep(
    c: DifferenceConditions,
    grid: Sequence,
    degrees: Sequence[int],
    executor=None,
) -> SweepResult:
    """Rank and spline-dimension vectors over a grid of parameter values.

    ``executor`` may be any :class:`concurrent.futures.Executor`; every
    (value, degree) pair is an independent task and results are merged in
    grid order.
    """
    if len(c.ring.params) > 1:
        raise ValueError("at most one parameter is supported")
    grid = [Fraction(v) for v in grid]
    degrees = list(degrees)
    tasks = [(c, v, d) for v in grid for d in degrees]
    gtasks = [(c, d) for d in degrees]
    mapper = executor.map if executor is not None else map
    ranks = list(mapper(_point_task, tasks))
    granks = list(mapper(_generic_task, gtasks))
    per_point: Dict[Fraction, List[Tuple[int, int, int]]] = {}
    it = iter(ranks)
    for v in grid:
        per_point[v] = []
        for d in degrees:
            r = next(it)
            per_point[v].append((d, r, c.s * free_slice_dim(c.ring, d) - r))
    generic = [(d, r, c.s * free_slice_dim(c.ring, d) - r) for d, r in zip(degrees, granks)]
    stratum_of: Dict[Fraction, int] = {}
    seen: Dict[Tuple[int, ...], int] = {}
    for v in grid:
        vec = tuple(dim for _, _, dim in per_point[v])
        stratum_of[v] = seen.setdefault(vec, len(seen))
    return SweepResult(grid, degrees, per_point, generic, stratum_of)
