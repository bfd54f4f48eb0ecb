"""Gröbner bases for ideals and submodules of free modules.

Internally an element of R^s is a dict ``{(component, exponent): Fraction}``.
Module orders are position-over-term (``"pot"``, lower component index is
larger), term-over-position (``"top"``) and a degree-first variant
(``"degpot"``) used for degree-bounded slices.  Ideals are rank-1 modules.

Everything derived (syzygy kernels, colons, intersections, saturations)
goes through one construction: a Gröbner basis of tagged vectors in
R^(p + k) under position-over-term, keeping the elements whose first ``p``
components vanish.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .poly import (
    Exponent,
    PolyRing,
    Polynomial,
    RingMismatchError,
    _add_exp,
    _divides,
    change_ring,
)

Term = Tuple[int, Exponent]
Vec = Dict[Term, Fraction]

MODULE_ORDERS = ("pot", "top", "degpot")


def _term_key(ring: PolyRing, module_order: str):
    rk = ring.order.keyfunc()
    if module_order == "pot":
        return lambda t: (-t[0], rk(t[1]))
    if module_order == "top":
        return lambda t: (rk(t[1]), -t[0])
    if module_order == "degpot":
        deg = ring.degree
        return lambda t: (deg(t[1]), -t[0], rk(t[1]))
    raise ValueError(f"unknown module order {module_order!r}")


# ---------------------------------------------------------------------------
# the engine


class _Basis:
    """Growing list of monic vectors with cached leading terms."""

    def __init__(self, key):
        self.key = key
        self.vecs: List[Vec] = []
        self.leads: List[Term] = []
        self.by_comp: Dict[int, List[int]] = {}

    def add(self, v: Vec) -> int:
        lt = max(v, key=self.key)
        c = v[lt]
        if c != 1:
            v = {t: a / c for t, a in v.items()}
        self.vecs.append(v)
        self.leads.append(lt)
        self.by_comp.setdefault(lt[0], []).append(len(self.vecs) - 1)
        return len(self.vecs) - 1

    def reducer(self, t: Term, active=None) -> Optional[int]:
        comp, e = t
        for i in self.by_comp.get(comp, ()):
            if active is not None and i not in active:
                continue
            if _divides(self.leads[i][1], e):
                return i
        return None

    def reduce(self, v: Vec, full: bool = True, active=None) -> Vec:
        key = self.key
        v = dict(v)
        out: Vec = {}
        while v:
            t = max(v, key=key)
            i = self.reducer(t, active)
            if i is None:
                if not full:
                    v.update(out)
                    return v
                out[t] = v.pop(t)
                continue
            c = v[t]
            comp, e = t
            u = tuple(a - b for a, b in zip(e, self.leads[i][1]))
            for (gc, ge), a in self.vecs[i].items():
                tt = (gc, _add_exp(u, ge))
                val = v.get(tt, 0) - c * a
                if val:
                    v[tt] = val
                else:
                    v.pop(tt, None)
        return out


def _spoly(b: _Basis, i: int, j: int) -> Vec:
    (ci, ei), (cj, ej) = b.leads[i], b.leads[j]
    lcm = tuple(max(x, y) for x, y in zip(ei, ej))
    ui = tuple(x - y for x, y in zip(lcm, ei))
    uj = tuple(x - y for x, y in zip(lcm, ej))
    out: Vec = {}
    for (c, e), a in b.vecs[i].items():
        out[(c, _add_exp(ui, e))] = a
    for (c, e), a in b.vecs[j].items():
        t = (c, _add_exp(uj, e))
        val = out.get(t, 0) - a
        if val:
            out[t] = val
        else:
            out.pop(t, None)
    return out


def groebner_vectors(vectors: Iterable[Vec], key, rank_one: bool = False) -> List[Vec]:
    """Reduced Gröbner basis of the span of ``vectors``.

    Buchberger with normal (smallest lcm first) pair selection, the chain
    criterion and, for ideals only, the coprime-leading-monomial criterion.
    Output is sorted by leading term, largest first.
    """
    b = _Basis(key)
    pending = set()
    heap = []

    def push_pairs(j):
        cj, ej = b.leads[j]
        for i in b.by_comp[cj]:
            if i == j:
                continue
            ei = b.leads[i][1]
            lcm = tuple(max(x, y) for x, y in zip(ei, ej))
            pending.add((i, j))
            heapq.heappush(heap, (key((cj, lcm)), i, j))

    inputs = [dict(v) for v in vectors if v]
    inputs.sort(key=lambda v: key(max(v, key=key)))
    for v in inputs:
        r = b.reduce(v, full=True)
        if r:
            push_pairs(b.add(r))

    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        ci, ei = b.leads[i]
        ej = b.leads[j][1]
        if rank_one and all(x == 0 or y == 0 for x, y in zip(ei, ej)):
            continue
        lcm = tuple(max(x, y) for x, y in zip(ei, ej))
        skip = False
        for k in b.by_comp[ci]:
            if k == i or k == j:
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            if _divides(b.leads[k][1], lcm):
                skip = True
                break
        if skip:
            continue
        r = b.reduce(_spoly(b, i, j), full=True)
        if r:
            push_pairs(b.add(r))

    # minimalize then inter-reduce
    keep = []
    for i, (c, e) in enumerate(b.leads):
        dominated = False
        for k, (c2, e2) in enumerate(b.leads):
            if k == i or c2 != c or not _divides(e2, e):
                continue
            if e2 != e or k < i:
                dominated = True
                break
        if not dominated:
            keep.append(i)
    active = set(keep)
    out = []
    for i in keep:
        v = b.vecs[i]
        lt = b.leads[i]
        tail = {t: a for t, a in v.items() if t != lt}
        red = b.reduce(tail, full=True, active=active - {i})
        red[lt] = Fraction(1)
        out.append(red)
    out.sort(key=lambda v: key(max(v, key=key)), reverse=True)
    return out


def _eliminate_components(vectors: Iterable[Vec], ring: PolyRing, p: int) -> List[Vec]:
    """GB of span(vectors) ∩ (0 ⊕ R^k), shifted down by ``p`` components."""
    key = _term_key(ring, "pot")
    gb = groebner_vectors(vectors, key)
    out = []
    for v in gb:
        if max(v, key=key)[0] >= p:
            out.append({(c - p, e): a for (c, e), a in v.items()})
    return out


# ---------------------------------------------------------------------------
# conversions


def _poly_to_vec(f: Polynomial, comp: int = 0) -> Vec:
    return {(comp, e): c for e, c in f.terms}


def _vec_to_polys(v: Vec, ring: PolyRing, rank: int) -> Tuple[Polynomial, ...]:
    parts: List[Dict] = [dict() for _ in range(rank)]
    for (c, e), a in v.items():
        parts[c][e] = a
    return tuple(Polynomial(ring, d) for d in parts)


def _shift(v: Vec, k: int) -> Vec:
    return {(c + k, e): a for (c, e), a in v.items()}


def _scale(v: Vec, f: Polynomial) -> Vec:
    out: Vec = {}
    for (c, e), a in v.items():
        for fe, fc in f.terms:
            t = (c, _add_exp(e, fe))
            val = out.get(t, 0) + a * fc
            if val:
                out[t] = val
            else:
                out.pop(t, None)
    return out


# ---------------------------------------------------------------------------
# public types


class FreeModuleElement:
    """A vector (g_1, ..., g_s) of polynomials."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring: PolyRing, entries: Sequence):
        ents = []
        for g in entries:
            if isinstance(g, str):
                g = ring.parse(g)
            elif isinstance(g, (int, Fraction)):
                g = ring.const(g)
            elif g.ring != ring:
                raise RingMismatchError(f"{g.ring} vs {ring}")
            ents.append(g)
        self.ring = ring
        self.entries = tuple(ents)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.entries)

    def _check(self, other):
        if not isinstance(other, FreeModuleElement):
            raise TypeError(f"expected FreeModuleElement, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other):
        self._check(other)
        return FreeModuleElement(self.ring, [a + b for a, b in zip(self, other)])

    def __sub__(self, other):
        self._check(other)
        return FreeModuleElement(self.ring, [a - b for a, b in zip(self, other)])

    def __neg__(self):
        return FreeModuleElement(self.ring, [-a for a in self])

    def __mul__(self, f):
        return FreeModuleElement(self.ring, [a * f for a in self])

    __rmul__ = __mul__

    def hadamard(self, other: "FreeModuleElement") -> "FreeModuleElement":
        """Entrywise product."""
        self._check(other)
        return FreeModuleElement(self.ring, [a * b for a, b in zip(self, other)])

    def degree(self) -> int:
        """Maximum geometric degree over the entries (-1 for zero)."""
        return max(g.degree() for g in self.entries)

    def to_vec(self) -> Vec:
        out: Vec = {}
        for i, g in enumerate(self.entries):
            for e, c in g.terms:
                out[(i, e)] = c
        return out

    def substitute(self, assignments) -> "FreeModuleElement":
        ents = [g.substitute(assignments) for g in self.entries]
        ring = ents[0].ring if ents else self.ring.drop(assignments)
        return FreeModuleElement(ring, ents)

    def to_strings(self) -> List[str]:
        return [str(g) for g in self.entries]

    def __eq__(self, other):
        if not isinstance(other, FreeModuleElement):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.entries) + ")"

    def __repr__(self):
        return f"FreeModuleElement{self}"


def unit_vector(ring: PolyRing, rank: int, i: int) -> FreeModuleElement:
    return FreeModuleElement(ring, [ring.one() if k == i else ring.zero() for k in range(rank)])


def diagonal(ring: PolyRing, rank: int) -> FreeModuleElement:
    return FreeModuleElement(ring, [ring.one()] * rank)


class Ideal:
    """An ideal given by generators, with a lazily computed reduced GB."""

    def __init__(self, ring: PolyRing, generators: Iterable = ()):
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            elif isinstance(g, (int, Fraction)):
                g = ring.const(g)
            elif g.ring != ring:
                raise RingMismatchError(f"{g.ring} vs {ring}")
            gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb: Optional[Tuple[Polynomial, ...]] = None

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [ring.one()])

    def gb(self) -> Tuple[Polynomial, ...]:
        if self._gb is None:
            key = _term_key(self.ring, "pot")
            vecs = groebner_vectors(
                (_poly_to_vec(g) for g in self.generators if g), key, rank_one=True
            )
            self._gb = tuple(_vec_to_polys(v, self.ring, 1)[0] for v in vecs)
        return self._gb

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} vs {self.ring}")
        return normal_form(f, self)

    def contains(self, f) -> bool:
        if isinstance(f, Ideal):
            return all(self.contains(g) for g in f.generators)
        if isinstance(f, str):
            f = self.ring.parse(f)
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def equals(self, other: "Ideal") -> bool:
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return self.gb() == other.gb()

    def is_zero(self) -> bool:
        return not self.gb()

    def is_unit(self) -> bool:
        gb = self.gb()
        return len(gb) == 1 and gb[0].is_constant()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gb())

    def leading_monomials(self) -> List[Exponent]:
        return [g.lm for g in self.gb()]

    def standard_monomials(self, d: int) -> List[Exponent]:
        """Degree-``d`` monomials outside the leading-term ideal, descending."""
        lms = self.leading_monomials()
        return [
            e for e in self.ring.monomials_of_degree(d) if not any(_divides(m, e) for m in lms)
        ]

    def to_submodule(self) -> "Submodule":
        return Submodule(self.ring, 1, [FreeModuleElement(self.ring, [g]) for g in self.generators])

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return Ideal(self.ring, self.generators + other.generators)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"Ideal{self}"


class Submodule:
    """A submodule of R^rank given by generators."""

    def __init__(
        self,
        ring: PolyRing,
        rank: int,
        generators: Iterable = (),
        module_order: str = "pot",
    ):
        if module_order not in MODULE_ORDERS:
            raise ValueError(f"unknown module order {module_order!r}")
        gens = []
        for g in generators:
            if not isinstance(g, FreeModuleElement):
                g = FreeModuleElement(ring, g)
            if g.ring != ring:
                raise RingMismatchError(f"{g.ring} vs {ring}")
            if g.rank != rank:
                raise ValueError(f"generator of rank {g.rank} in a rank-{rank} module")
            gens.append(g)
        self.ring = ring
        self.rank = rank
        self.generators = tuple(gens)
        self.module_order = module_order
        self._gb: Optional[Tuple[FreeModuleElement, ...]] = None
        self._reducer: Optional[_Basis] = None

    @classmethod
    def free(cls, ring: PolyRing, rank: int) -> "Submodule":
        return cls(ring, rank, [unit_vector(ring, rank, i) for i in range(rank)])

    @property
    def key(self):
        return _term_key(self.ring, self.module_order)

    def gb(self) -> Tuple[FreeModuleElement, ...]:
        if self._gb is None:
            vecs = groebner_vectors(
                (g.to_vec() for g in self.generators if not g.is_zero()),
                self.key,
                rank_one=self.rank == 1,
            )
            self._gb = tuple(
                FreeModuleElement(self.ring, _vec_to_polys(v, self.ring, self.rank)) for v in vecs
            )
        return self._gb

    def leading_terms(self) -> List[Term]:
        key = self.key
        return [max(g.to_vec(), key=key) for g in self.gb()]

    def _basis(self) -> _Basis:
        if self._reducer is None:
            b = _Basis(self.key)
            for g in self.gb():
                b.add(g.to_vec())
            self._reducer = b
        return self._reducer

    def normal_form(self, v: FreeModuleElement) -> FreeModuleElement:
        self._check_element(v)
        red = self._basis().reduce(v.to_vec(), full=True)
        return FreeModuleElement(self.ring, _vec_to_polys(red, self.ring, self.rank))

    def _check_element(self, v):
        if not isinstance(v, FreeModuleElement):
            v = FreeModuleElement(self.ring, v)
        if v.ring != self.ring:
            raise RingMismatchError(f"{v.ring} vs {self.ring}")
        if v.rank != self.rank:
            raise ValueError(f"rank mismatch: {v.rank} vs {self.rank}")
        return v

    def contains(self, v) -> bool:
        if isinstance(v, Submodule):
            return v.is_submodule_of(self)
        v = self._check_element(v)
        b = self._basis()
        return not b.reduce(v.to_vec(), full=True)

    __contains__ = contains

    def is_submodule_of(self, other: "Submodule") -> bool:
        other._check_compatible(self)
        b = other._basis()
        return all(not b.reduce(g.to_vec(), full=True) for g in self.generators)

    def equals(self, other: "Submodule") -> bool:
        return self.is_submodule_of(other) and other.is_submodule_of(self)

    def _check_compatible(self, other: "Submodule"):
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def is_zero(self) -> bool:
        return not self.gb()

    def is_homogeneous(self, shifts: Sequence[int] = None) -> bool:
        shifts = shifts or [0] * self.rank
        deg = self.ring.degree
        for g in self.gb():
            ds = {deg(e) + shifts[c] for (c, e) in g.to_vec()}
            if len(ds) > 1:
                return False
        return True

    def substitute(self, assignments) -> "Submodule":
        gens = [g.substitute(assignments) for g in self.generators]
        ring = self.ring.drop(assignments)
        return Submodule(ring, self.rank, gens, self.module_order)

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"

    def __repr__(self):
        return f"Submodule(rank={self.rank}, {self})"


# ---------------------------------------------------------------------------
# operations


def buchberger(ideal: Ideal) -> Tuple[Polynomial, ...]:
    """Reduced Gröbner basis of an ideal (monic, sorted largest lead first)."""
    return ideal.gb()


def module_buchberger(module: Submodule) -> Tuple[FreeModuleElement, ...]:
    return module.gb()


def normal_form(f: Polynomial, ideal: Ideal) -> Polynomial:
    b = _Basis(_term_key(ideal.ring, "pot"))
    for g in ideal.gb():
        b.add(_poly_to_vec(g))
    red = b.reduce(_poly_to_vec(f), full=True)
    return Polynomial(f.ring, {e: c for (_, e), c in red.items()})


def preimage(
    ring: PolyRing,
    images: Sequence[Vec],
    target: Sequence[Vec],
    codomain_rank: int,
    tags: Sequence[Vec] = None,
) -> List[Vec]:
    """Generators (a GB) of the tagged preimage.

    Returns GB of ``{sum a_i tags_i : sum a_i images_i in span(target)}``;
    with default tags ``e_i`` this is the kernel of ``R^k -> R^p / target``.
    """
    p = codomain_rank
    k = len(images)
    if tags is None:
        tags = [{(i, (0,) * ring.ngens): Fraction(1)} for i in range(k)]
    vecs = []
    for img, tag in zip(images, tags):
        v = dict(img)
        v.update(_shift(tag, p))
        if v:
            vecs.append(v)
    vecs.extend(dict(t) for t in target if t)
    return _eliminate_components(vecs, ring, p)


def syzygy_kernel(matrix: Sequence[Sequence[Polynomial]], s: int) -> Submodule:
    """Kernel of a presentation matrix, projected onto the first ``s`` columns.

    ``matrix`` has one row per target coordinate and ``s + t`` columns: the
    first ``s`` are images of the basis of R^s, the remaining ``t`` are
    relations in the target.  Returns ``{a in R^s : A[:, :s] a in span(A[:, s:])}``.
    """
    if not matrix:
        raise ValueError("empty presentation matrix")
    ncols = len(matrix[0])
    if any(len(row) != ncols for row in matrix) or ncols < s:
        raise ValueError("shape mismatch in presentation matrix")
    ring = matrix[0][0].ring
    p = len(matrix)
    cols = []
    for c in range(ncols):
        v: Vec = {}
        for r in range(p):
            f = matrix[r][c]
            if f.ring != ring:
                raise RingMismatchError(f"{f.ring} vs {ring}")
            for e, a in f.terms:
                v[(r, e)] = a
        cols.append(v)
    gens = preimage(ring, cols[:s], cols[s:], p)
    return Submodule(
        ring, s, [FreeModuleElement(ring, _vec_to_polys(g, ring, s)) for g in gens]
    )


def module_intersection(m: Submodule, n: Submodule) -> Submodule:
    m._check_compatible(n)
    images = [g.to_vec() for g in m.generators]
    target = [g.to_vec() for g in n.generators]
    gens = preimage(m.ring, images, target, m.rank, tags=images)
    return Submodule(
        m.ring, m.rank, [FreeModuleElement(m.ring, _vec_to_polys(g, m.ring, m.rank)) for g in gens]
    )


def ideal_intersection(i: Ideal, j: Ideal) -> Ideal:
    out = module_intersection(i.to_submodule(), j.to_submodule())
    return Ideal(i.ring, [g[0] for g in out.generators])


def colon(m: Submodule, f: Polynomial) -> Submodule:
    """``M : f = {v : f v in M}``."""
    if f.is_zero():
        raise ValueError("colon by the zero polynomial")
    ring, s = m.ring, m.rank
    images = [_poly_to_vec(f, i) for i in range(s)]
    target = [g.to_vec() for g in m.gb()]
    gens = preimage(ring, images, target, s)
    return Submodule(ring, s, [FreeModuleElement(ring, _vec_to_polys(g, ring, s)) for g in gens])


def saturate_by_element(m, f: Polynomial):
    """``(M : f^inf)`` for a Submodule or an Ideal, via a stabilizing colon chain."""
    if f.is_zero():
        raise ValueError("saturation by the zero polynomial")
    if isinstance(m, Ideal):
        if f.ring != m.ring:
            raise RingMismatchError(f"{f.ring} vs {m.ring}")
        out = saturate_by_element(m.to_submodule(), f)
        return Ideal(m.ring, [g[0] for g in out.gb()])
    if f.ring != m.ring:
        raise RingMismatchError(f"{f.ring} vs {m.ring}")
    cur = m
    while True:
        nxt = colon(cur, f)
        if nxt.is_submodule_of(cur):
            return Submodule(m.ring, m.rank, cur.gb(), m.module_order)
        cur = nxt


def saturate_irrelevant(m):
    """Saturation by the ideal of all geometric variables.

    Computed as the intersection over variables x_i of ``M : x_i^inf``.
    """
    ring = m.ring
    sub = m.to_submodule() if isinstance(m, Ideal) else m
    out = None
    for name in ring.vars:
        sat = saturate_by_element(sub, ring.gen(name))
        out = sat if out is None else module_intersection(out, sat)
    if out is None:
        out = sub
    if isinstance(m, Ideal):
        return Ideal(ring, [g[0] for g in out.gb()])
    return out


def eliminate(ideal: Ideal, names: Sequence[str]) -> Ideal:
    """``I ∩ Q[remaining variables]`` using a block elimination order."""
    ring = ideal.ring
    names = list(names)
    for n in names:
        ring.index(n)
    rest = [n for n in ring.names if n not in names]
    elim_ring = PolyRing(tuple(names), tuple(rest), "block") if rest else PolyRing(tuple(names))
    moved = Ideal(elim_ring, [change_ring(g, elim_ring) for g in ideal.generators])
    sub = ring.drop(names)
    k = len(names)
    out = []
    for g in moved.gb():
        if all(not any(e[:k]) for e, _ in g.terms):
            out.append(Polynomial(sub, dict(_project(g, elim_ring, sub))))
    return Ideal(sub, out)


def _project(g: Polynomial, src: PolyRing, dst: PolyRing):
    pos = [src.index(n) for n in dst.names]
    for e, c in g.terms:
        yield tuple(e[i] for i in pos), c
