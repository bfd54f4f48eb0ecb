"""Quasi-spline modules cut out by ideal difference-conditions.

Given ideals I_jk (1 <= j < k <= s) the quasi-spline module is

    S = {(g_1, ..., g_s) : g_j - g_k in I_jk for all j < k},

the kernel of R^s -> (+)_jk R/I_jk.  Pairs without an ideal impose no
condition.  An optional *base ideal* J is added to every I_jk; it models a
base that acts on R through relations (the ambient module becomes (R/J)^s).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Mapping, Optional, Tuple

from .groebner import (
    FreeModuleElement,
    Ideal,
    Submodule,
    diagonal,
    saturate_by_element,
    syzygy_kernel,
)
from .poly import PolyRing, Polynomial, RingMismatchError, UnknownVariableError

Pair = Tuple[int, int]


@dataclass
class DifferenceConditions:
    ring: PolyRing
    s: int
    ideals: Dict[Pair, Ideal] = field(default_factory=dict)
    base: Optional[Ideal] = None

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be at least 1")
        ideals = {}
        for (j, k), ideal in sorted(self.ideals.items()):
            if not 1 <= j < k <= self.s:
                raise ValueError(f"pair ({j}, {k}) outside 1 <= j < k <= {self.s}")
            if not isinstance(ideal, Ideal):
                ideal = Ideal(self.ring, ideal)
            if ideal.ring != self.ring:
                raise RingMismatchError(f"I_{j}{k} lives in {ideal.ring}, not {self.ring}")
            ideals[(j, k)] = ideal
        self.ideals = ideals
        if self.base is not None and not isinstance(self.base, Ideal):
            self.base = Ideal(self.ring, self.base)

    @classmethod
    def from_strings(cls, ring: PolyRing, s: int, ideals: Mapping[Pair, list], base=None):
        return cls(
            ring,
            s,
            {jk: Ideal(ring, gens) for jk, gens in ideals.items()},
            None if base is None else Ideal(ring, base),
        )

    @property
    def pairs(self) -> List[Pair]:
        return sorted(self.ideals)

    def ideal(self, j: int, k: int) -> Ideal:
        """Effective ideal for the pair, base relations included."""
        ideal = self.ideals.get((j, k))
        if ideal is None:
            return Ideal.unit(self.ring)
        if self.base is not None:
            return ideal + self.base
        return ideal

    def satisfied_by(self, v: FreeModuleElement) -> bool:
        if v.rank != self.s:
            raise ValueError(f"rank mismatch: {v.rank} vs {self.s}")
        return all(
            self.ideal(j, k).contains(v[j - 1] - v[k - 1]) for (j, k) in self.pairs
        )

    def violations(self, v: FreeModuleElement) -> List[Pair]:
        return [(j, k) for (j, k) in self.pairs if not self.ideal(j, k).contains(v[j - 1] - v[k - 1])]

    def is_homogeneous(self) -> bool:
        return all(self.ideal(j, k).is_homogeneous() for (j, k) in self.pairs)

    def __str__(self):
        parts = [f"I_{j}{k} = {self.ideals[(j, k)]}" for (j, k) in self.pairs]
        if self.base is not None:
            parts.append(f"base = {self.base}")
        return f"DifferenceConditions(s={self.s} over {self.ring}: " + "; ".join(parts) + ")"


@dataclass
class QuasiSplineModule:
    conditions: DifferenceConditions
    module: Submodule

    @property
    def generators(self) -> Tuple[FreeModuleElement, ...]:
        return self.module.gb()

    def contains(self, v) -> bool:
        return self.module.contains(v)

    __contains__ = contains


@dataclass
class AlgebraCheck:
    ok: bool
    reason: str = ""
    pair: Optional[Tuple[FreeModuleElement, FreeModuleElement]] = None
    product: Optional[FreeModuleElement] = None

    def __bool__(self):
        return self.ok


@dataclass
class FamilyReport:
    flat: bool
    inclusion_proper: bool
    witness: Optional[FreeModuleElement] = None
    generic: Optional[Submodule] = field(default=None, repr=False)
    special: Optional[Submodule] = field(default=None, repr=False)
    restricted: Optional[Submodule] = field(default=None, repr=False)


def difference_matrix(c: DifferenceConditions) -> List[List[Polynomial]]:
    """Presentation of R^s -> (+)_jk R/I_jk: s difference columns, then ideal generators."""
    ring, s = c.ring, c.s
    pairs = c.pairs
    gen_cols = []
    for row, (j, k) in enumerate(pairs):
        for g in c.ideal(j, k).generators:
            gen_cols.append((row, g))
    matrix = []
    for row, (j, k) in enumerate(pairs):
        line = []
        for i in range(1, s + 1):
            line.append(ring.one() if i == j else (-ring.one() if i == k else ring.zero()))
        for r, g in gen_cols:
            line.append(g if r == row else ring.zero())
        matrix.append(line)
    return matrix


def spline_kernel(c: DifferenceConditions) -> QuasiSplineModule:
    """The quasi-spline module S of the conditions (a reduced GB as generators)."""
    if not c.pairs:
        return QuasiSplineModule(c, Submodule.free(c.ring, c.s))
    kernel = syzygy_kernel(difference_matrix(c), c.s)
    return QuasiSplineModule(c, Submodule(c.ring, c.s, kernel.gb()))


def check_quasispline_algebra(
    module: Submodule, conditions: DifferenceConditions = None
) -> AlgebraCheck:
    """Is ``module`` a subalgebra of R^s (diagonal + closed under entrywise product)?

    With ``conditions`` the generators must also satisfy them.
    """
    ring, s = module.ring, module.rank
    if not module.contains(diagonal(ring, s)):
        return AlgebraCheck(False, "diagonal (1, ..., 1) is not in the module")
    if conditions is not None:
        for g in module.generators:
            bad = conditions.violations(g)
            if bad:
                return AlgebraCheck(False, f"generator violates condition I_{bad[0][0]}{bad[0][1]}", (g, g))
    gens = module.gb()
    for u, v in combinations_with_replacement(gens, 2):
        w = u.hadamard(v)
        if not module.contains(w):
            return AlgebraCheck(False, "not closed under entrywise multiplication", (u, v), w)
    return AlgebraCheck(True)


def specialize(c: DifferenceConditions, assignments: Mapping[str, Fraction]) -> DifferenceConditions:
    """Fix parameter values inside the ideals; the ring loses those parameters."""
    if not assignments:
        return c
    for name in assignments:
        if name not in c.ring.params:
            raise UnknownVariableError(f"{name!r} is not a parameter of {c.ring}")
    ring = c.ring.drop(assignments)
    ideals = {
        jk: Ideal(ring, [g.substitute(assignments) for g in ideal.generators])
        for jk, ideal in c.ideals.items()
    }
    base = None
    if c.base is not None:
        base = Ideal(ring, [g.substitute(assignments) for g in c.base.generators])
    return DifferenceConditions(ring, c.s, ideals, base)


def restriction_compare(c: DifferenceConditions, value) -> FamilyReport:
    """Compare the restricted generic kernel with the kernel of the specialized conditions.

    ``flat`` means the cokernel R^s/S has no (z - value)-torsion;
    ``inclusion_proper`` means the specialized kernel is strictly larger than
    the image of the generic kernel.
    """
    params = c.ring.params
    if len(params) != 1:
        raise ValueError(f"exactly one parameter is supported, ring has {len(params)}")
    z = params[0]
    value = Fraction(value)
    generic = spline_kernel(c).module
    special = spline_kernel(specialize(c, {z: value})).module
    sp_ring = special.ring
    restricted = Submodule(sp_ring, c.s, [g.substitute({z: value}) for g in generic.gb()])

    flat = saturate_by_element(generic, c.ring.gen(z) - value).is_submodule_of(generic)
    witness = next((g for g in special.gb() if not restricted.contains(g)), None)
    return FamilyReport(flat, witness is not None, witness, generic, special, restricted)
