"""Exact sparse multivariate polynomials over the rationals.

A ring is a list of *geometric* variables followed by a (possibly empty)
trailing block of *parameters*.  Grading, homogeneity and degree bounds
always refer to the geometric variables only; parameters have degree 0.

Polynomials are immutable and keep their terms as a tuple of
``(exponent tuple, Fraction)`` pairs, strictly decreasing under the ring's
monomial order.  The zero polynomial has no terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class RingMismatchError(ValueError):
    """Operands live in different polynomial rings."""


class UnknownVariableError(ValueError):
    pass


class PolynomialSyntaxError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomial orders


@lru_cache(maxsize=None)
def _lex_key(e: Exponent) -> Exponent:
    return e


@lru_cache(maxsize=None)
def _degrevlex_key(e: Exponent) -> tuple:
    return (sum(e), tuple(-a for a in reversed(e)))


@lru_cache(maxsize=None)
def _block_key(e: Exponent, split: int) -> tuple:
    return _degrevlex_key(e[:split]) + _degrevlex_key(e[split:])


@dataclass(frozen=True)
class MonomialOrder:
    """A total monomial order.

    ``kind`` is ``"lex"``, ``"degrevlex"`` or ``"block"``.  The block order
    compares the first ``split`` variables by degrevlex and breaks ties by
    degrevlex on the remaining ones, so it eliminates the leading block.
    """

    kind: str = "degrevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, e: Exponent):
        if self.kind == "lex":
            return _lex_key(e)
        if self.kind == "degrevlex":
            return _degrevlex_key(e)
        return _block_key(e, self.split)

    def keyfunc(self):
        if self.kind == "lex":
            return _lex_key
        if self.kind == "degrevlex":
            return _degrevlex_key
        split = self.split
        return lambda e: _block_key(e, split)


# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class PolyRing:
    """Q[vars][params] with a monomial order.

    With no explicit order, rings carrying parameters use the block order
    with the parameters as trailing block and plain rings use degrevlex.
    """

    vars: Tuple[str, ...]
    params: Tuple[str, ...] = ()
    order_kind: str = ""
    order: MonomialOrder = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "params", tuple(self.params))
        names = self.vars + self.params
        for name in names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        kind = self.order_kind or ("block" if self.params else "degrevlex")
        if kind == "block" and not self.params:
            kind = "degrevlex"
        object.__setattr__(self, "order_kind", kind)
        object.__setattr__(self, "order", MonomialOrder(kind, len(self.vars)))

    @property
    def names(self) -> Tuple[str, ...]:
        return self.vars + self.params

    @property
    def ngens(self) -> int:
        return len(self.vars) + len(self.params)

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariableError(f"unknown variable {name!r} in {self}") from None

    def degree(self, e: Exponent) -> int:
        """Geometric degree of an exponent vector."""
        return sum(e[: len(self.vars)])

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: Scalar) -> "Polynomial":
        return Polynomial(self, {(0,) * self.ngens: Fraction(c)})

    def gen(self, name: str) -> "Polynomial":
        e = [0] * self.ngens
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self):
        return [self.gen(n) for n in self.names]

    def monomial(self, e: Exponent, c: Scalar = 1) -> "Polynomial":
        return Polynomial(self, {tuple(e): Fraction(c)})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __call__(self, text: Union[str, Scalar]) -> "Polynomial":
        if isinstance(text, str):
            return self.parse(text)
        return self.const(text)

    def monomials_of_degree(self, d: int) -> list:
        """Exponents of geometric degree ``d`` (parameter exponents zero), descending."""
        if d < 0:
            return []
        out = [e + (0,) * len(self.params) for e in _compositions(d, len(self.vars))]
        key = self.order.key
        out.sort(key=key, reverse=True)
        return out

    def drop(self, names: Iterable[str]) -> "PolyRing":
        names = set(names)
        for n in names:
            self.index(n)
        kind = self.order_kind
        return PolyRing(
            tuple(v for v in self.vars if v not in names),
            tuple(p for p in self.params if p not in names),
            "" if kind == "block" else kind,
        )

    def __str__(self):
        inner = ",".join(self.vars)
        if self.params:
            return f"Q[{','.join(self.params)}][{inner}]"
        return f"Q[{inner}]"


def _compositions(d: int, n: int):
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _compositions(d - a, n - 1):
            yield (a,) + rest


# ---------------------------------------------------------------------------
# polynomials


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


class Polynomial:
    """Immutable polynomial in a :class:`PolyRing`."""

    __slots__ = ("ring", "terms", "_dict", "_hash")

    def __init__(self, ring: PolyRing, terms: Union[Mapping[Exponent, Scalar], Iterable]):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            acc: Dict[Exponent, Fraction] = {}
            for e, c in terms:
                acc[e] = acc.get(e, 0) + c
            items = acc.items()
        n = ring.ngens
        d = {}
        for e, c in items:
            if c:
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not fit {ring}")
                d[e] = Fraction(c)
        key = ring.order.key
        self.ring = ring
        self.terms = tuple(sorted(d.items(), key=lambda t: key(t[0]), reverse=True))
        self._dict = d
        self._hash = None

    # -- basic accessors
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def as_dict(self) -> Dict[Exponent, Fraction]:
        return dict(self._dict)

    def coefficient(self, e: Exponent) -> Fraction:
        return self._dict.get(tuple(e), Fraction(0))

    @property
    def lm(self) -> Exponent:
        return self.terms[0][0]

    @property
    def lc(self) -> Fraction:
        return self.terms[0][1]

    def degree(self) -> int:
        """Geometric total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.degree(e) for e, _ in self.terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.degree(e) for e, _ in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e, _ in self.terms)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self * (1 / self.lc)

    # -- arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self._dict)
        for e, c in other._dict.items():
            d[e] = d.get(e, 0) + c
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self._dict.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self._dict)
        for e, c in other._dict.items():
            d[e] = d.get(e, 0) - c
        return Polynomial(self.ring, d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.ring, {e: c * other for e, c in self._dict.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._dict.items():
            for e2, c2 in other._dict.items():
                e = _add_exp(e1, e2)
                d[e] = d.get(e, 0) + c1 * c2
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_term(self, e: Exponent, c: Scalar = 1) -> "Polynomial":
        return Polynomial(self.ring, {_add_exp(e, f): c * a for f, a in self._dict.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._dict == other._dict

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._dict.items())))
        return self._hash

    # -- division, substitution
    def divide(self, divisors: Sequence["Polynomial"]):
        """Multivariate division; returns ``(quotients, remainder)``."""
        return multivariate_division(self, divisors)

    def substitute(self, assignments: Mapping[str, Scalar]) -> "Polynomial":
        return substitute(self, assignments)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def multivariate_division(f: Polynomial, divisors: Sequence[Polynomial]):
    """Divide ``f`` by an ordered list of divisors.

    Returns ``(quotients, remainder)`` with ``f = sum(q_i * d_i) + r`` and no
    term of ``r`` divisible by a leading monomial of a divisor.
    """
    ring = f.ring
    for g in divisors:
        if g.ring != ring:
            raise RingMismatchError(f"{g.ring} vs {ring}")
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
    key = ring.order.key
    p = dict(f._dict)
    quots = [dict() for _ in divisors]
    rem: Dict[Exponent, Fraction] = {}
    while p:
        e = max(p, key=key)
        c = p[e]
        for i, g in enumerate(divisors):
            if _divides(g.lm, e):
                u = tuple(a - b for a, b in zip(e, g.lm))
                q = c / g.lc
                quots[i][u] = quots[i].get(u, 0) + q
                for ge, gc in g.terms:
                    te = _add_exp(u, ge)
                    v = p.get(te, 0) - q * gc
                    if v:
                        p[te] = v
                    else:
                        p.pop(te, None)
                break
        else:
            rem[e] = c
            del p[e]
    return [Polynomial(ring, q) for q in quots], Polynomial(ring, rem)


def substitute(f: Polynomial, assignments: Mapping[str, Scalar]) -> Polynomial:
    """Evaluate the named variables at rationals; the result drops them from the ring."""
    if not assignments:
        return f
    ring = f.ring
    idx = {ring.index(n): Fraction(v) for n, v in assignments.items()}
    target = ring.drop(assignments)
    keep = [i for i in range(ring.ngens) if i not in idx]
    d: Dict[Exponent, Fraction] = {}
    for e, c in f.terms:
        for i, v in idx.items():
            if e[i]:
                c = c * v ** e[i]
        if c:
            ne = tuple(e[i] for i in keep)
            d[ne] = d.get(ne, 0) + c
    return Polynomial(target, d)


def change_ring(f: Polynomial, ring: PolyRing) -> Polynomial:
    """Move ``f`` into a ring containing all of its variables (by name)."""
    if f.ring == ring:
        return f
    src = f.ring.names
    pos = [ring.index(n) for n in src]
    d = {}
    for e, c in f.terms:
        ne = [0] * ring.ngens
        for i, a in zip(pos, e):
            ne[i] = a
        d[tuple(ne)] = c
    return Polynomial(ring, d)


# ---------------------------------------------------------------------------
# text syntax

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            if op not in "+-*^/()":
                raise PolynomialSyntaxError(f"unexpected character {op!r} in {text!r}")
            out.append(("op", op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg):
        raise PolynomialSyntaxError(f"{msg} in {self.text!r}")

    def parse(self) -> Polynomial:
        if not self.toks:
            self.error("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        sign = 1
        if self.peek() == ("op", "+"):
            self.take()
        elif self.peek() == ("op", "-"):
            self.take()
            sign = -1
        acc = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                acc = acc * self.factor()
            elif kind in ("num", "name") or (kind, val) == ("op", "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        base = self.base()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                self.error("exponent must be a non-negative integer")
            base = base ** val
        return base

    def base(self):
        kind, val = self.take()
        if kind == "num":
            if self.peek() == ("op", "/"):
                self.take()
                k2, den = self.take()
                if k2 != "num" or den == 0:
                    self.error("bad rational literal")
                return self.ring.const(Fraction(val, den))
            return self.ring.const(val)
        if kind == "name":
            return self.ring.gen(val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                self.error("missing ')'")
            return p
        self.error(f"unexpected token {val!r}")


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``z*x - x^2``, ``-2/5 x^2*y`` and similar into ``ring``."""
    return _Parser(str(text), ring).parse()


def _format_monomial(e: Exponent, names: Sequence[str]) -> str:
    parts = []
    for n, a in zip(names, e):
        if a == 1:
            parts.append(n)
        elif a > 1:
            parts.append(f"{n}^{a}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, names: Sequence[str] = None) -> str:
    names = names or f.ring.names
    if not f.terms:
        return "0"
    out = []
    for k, (e, c) in enumerate(f.terms):
        mono = _format_monomial(e, names)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
