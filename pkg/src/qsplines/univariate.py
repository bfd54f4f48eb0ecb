"""Dense univariate polynomials with rational coefficients.

Used for Hilbert polynomials in ``t`` and for matrix entries that depend on
a single parameter.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .poly import PolyRing, parse_polynomial


class UPoly:
    """Coefficients stored low degree first, trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> "UPoly":
        return cls([c])

    @classmethod
    def t(cls) -> "UPoly":
        return cls([0, 1])

    @classmethod
    def binomial(cls, shift: int, k: int) -> "UPoly":
        """The polynomial ``C(t + shift, k)`` in ``t``."""
        out = cls([1])
        for i in range(k):
            out = out * cls([Fraction(shift - i, i + 1), Fraction(1, i + 1)])
        return out

    @classmethod
    def parse(cls, text: str, var: str = "t") -> "UPoly":
        p = parse_polynomial(text, PolyRing((var,)))
        deg = max((e[0] for e, _ in p.terms), default=-1)
        cs = [0] * (deg + 1)
        for e, c in p.terms:
            cs[e[0]] = c
        return cls(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @staticmethod
    def _lift(x) -> "UPoly":
        return x if isinstance(x, UPoly) else UPoly([x])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return UPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: "UPoly"):
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lc = other.lc
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lc
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UPoly(q), UPoly(rem)

    def exact_div(self, other: "UPoly") -> "UPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return q

    def __call__(self, x: Union[int, Fraction, "UPoly"]):
        """Evaluate at a rational, or compose with another polynomial."""
        acc = UPoly() if isinstance(x, UPoly) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k) -> "UPoly":
        """``p(t + k)``."""
        return self(UPoly([k, 1]))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UPoly([other])
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        out = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"UPoly({self.format()!r})"
