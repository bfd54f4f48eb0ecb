"""Deterministic random instances: principal conditions, s <= 3, degree <= 3."""

import random
from fractions import Fraction
from itertools import combinations_with_replacement

from qsplines import DifferenceConditions, PolyRing

NAMES = ("x", "y", "w")


def _poly_dict(rng, n, deg, homogeneous):
    """A random nonzero polynomial as {exponent: coefficient}, of degree exactly deg."""
    while True:
        out = {}
        degrees = [deg] if homogeneous else range(deg + 1)
        for k in degrees:
            for combo in combinations_with_replacement(range(n), k):
                if rng.random() < (0.6 if k == deg else 0.3):
                    e = [0] * n
                    for i in combo:
                        e[i] += 1
                    out[tuple(e)] = Fraction(rng.choice([-2, -1, 1, 1, 2, 3]))
        if any(sum(e) == deg for e in out):
            return out


def _to_str(f, names):
    parts = []
    for e, c in sorted(f.items(), reverse=True):
        mono = "*".join(f"{v}^{a}" for v, a in zip(names, e) if a)
        parts.append(f"({c})" + (f"*{mono}" if mono else ""))
    return " + ".join(parts)


class Instance:
    def __init__(self, n, s, dicts):
        self.n = n
        self.s = s
        self.dicts = dicts
        self.ring = PolyRing(NAMES[:n])
        self.conditions = DifferenceConditions.from_strings(
            self.ring, s, {jk: [_to_str(f, NAMES[:n])] for jk, f in dicts.items()}
        )

    def __repr__(self):
        return f"Instance({self.conditions})"


def generate(seed, count, homogeneous=False):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice([1, 2, 2, 2, 3])
        s = rng.choice([2, 3])
        pairs = [(j, k) for j in range(1, s + 1) for k in range(j + 1, s + 1)]
        chosen = [p for p in pairs if rng.random() < 0.8] or [pairs[0]]
        max_deg = 2 if n == 3 else 3
        dicts = {
            p: _poly_dict(rng, n, rng.randint(1, max_deg), homogeneous) for p in chosen
        }
        out.append(Instance(n, s, dicts))
    return out


def corpus():
    return generate(20240501, 22)


def homogeneous_corpus():
    return generate(20240502, 20, homogeneous=True)
