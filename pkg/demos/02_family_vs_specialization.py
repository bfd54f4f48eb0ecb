"""A one-parameter family of three-piece splines and what happens at z = 0.

Three lines x = 0, y = 0 and x + y = z bound the pieces.  At z = 0 they
meet in a point and new splines appear that are not limits of splines in
the family.
"""

from qsplines import DifferenceConditions, FreeModuleElement, PolyRing, restriction_compare, spline_kernel

R = PolyRing(("x", "y"), ("z",))
c = DifferenceConditions.from_strings(
    R, 3, {(1, 2): ["x"], (2, 3): ["y"], (1, 3): ["x + y - z"]}
)
S = spline_kernel(c)
print("generic kernel:")
for g in S.generators:
    print("   ", g)

listed = [
    ["1", "1", "1"],
    ["0", "z*x - x^2", "z*x - x^2 - x*y"],
    ["0", "0", "z*y - x*y - y^2"],
    ["0", "x*y", "0"],
]
print("listed elements in S:", [S.contains(FreeModuleElement(R, v)) for v in listed])

rep = restriction_compare(c, 0)
print("flat at z = 0:", rep.flat)
print("special kernel strictly larger:", rep.inclusion_proper)
print("witness:", rep.witness)
w = FreeModuleElement(rep.special.ring, ["y", "y - x", "-x"])
print("(y, y - x, -x): special", rep.special.contains(w), "restricted", rep.restricted.contains(w))

# z acting as x (base ideal z - x) breaks flatness
B = PolyRing(("x",), ("z",))
bad = DifferenceConditions.from_strings(B, 2, {(1, 2): ["x^2"]}, base=["z - x"])
print("base-identified family flat:", restriction_compare(bad, 0).flat)
