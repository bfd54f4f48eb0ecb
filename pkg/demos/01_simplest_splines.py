"""Splines on two pieces of a line that agree to second order at the origin."""

from qsplines import DifferenceConditions, PolyRing, bounded_slice_dim, check_quasispline_algebra, spline_kernel

R = PolyRing(("x",))

# g_1 - g_2 must be divisible by x^2
c = DifferenceConditions.from_strings(R, 2, {(1, 2): ["x^2"]})
S = spline_kernel(c)
print("conditions:", c)
print("generators:", ", ".join(str(g) for g in S.generators))

# (1, 1) and (0, x^2) generate; (x, x + x^3) is in there, (0, x) is not
for v in (["x", "x + x^3"], ["0", "x"]):
    print(v, "in S:", S.contains(v))

# dimension of splines of degree <= d: 1, then 2d
print("dim S_{<=d}:", [bounded_slice_dim(S, d) for d in range(6)])

# S is closed under entrywise products and contains the diagonal
print("algebra check:", check_quasispline_algebra(S.module, c).ok)

# with x^2 + 1 instead the difference vanishes at the complex points +-i
c3 = DifferenceConditions.from_strings(R, 2, {(1, 2): ["x^2 + 1"]})
print("x^2+1 generators:", ", ".join(str(g) for g in spline_kernel(c3).generators))
