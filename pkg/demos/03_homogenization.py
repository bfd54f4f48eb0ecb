"""Homogenizing splines and getting them back."""

from qsplines import (
    DifferenceConditions,
    Ideal,
    PolyRing,
    bounded_slice_dim,
    dehomogenize,
    graded_slice_dim,
    homogenize,
    homogenized_conditions_commute,
    round_trip_check,
    spline_kernel,
    z_saturate,
)

R = PolyRing(("x",))
I = Ideal(R, ["x^2 + 1"])
hI = homogenize(I, "z")
print("homogenize", I, "->", hI.gb())
print("and back:", dehomogenize(hI, "z").gb())

# saturation by z removes the z-torsion
Rz = hI.ring
print("(z*x) saturated:", z_saturate(Ideal(Rz, ["z*x"]), "z").gb())

c = DifferenceConditions.from_strings(R, 2, {(1, 2): ["x^2 + 1"]})
S = spline_kernel(c).module
N = homogenize(S, "z")
print("homogenized kernel:", [str(g) for g in N.gb()])
print("round trip:", round_trip_check(S, "z"))
print("conditions commute:", homogenized_conditions_commute(c, "z"))

# degree-d piece of the homogenization = degree <= d piece of S
for d in range(6):
    print(d, graded_slice_dim(N, d), bounded_slice_dim(S, d))
