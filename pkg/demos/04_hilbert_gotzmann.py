"""Hilbert data of a graded spline module and the Gotzmann regularity bound."""

from qsplines import DifferenceConditions, PolyRing, gotzmann_expansion, homogenize, quasispline_hilbert_data, regularity_bound

R = PolyRing(("x",))
c = homogenize(DifferenceConditions.from_strings(R, 2, {(1, 2): ["x^2"]}), "z")
data = quasispline_hilbert_data(c)

print("R:", data.series_ring, " p_B =", data.p_b)
print("S:", data.series_s, " p_S =", data.p_s)
print("G:", data.series_g, " p_G =", data.p_g)
print("H:", data.series_h, " p_H =", data.p_h)
print("cokernel identity:", data.cokernel_identity())
print("regularity bound:", data.regularity_bound())

for p in ("3*t + 1", "t + 3", "1/2*t^2 + 3/2*t + 1"):
    a = gotzmann_expansion(p)
    print(f"{p:>22}: a = {a}, m = {len(a)}")

print("bound for p_B = t+1, p_G = 2, s = 2:", regularity_bound("t+1", "2", 2))
