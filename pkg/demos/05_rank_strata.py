"""Sampled rank strata of the degree-d difference map for a family."""

from concurrent.futures import ProcessPoolExecutor

from qsplines import DifferenceConditions, PolyRing, delta_matrix, generic_rank, homogenize, sweep

R = PolyRing(("x", "y"), ("z",))
c = homogenize(
    DifferenceConditions.from_strings(R, 3, {(1, 2): ["x"], (2, 3): ["y"], (1, 3): ["x + y - z"]}),
    "w",
)

for d in range(4):
    m = delta_matrix(c, d)
    print(f"d={d}: matrix {m.shape[0]}x{m.shape[1]}, generic rank {generic_rank(m)}")

grid = [-2, -1, 0, 1, 2]
if __name__ == "__main__":
    with ProcessPoolExecutor(2) as ex:
        res = sweep(c, grid, range(4), executor=ex)
    print(res.to_csv())
    print("strata:", [[str(v) for v in s] for s in res.strata])
    print("points at generic rank:", [str(v) for v in res.generic_points()])
