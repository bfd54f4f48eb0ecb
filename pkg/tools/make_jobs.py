"""Regenerate the bundled job files (run from the repository root)."""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "qsplines" / "jobs"

Q_X = {"vars": ["x"], "params": [], "order": "degrevlex"}
Q_XY = {"vars": ["x", "y"], "params": [], "order": "degrevlex"}
Q_Z_XY = {"vars": ["x", "y"], "params": ["z"], "order": "block"}
Q_Z_X = {"vars": ["x"], "params": ["z"], "order": "block"}

SIMPLEST = {"ring": Q_X, "s": 2, "conditions": [{"j": 1, "k": 2, "generators": ["x^2"]}]}
TRIANGLE = {
    "ring": Q_Z_XY,
    "s": 3,
    "conditions": [
        {"j": 1, "k": 2, "generators": ["x"]},
        {"j": 1, "k": 3, "generators": ["x + y - z"]},
        {"j": 2, "k": 3, "generators": ["y"]},
    ],
}
VS = [
    ["1", "1", "1"],
    ["0", "z*x - x^2", "z*x - x^2 - x*y"],
    ["0", "0", "z*y - x*y - y^2"],
    ["0", "x*y", "0"],
]

JOBS = {
    "01_simplest_kernel": dict(
        SIMPLEST,
        command="spline-kernel",
        criterion=1,
        options={"members": [["1", "1"], ["0", "x^2"]]},
        expect={"generators": [["1", "1"], ["0", "x^2"]], "membership": [True, True]},
    ),
    "01_simplest_slices": dict(
        SIMPLEST,
        command="round-trip",
        criterion=1,
        options={"degrees": {"from": 0, "to": 5}},
        expect={
            "slices": [
                {"d": d, "graded": max(1, 2 * d), "bounded": max(1, 2 * d)} for d in range(6)
            ]
        },
    ),
    "02_triangle_membership": dict(
        TRIANGLE,
        command="spline-kernel",
        criterion=2,
        options={"members": VS},
        expect={"membership": [True, True, True, True]},
    ),
    "03_triangle_witness": dict(
        TRIANGLE,
        command="family-compare",
        criterion=3,
        options={"value": "0", "candidates": [["y", "y - x", "-x"]]},
        expect={
            "flat": True,
            "inclusionProper": True,
            "candidates": [{"inSpecial": True, "inRestricted": False}],
        },
    ),
    "04_base_identified_not_family": dict(
        ring=Q_Z_X,
        s=2,
        conditions=[{"j": 1, "k": 2, "generators": ["x^2"]}],
        base_ideal=["z - x"],
        command="family-compare",
        criterion=4,
        options={"value": "0"},
        expect={"flat": False},
    ),
    "05_simplest_round_trip": dict(
        SIMPLEST,
        command="round-trip",
        criterion=5,
        options={"degrees": {"from": 0, "to": 6}},
        expect={"roundTrip": True, "unitDefect": True, "conditionsCommute": True},
    ),
    "06_simplest_cokernel_identity": dict(
        SIMPLEST,
        command="hilbert",
        criterion=6,
        options={"homogenize": True},
        expect={"cokernelIdentity": True},
    ),
    "07_gotzmann_3t_plus_1": dict(
        command="gotzmann", criterion=7, options={"polynomial": "3*t+1"}, expect={"m": 4}
    ),
    "07_gotzmann_t_plus_3": dict(
        command="gotzmann", criterion=7, options={"polynomial": "t+3"}, expect={"m": 3}
    ),
    "07_regularity_bound": dict(
        command="gotzmann",
        criterion=7,
        options={"p_b": "t+1", "p_g": "2", "s": 2},
        expect={"regularityBound": 4},
    ),
    "08_plane_spline_dims": dict(
        ring=Q_XY,
        s=2,
        conditions=[{"j": 1, "k": 2, "generators": ["x^2"]}],
        command="spline-dim",
        criterion=8,
        options={"degrees": {"from": 0, "to": 6}, "check_kernel": True},
        expect={
            "dims": [
                {"d": d, "splineDim": d + 1 + max(0, d - 1), "kernelSlice": d + 1 + max(0, d - 1)}
                for d in range(7)
            ]
        },
    ),
    "09_triangle_sweep": dict(
        TRIANGLE,
        command="sweep",
        criterion=9,
        options={"homogenize": True, "grid": ["-1", "0", "1"], "degrees": {"from": 0, "to": 3}},
        expect={"strata": [["-1", "1"], ["0"]], "semicontinuous": True},
    ),
}

ORDER = ["name", "command", "criterion", "ring", "s", "conditions", "base_ideal", "options", "expect"]

if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for name, job in JOBS.items():
        job = dict(job, name=name)
        doc = {k: job[k] for k in ORDER if k in job}
        (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {len(JOBS)} jobs to {OUT}")
