import io
import json
import shutil
import subprocess
import sys

import pytest

from qsplines.cli import (
    JobSpec,
    bundled_jobs_dir,
    dumps,
    main,
    matches,
    reproduce_all,
    run_job,
)

TRIANGLE = {
    "ring": {"vars": ["x", "y"], "params": ["z"], "order": "block"},
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


def test_spline_kernel_job():
    code, doc = run_job(dict(TRIANGLE, command="spline-kernel", options={"members": VS}))
    assert code == 0
    assert doc["result"]["membership"] == [True] * 4
    assert doc["command"] == "spline-kernel"
    assert doc["timing"] == {"enabled": False}
    assert doc["input"]["s"] == 3


def test_kernel_generators_span_listed_elements():
    from qsplines import DifferenceConditions, FreeModuleElement, PolyRing, Submodule

    code, doc = run_job(dict(TRIANGLE, command="spline-kernel"))
    ring = PolyRing(("x", "y"), ("z",))
    m = Submodule(ring, 3, doc["result"]["generators"])
    assert all(m.contains(FreeModuleElement(ring, v)) for v in VS)


def test_gotzmann_job():
    code, doc = run_job({"command": "gotzmann", "options": {"polynomial": "3*t+1"}})
    assert code == 0 and doc["result"]["m"] == 4


def test_missing_s():
    data = dict(TRIANGLE, command="spline-kernel")
    del data["s"]
    code, doc = run_job(data)
    assert code == 2 and doc["error"]["field"] == "s"


@pytest.mark.parametrize(
    "patch, field",
    [
        ({"command": "frobnicate"}, "command"),
        ({"ring": {"params": []}}, "ring.vars"),
        ({"s": 0}, "s"),
        ({"conditions": [{"j": 2, "k": 1, "generators": ["x"]}]}, "conditions[0]"),
        ({"conditions": [{"j": 1, "k": 2, "generators": ["x +"]}]}, "conditions[0].generators[0]"),
        ({"conditions": [{"j": 1, "k": 2, "generators": ["w"]}]}, "conditions[0].generators[0]"),
        ({"conditions": [{"j": 1, "k": 2}]}, "conditions[0].generators"),
    ],
)
def test_validation_errors(patch, field):
    data = dict(TRIANGLE, command="spline-kernel")
    data.update(patch)
    code, doc = run_job(data)
    assert code == 2 and doc["error"]["field"] == field


def test_missing_option():
    code, doc = run_job(dict(TRIANGLE, command="family-compare"))
    assert code == 2 and doc["error"]["field"] == "options.value"


def test_engine_error():
    code, doc = run_job({"command": "gotzmann", "options": {"polynomial": "t - 3"}})
    assert code == 3 and doc["error"]["type"] == "NotHilbertPolynomialError"
    # Hilbert data of a parametric ring is an engine error too
    code, doc = run_job(dict(TRIANGLE, command="hilbert"))
    assert code == 3


def test_command_override():
    code, doc = run_job(dict(TRIANGLE, command="spline-kernel", options={"degree": 1, "value": "0"}), "delta-rank")
    assert code == 0 and doc["command"] == "delta-rank"


@pytest.mark.parametrize("command", ["specialize", "homogenize", "round-trip", "check-algebra", "spline-dim", "delta-rank", "sweep"])
def test_every_command_runs(command):
    data = dict(
        TRIANGLE,
        command=command,
        options={
            "assignments": {"z": "0"},
            "value": "0",
            "degrees": [0, 1, 2],
            "grid": ["0", "1"],
            "homogenize": True,
        },
    )
    code, doc = run_job(data)
    assert code == 0, doc


def test_homogenize_prints_z_when_free():
    data = {
        "command": "homogenize",
        "ring": {"vars": ["x"]},
        "s": 2,
        "conditions": [{"j": 1, "k": 2, "generators": ["x^2+1"]}],
    }
    code, doc = run_job(data)
    assert doc["result"]["homogenizingVariable"] == "z"
    assert doc["result"]["conditions"][0]["generators"] == ["x^2 + z^2"]


@pytest.mark.parametrize("path", sorted(bundled_jobs_dir().glob("*.json")), ids=lambda p: p.stem)
def test_bundled_job_round_trip(path):
    data = json.loads(path.read_text())
    spec = JobSpec.from_dict(data)
    again = JobSpec.from_dict(json.loads(json.dumps(spec.to_dict())))
    assert again == spec
    assert again.to_dict() == spec.to_dict()


def test_matches():
    assert matches({"a": 1}, {"a": 1, "b": 2})
    assert not matches({"a": 1}, {"b": 2})
    assert matches({"a": {"b": [1]}}, {"a": {"b": [1], "c": 0}})
    assert not matches({"a": [1]}, {"a": [1, 2]})


def test_reproduce_all_bundled():
    out = io.StringIO()
    assert reproduce_all(out=out) == 0
    text = out.getvalue()
    assert "FAIL" not in text
    for n in range(1, 10):
        assert f"PASS criterion {n}" in text


def test_reproduce_all_corrupted(tmp_path):
    for p in bundled_jobs_dir().glob("07_*.json"):
        shutil.copy(p, tmp_path)
    bad = tmp_path / "07_gotzmann_3t_plus_1.json"
    data = json.loads(bad.read_text())
    data["expect"]["m"] = 5
    bad.write_text(json.dumps(data))
    (tmp_path / "broken.json").write_text("{not json")
    out = io.StringIO()
    assert reproduce_all(tmp_path, out=out) != 0
    text = out.getvalue()
    assert "FAIL 07_gotzmann_3t_plus_1" in text
    assert "FAIL broken" in text
    assert "failed jobs:" in text


def test_reproduce_all_empty(tmp_path):
    out = io.StringIO()
    assert reproduce_all(tmp_path, out=out) != 0
    assert "no jobs found" in out.getvalue()


def test_main_files_and_csv(tmp_path, capsys):
    job = tmp_path / "job.json"
    job.write_text(json.dumps(dict(TRIANGLE, command="sweep", options={"homogenize": True, "grid": [-1, 0, 1], "degrees": {"from": 0, "to": 3}})))
    out = tmp_path / "out.csv"
    assert main(["--job", str(job), "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "value,d,rank,splineDim,stratumId" and len(lines) == 13
    assert main(["--job", str(job), "--command", "spline-kernel", "--format", "csv"]) == 2
    assert main(["--job", str(tmp_path / "missing.json")]) == 2


def test_timing_flag():
    code, doc = run_job({"command": "gotzmann", "options": {"polynomial": "t+3"}}, timing=True)
    assert doc["timing"]["enabled"] is True and doc["timing"]["seconds"] >= 0


def test_console_entry_point_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "qsplines"],
        input=json.dumps({"command": "gotzmann", "options": {"polynomial": "3*t+1"}}),
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["m"] == 4
    assert proc.stdout == dumps(json.loads(proc.stdout))
