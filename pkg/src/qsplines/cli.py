"""Batch job runner.

A job is a JSON object::

    {
      "name": "simplest",
      "command": "spline-kernel",
      "ring": {"vars": ["x"], "params": [], "order": "degrevlex"},
      "s": 2,
      "conditions": [{"j": 1, "k": 2, "generators": ["x^2"]}],
      "base_ideal": [],
      "options": {},
      "expect": {...},
      "criterion": 1
    }

``expect`` and ``criterion`` are only used by the reproduction runner: the
job passes when every key in ``expect`` matches the result (dicts are
compared as subsets, everything else exactly).

Exit codes: 0 success, 2 invalid job, 3 engine error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .groebner import FreeModuleElement, Submodule
from .hilbert import (
    NotHilbertPolynomialError,
    NotHomogeneousError,
    gotzmann_expansion,
    hilbert_function,
    hilbert_series,
    quasispline_hilbert_data,
    regularity_bound,
)
from .homogenization import (
    bounded_slice_dim,
    dehomogenize,
    graded_slice_dim,
    homogenize,
    homogenized_conditions_commute,
    round_trip_check,
    unit_defect_check,
    z_saturate,
)
from .poly import PolyRing, PolynomialSyntaxError, UnknownVariableError
from .quasispline import (
    DifferenceConditions,
    check_quasispline_algebra,
    restriction_compare,
    spline_kernel,
    specialize,
)
from .strata import delta_matrix, generic_rank, rank_exact, spline_dimension, sweep
from .univariate import UPoly

COMMANDS = (
    "spline-kernel",
    "check-algebra",
    "specialize",
    "family-compare",
    "hilbert",
    "gotzmann",
    "homogenize",
    "round-trip",
    "delta-rank",
    "spline-dim",
    "sweep",
)

# commands that do not need a ring or conditions
_RINGLESS = {"gotzmann"}

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_ENGINE = 0, 1, 2, 3


class JobValidationError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


@dataclass
class JobSpec:
    command: str
    ring: Optional[PolyRing] = None
    s: Optional[int] = None
    conditions: List[Tuple[int, int, List[str]]] = field(default_factory=list)
    base_ideal: List[str] = field(default_factory=list)
    options: Dict[str, Any] = field(default_factory=dict)
    name: str = ""
    expect: Optional[Dict[str, Any]] = None
    criterion: Optional[int] = None

    @classmethod
    def from_dict(cls, data: Any, command: str = None) -> "JobSpec":
        if not isinstance(data, dict):
            raise JobValidationError("job", "expected a JSON object")
        command = command or data.get("command")
        if command is None:
            raise JobValidationError("command", "missing")
        if command not in COMMANDS:
            raise JobValidationError("command", f"unknown command {command!r}")
        options = data.get("options", {})
        if not isinstance(options, dict):
            raise JobValidationError("options", "expected an object")
        job = cls(
            command=command,
            options=options,
            name=str(data.get("name", "")),
            expect=data.get("expect"),
            criterion=data.get("criterion"),
        )
        if command in _RINGLESS and "ring" not in data:
            return job
        job.ring = _ring_from(data.get("ring"))
        if "s" not in data:
            raise JobValidationError("s", "missing")
        s = data["s"]
        if not isinstance(s, int) or isinstance(s, bool) or s < 1:
            raise JobValidationError("s", f"expected a positive integer, got {s!r}")
        job.s = s
        conds = data.get("conditions", [])
        if not isinstance(conds, list):
            raise JobValidationError("conditions", "expected a list")
        seen = set()
        for n, item in enumerate(conds):
            where = f"conditions[{n}]"
            if not isinstance(item, dict):
                raise JobValidationError(where, "expected an object")
            for key in ("j", "k", "generators"):
                if key not in item:
                    raise JobValidationError(f"{where}.{key}", "missing")
            j, k = item["j"], item["k"]
            if not (isinstance(j, int) and isinstance(k, int) and 1 <= j < k <= s):
                raise JobValidationError(where, f"need 1 <= j < k <= s, got j={j!r}, k={k!r}")
            if (j, k) in seen:
                raise JobValidationError(where, f"duplicate pair ({j}, {k})")
            seen.add((j, k))
            gens = _strings(item["generators"], f"{where}.generators")
            for m, g in enumerate(gens):
                _check_poly(job.ring, g, f"{where}.generators[{m}]")
            job.conditions.append((j, k, gens))
        base = _strings(data.get("base_ideal", []), "base_ideal")
        for m, g in enumerate(base):
            _check_poly(job.ring, g, f"base_ideal[{m}]")
        job.base_ideal = base
        return job

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"command": self.command, "options": self.options}
        if self.name:
            out["name"] = self.name
        if self.ring is not None:
            out["ring"] = {
                "vars": list(self.ring.vars),
                "params": list(self.ring.params),
                "order": self.ring.order_kind,
            }
            out["s"] = self.s
            out["conditions"] = [
                {"j": j, "k": k, "generators": list(g)} for j, k, g in self.conditions
            ]
            if self.base_ideal:
                out["base_ideal"] = list(self.base_ideal)
        if self.expect is not None:
            out["expect"] = self.expect
        if self.criterion is not None:
            out["criterion"] = self.criterion
        return out

    def difference_conditions(self) -> DifferenceConditions:
        ideals = {(j, k): gens for j, k, gens in self.conditions}
        return DifferenceConditions.from_strings(
            self.ring, self.s, ideals, self.base_ideal or None
        )


def _ring_from(spec) -> PolyRing:
    if spec is None:
        raise JobValidationError("ring", "missing")
    if not isinstance(spec, dict):
        raise JobValidationError("ring", "expected an object")
    if "vars" not in spec:
        raise JobValidationError("ring.vars", "missing")
    vars_ = _strings(spec["vars"], "ring.vars")
    params = _strings(spec.get("params", []), "ring.params")
    order = spec.get("order", "")
    try:
        return PolyRing(tuple(vars_), tuple(params), order)
    except ValueError as exc:
        raise JobValidationError("ring", str(exc)) from None


def _strings(value, where: str) -> List[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise JobValidationError(where, "expected a list of strings")
    return list(value)


def _check_poly(ring: PolyRing, text: str, where: str):
    try:
        ring.parse(text)
    except (PolynomialSyntaxError, UnknownVariableError) as exc:
        raise JobValidationError(where, str(exc)) from None


def _option(job: JobSpec, name: str, default=None, required: bool = False):
    if name in job.options:
        return job.options[name]
    if required:
        raise JobValidationError(f"options.{name}", "missing")
    return default


def _degrees(job: JobSpec, default=None) -> List[int]:
    if "degrees" in job.options:
        spec = job.options["degrees"]
        if isinstance(spec, dict):
            return list(range(int(spec.get("from", 0)), int(spec["to"]) + 1))
        if isinstance(spec, list) and all(isinstance(d, int) for d in spec):
            return list(spec)
        raise JobValidationError("options.degrees", "expected a list or {from, to}")
    if "degree" in job.options:
        return [int(job.options["degree"])]
    if default is None:
        raise JobValidationError("options.degree", "missing")
    return list(default)


def _vectors(ring: PolyRing, s: int, raw, where: str) -> List[FreeModuleElement]:
    if not isinstance(raw, list):
        raise JobValidationError(where, "expected a list of vectors")
    out = []
    for n, v in enumerate(raw):
        ents = _strings(v, f"{where}[{n}]")
        if len(ents) != s:
            raise JobValidationError(f"{where}[{n}]", f"expected {s} entries")
        for g in ents:
            _check_poly(ring, g, f"{where}[{n}]")
        out.append(FreeModuleElement(ring, ents))
    return out


# ---------------------------------------------------------------------------
# printing


def _hvar(ring: PolyRing) -> str:
    return "z_h" if "z" in ring.names else "z"


def _gens(m: Submodule) -> List[List[str]]:
    return [v.to_strings() for v in m.gb()]


def _vec(v: Optional[FreeModuleElement]):
    return None if v is None else v.to_strings()


def _conditions_out(c: DifferenceConditions) -> Dict[str, Any]:
    out = {
        "ring": {"vars": list(c.ring.vars), "params": list(c.ring.params)},
        "conditions": [
            {"j": j, "k": k, "generators": [str(g) for g in c.ideals[(j, k)].gb()]}
            for j, k in c.pairs
        ],
    }
    if c.base is not None:
        out["base_ideal"] = [str(g) for g in c.base.gb()]
    return out


def _upoly(p) -> str:
    return (p.poly if hasattr(p, "poly") else p).format("t")


# ---------------------------------------------------------------------------
# commands


def _cmd_spline_kernel(job: JobSpec) -> Dict[str, Any]:
    c = job.difference_conditions()
    m = spline_kernel(c).module
    out: Dict[str, Any] = {"generators": _gens(m)}
    if "members" in job.options:
        vs = _vectors(c.ring, c.s, job.options["members"], "options.members")
        out["membership"] = [m.contains(v) for v in vs]
    return out


def _cmd_check_algebra(job: JobSpec) -> Dict[str, Any]:
    c = job.difference_conditions()
    if "module" in job.options:
        gens = _vectors(c.ring, c.s, job.options["module"], "options.module")
        m = Submodule(c.ring, c.s, gens)
    else:
        m = spline_kernel(c).module
    res = check_quasispline_algebra(m, c)
    return {
        "ok": res.ok,
        "reason": res.reason,
        "pair": None if res.pair is None else [_vec(v) for v in res.pair],
        "product": _vec(res.product),
    }


def _assignments(job: JobSpec) -> Dict[str, Fraction]:
    raw = _option(job, "assignments", required=True)
    if not isinstance(raw, dict):
        raise JobValidationError("options.assignments", "expected an object")
    try:
        return {k: Fraction(str(v)) for k, v in raw.items()}
    except ValueError:
        raise JobValidationError("options.assignments", "values must be rationals") from None


def _cmd_specialize(job: JobSpec) -> Dict[str, Any]:
    c = specialize(job.difference_conditions(), _assignments(job))
    out = _conditions_out(c)
    out["generators"] = _gens(spline_kernel(c).module)
    return out


def _value(job: JobSpec) -> Fraction:
    raw = _option(job, "value", required=True)
    try:
        return Fraction(str(raw))
    except ValueError:
        raise JobValidationError("options.value", "expected a rational") from None


def _cmd_family_compare(job: JobSpec) -> Dict[str, Any]:
    c = job.difference_conditions()
    rep = restriction_compare(c, _value(job))
    out: Dict[str, Any] = {
        "flat": rep.flat,
        "inclusionProper": rep.inclusion_proper,
        "witness": _vec(rep.witness),
        "special": _gens(rep.special),
        "restricted": _gens(rep.restricted),
    }
    if "candidates" in job.options:
        vs = _vectors(rep.special.ring, c.s, job.options["candidates"], "options.candidates")
        out["candidates"] = [
            {"inSpecial": rep.special.contains(v), "inRestricted": rep.restricted.contains(v)}
            for v in vs
        ]
    return out


def _cmd_hilbert(job: JobSpec) -> Dict[str, Any]:
    c = job.difference_conditions()
    if _option(job, "homogenize", False):
        c = homogenize(c, _hvar(c.ring))
    data = quasispline_hilbert_data(c)
    degrees = _degrees(job, range(0, 7))
    out = {
        "ring": {"vars": list(c.ring.vars)},
        "series": {
            "ring": data.series_ring.format(),
            "G": data.series_g.format(),
            "S": data.series_s.format(),
            "H": data.series_h.format(),
        },
        "polynomials": {
            "B": _upoly(data.p_b),
            "G": _upoly(data.p_g),
            "S": _upoly(data.p_s),
            "H": _upoly(data.p_h),
            "ideals": {f"{j},{k}": _upoly(p) for (j, k), p in data.p_ideals.items()},
        },
        "regularityIndex": {
            "G": data.p_g.regularity_index,
            "S": data.p_s.regularity_index,
        },
        "table": [
            {
                "d": d,
                "B": hilbert_function(data.series_ring, d),
                "G": hilbert_function(data.series_g, d),
                "S": hilbert_function(data.series_s, d),
            }
            for d in degrees
        ],
        "cokernelIdentity": data.cokernel_identity(),
    }
    try:
        out["regularityBound"] = data.regularity_bound()
    except NotHilbertPolynomialError as exc:
        out["regularityBound"] = None
        out["regularityBoundError"] = str(exc)
    return out


def _poly_option(job: JobSpec, name: str, required: bool = True) -> Optional[UPoly]:
    raw = _option(job, name, required=required)
    if raw is None:
        return None
    try:
        return UPoly.parse(str(raw))
    except (PolynomialSyntaxError, UnknownVariableError) as exc:
        raise JobValidationError(f"options.{name}", str(exc)) from None


def _cmd_gotzmann(job: JobSpec) -> Dict[str, Any]:
    out: Dict[str, Any] = {}
    p = _poly_option(job, "polynomial", required="p_b" not in job.options)
    if p is not None:
        a = gotzmann_expansion(p)
        out.update({"polynomial": p.format("t"), "m": len(a), "expansion": list(a)})
    if "p_b" in job.options:
        p_b = _poly_option(job, "p_b")
        p_g = _poly_option(job, "p_g")
        s = _option(job, "s", required=True)
        out["regularityBound"] = regularity_bound(p_b, p_g, int(s))
    return out


def _cmd_homogenize(job: JobSpec) -> Dict[str, Any]:
    c = job.difference_conditions()
    name = _hvar(c.ring)
    hc = homogenize(c, name)
    out = _conditions_out(hc)
    out["homogenizingVariable"] = name
    out["generators"] = _gens(homogenize(spline_kernel(c).module, name))
    out["conditionsCommute"] = homogenized_conditions_commute(c, name)
    return out


def _cmd_round_trip(job: JobSpec) -> Dict[str, Any]:
    c = job.difference_conditions()
    name = _hvar(c.ring)
    m = spline_kernel(c).module
    n = homogenize(m, name)
    unit_ok, _ = unit_defect_check(n, name)
    out: Dict[str, Any] = {
        "homogenizingVariable": name,
        "roundTrip": round_trip_check(m, name),
        "unitDefect": unit_ok,
        "conditionsCommute": homogenized_conditions_commute(c, name),
        "dehomogenized": _gens(dehomogenize(n, name)),
    }
    if not c.ring.params:
        degrees = _degrees(job, range(0, 7))
        out["slices"] = [
            {"d": d, "graded": graded_slice_dim(n, d), "bounded": bounded_slice_dim(c, d)}
            for d in degrees
        ]
    return out


def _specialized(job: JobSpec) -> Tuple[DifferenceConditions, Optional[Fraction]]:
    c = job.difference_conditions()
    if "value" in job.options:
        if len(c.ring.params) != 1:
            raise JobValidationError("options.value", "needs exactly one parameter")
        v = _value(job)
        return specialize(c, {c.ring.params[0]: v}), v
    return c, None


def _cmd_delta_rank(job: JobSpec) -> Dict[str, Any]:
    c, v = _specialized(job)
    rows = []
    for d in _degrees(job):
        m = delta_matrix(c, d)
        rank = generic_rank(m) if m.parametric else rank_exact(m)
        rows.append({"d": d, "shape": list(m.shape), "rank": rank, "generic": m.parametric})
    return {"value": None if v is None else str(v), "ranks": rows}


def _cmd_spline_dim(job: JobSpec) -> Dict[str, Any]:
    c, v = _specialized(job)
    rows = [{"d": d, "splineDim": spline_dimension(c, d)} for d in _degrees(job)]
    if _option(job, "check_kernel", False):
        m = spline_kernel(c).module
        for row in rows:
            row["kernelSlice"] = hilbert_function(hilbert_series(m, of="module"), row["d"])
    return {"value": None if v is None else str(v), "dims": rows}


def _grid(job: JobSpec) -> List[Fraction]:
    raw = _option(job, "grid", required=True)
    if isinstance(raw, dict):
        lo, hi = Fraction(str(raw["from"])), Fraction(str(raw["to"]))
        step = Fraction(str(raw.get("step", 1)))
        out = []
        while lo <= hi:
            out.append(lo)
            lo += step
        return out
    if not isinstance(raw, list):
        raise JobValidationError("options.grid", "expected a list or {from, to, step}")
    try:
        return [Fraction(str(v)) for v in raw]
    except ValueError:
        raise JobValidationError("options.grid", "values must be rationals") from None


def _run_sweep(job: JobSpec, workers: int = 0):
    c = job.difference_conditions()
    if _option(job, "homogenize", False):
        c = homogenize(c, _hvar(c.ring))
    grid = _grid(job)
    degrees = _degrees(job)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as ex:
            return sweep(c, grid, degrees, executor=ex)
    return sweep(c, grid, degrees)


def _cmd_sweep(job: JobSpec) -> Dict[str, Any]:
    res = _run_sweep(job, int(_option(job, "workers", 0)))
    out = res.to_dict()
    gen = [r for _, r, _ in res.generic]
    out["semicontinuous"] = all(
        r <= g for v in res.grid for (_, r, _), g in zip(res.per_point[v], gen)
    )
    return out


HANDLERS = {
    "spline-kernel": _cmd_spline_kernel,
    "check-algebra": _cmd_check_algebra,
    "specialize": _cmd_specialize,
    "family-compare": _cmd_family_compare,
    "hilbert": _cmd_hilbert,
    "gotzmann": _cmd_gotzmann,
    "homogenize": _cmd_homogenize,
    "round-trip": _cmd_round_trip,
    "delta-rank": _cmd_delta_rank,
    "spline-dim": _cmd_spline_dim,
    "sweep": _cmd_sweep,
}

_ENGINE_ERRORS = (
    NotHilbertPolynomialError,
    NotHomogeneousError,
    ArithmeticError,
    ValueError,
    TypeError,
)


def run_job(data: Any, command: str = None, timing: bool = False) -> Tuple[int, Dict[str, Any]]:
    """Validate and execute one job; returns (exit code, JSON document)."""
    try:
        job = JobSpec.from_dict(data, command)
    except JobValidationError as exc:
        return EXIT_INVALID, {"error": {"field": exc.field, "message": exc.message}}
    start = time.perf_counter()
    try:
        result = HANDLERS[job.command](job)
    except JobValidationError as exc:
        return EXIT_INVALID, {"error": {"field": exc.field, "message": exc.message}}
    except _ENGINE_ERRORS as exc:
        return EXIT_ENGINE, {
            "command": job.command,
            "input": job.to_dict(),
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
    doc = {"command": job.command, "input": job.to_dict(), "result": result}
    if timing:
        doc["timing"] = {"enabled": True, "seconds": round(time.perf_counter() - start, 6)}
    else:
        doc["timing"] = {"enabled": False}
    return EXIT_OK, doc


def dumps(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def sweep_csv(data: Any, command: str = None) -> Tuple[int, str]:
    try:
        job = JobSpec.from_dict(data, command)
        if job.command != "sweep":
            raise JobValidationError("command", "csv output is only available for sweep")
        res = _run_sweep(job, int(_option(job, "workers", 0)))
    except JobValidationError as exc:
        return EXIT_INVALID, dumps({"error": {"field": exc.field, "message": exc.message}})
    except _ENGINE_ERRORS as exc:
        return EXIT_ENGINE, dumps({"error": {"type": type(exc).__name__, "message": str(exc)}})
    return EXIT_OK, res.to_csv()


# ---------------------------------------------------------------------------
# reproduction runner


def bundled_jobs_dir() -> Path:
    return Path(str(resources.files("qsplines") / "jobs"))


def matches(expected: Any, actual: Any) -> bool:
    """Subset match: dict keys in ``expected`` must match, other values exactly."""
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(
            k in actual and matches(v, actual[k]) for k, v in expected.items()
        )
    return expected == actual


def reproduce_all(jobs_dir=None, out=None) -> int:
    """Run every job file in ``jobs_dir``; print one line per job and per criterion."""
    out = out or sys.stdout
    root = Path(jobs_dir) if jobs_dir is not None else bundled_jobs_dir()
    files = sorted(root.glob("*.json")) if root.is_dir() else []
    if not files:
        print(f"no jobs found in {root}", file=out)
        return EXIT_FAIL
    by_criterion: Dict[Any, List[bool]] = {}
    failed = []
    for path in files:
        label = path.stem
        criterion = None
        try:
            data = json.loads(path.read_text())
            criterion = data.get("criterion") if isinstance(data, dict) else None
            code, doc = run_job(data)
            expect = data.get("expect") or {}
            ok = code == EXIT_OK and matches(expect, doc.get("result"))
            detail = "" if ok else f" (exit {code}: {doc.get('error', 'result mismatch')})"
        except (OSError, json.JSONDecodeError) as exc:
            ok, detail = False, f" (unreadable: {exc})"
        print(f"{'PASS' if ok else 'FAIL'} {label}{detail}", file=out)
        by_criterion.setdefault(criterion, []).append(ok)
        if not ok:
            failed.append(label)
    for crit in sorted((c for c in by_criterion if c is not None), key=int):
        status = "PASS" if all(by_criterion[crit]) else "FAIL"
        print(f"{status} criterion {crit}", file=out)
    if failed:
        print(f"failed jobs: {', '.join(failed)}", file=out)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qsplines", description="Run quasi-spline computations from JSON job files."
    )
    p.add_argument("--job", help="job file (default: read standard input)")
    p.add_argument("--command", choices=COMMANDS, help="override the job's command")
    p.add_argument("--out", help="write output here instead of standard output")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--jobs-dir", help="run every job in this directory and report pass/fail")
    p.add_argument(
        "--reproduce", action="store_true", help="run the bundled example jobs and report pass/fail"
    )
    p.add_argument("--timing", action="store_true", help="record wall-clock time in the output")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs_dir or args.reproduce:
        return reproduce_all(args.jobs_dir)
    try:
        text = Path(args.job).read_text() if args.job else sys.stdin.read()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        code, body = EXIT_INVALID, dumps({"error": {"field": "job", "message": str(exc)}})
    else:
        if args.format == "csv":
            code, body = sweep_csv(data, args.command)
        else:
            code, doc = run_job(data, args.command, args.timing)
            body = dumps(doc)
    if args.out:
        Path(args.out).write_text(body)
    else:
        sys.stdout.write(body)
    return code


if __name__ == "__main__":
    sys.exit(main())
