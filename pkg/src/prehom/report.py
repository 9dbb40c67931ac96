"""Input files, the analysis pipeline and its JSON report."""

from __future__ import annotations

import json
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

import jsonschema

from .invariants import (AdditiveInvariant, LFDReconstructionError, SemiInvariant, additive_invariants,
                         basic_relative_invariants)
from .linalg import RatMatrix
from .liealg import LieAlgebraVF, NotClosedError, isotropy_subalgebra, derived_plus_isotropy
from .parser import PolySyntaxError, UnknownVariableError, parse_poly
from .pvscore import GenericPointError, PVSpace, certify, is_linear_free_divisor, linear_logarithmic_fields
from .ratpoly import Poly, default_names
from . import verifier

REPORT_VERSION = "1"

RATIONAL_PATTERN = r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$"

INPUT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["n"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "variables": {"type": "array", "items": {"type": "string", "pattern": r"^[A-Za-z_][A-Za-z_0-9]*$"},
                      "uniqueItems": True},
        "basis": {"type": "array", "items": {"type": "array", "items": {
            "type": "array", "items": {"type": ["string", "integer"]}}}},
        "poly": {"type": "string"},
        "points": {"type": "object",
                   "propertyNames": {"pattern": r"^(generic|component:\d+)$"},
                   "additionalProperties": {"type": "array", "items": {"type": ["string", "integer"]}}},
        "options": {"type": "object", "additionalProperties": False, "properties": {
            "seed": {"type": "integer"},
            "max_degree": {"type": "integer", "minimum": 1},
            "max_denominator_degree": {"type": "integer", "minimum": 0},
            "reduced_trials": {"type": "integer", "minimum": 1},
            "generic_max_tries": {"type": "integer", "minimum": 1},
        }},
    },
    "oneOf": [{"required": ["basis"]}, {"required": ["poly"]}],
}


class InputError(ValueError):
    """Invalid input file; ``path`` names the offending field."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


def parse_rational(value: str | int, path: str) -> Fraction:
    if isinstance(value, int):
        return Fraction(value)
    text = value.strip()
    num, _, den = text.partition("/")
    try:
        p, q = int(num), int(den) if den else 1
    except ValueError:
        raise InputError(f"not a rational number: {value!r}", path) from None
    if q == 0:
        raise InputError(f"zero denominator in {value!r}", path)
    return Fraction(p, q)


@dataclass(frozen=True)
class Task:
    """A validated input: an explicit algebra or a polynomial to solve for."""

    n: int
    variables: tuple[str, ...]
    algebra: LieAlgebraVF | None = None
    poly: Poly | None = None
    points: Mapping[str, tuple[Fraction, ...]] = field(default_factory=dict)
    options: Mapping[str, int] = field(default_factory=dict)

    @property
    def component_points(self) -> list[tuple[Fraction, ...]]:
        keys = sorted((k for k in self.points if k.startswith("component:")), key=lambda k: int(k.split(":")[1]))
        return [self.points[k] for k in keys]

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"n": self.n, "variables": list(self.variables)}
        if self.poly is not None:
            out["poly"] = self.poly.to_str(self.variables)
        if self.algebra is not None:
            out["basis"] = [matrix_json(m) for m in self.algebra.basis]
        if self.points:
            out["points"] = {k: [str(x) for x in v] for k, v in self.points.items()}
        if self.options:
            out["options"] = dict(self.options)
        return out


def matrix_json(m: RatMatrix) -> list[list[str]]:
    return [[str(v) for v in r] for r in m.rows]


def _path(err: jsonschema.ValidationError) -> str:
    return "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path)


def parse_input(obj: Any) -> Task:
    """Validate a decoded JSON object and build a :class:`Task`."""
    validator = jsonschema.Draft202012Validator(INPUT_SCHEMA)
    errors = sorted(validator.iter_errors(obj), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        msg = err.message
        if err.validator == "oneOf":
            msg = "exactly one of 'basis' or 'poly' is required"
        raise InputError(msg, _path(err))
    n = obj["n"]
    names = tuple(obj.get("variables") or default_names(n))
    if len(names) != n:
        raise InputError(f"expected {n} variable names, got {len(names)}", "$.variables")
    points = {}
    for role, coords in (obj.get("points") or {}).items():
        path = f"$.points.{role}"
        if len(coords) != n:
            raise InputError(f"point has {len(coords)} coordinates, expected {n}", path)
        points[role] = tuple(parse_rational(c, f"{path}[{k}]") for k, c in enumerate(coords))
    options = dict(obj.get("options") or {})
    if "poly" in obj:
        try:
            f = parse_poly(obj["poly"], names)
        except (PolySyntaxError, UnknownVariableError) as exc:
            raise InputError(str(exc), "$.poly") from None
        deg = f.homogeneous_degree()
        if deg is None or deg == "zero":
            raise InputError("polynomial must be nonzero and homogeneous", "$.poly")
        return Task(n, names, poly=f, points=points, options=options)
    mats = []
    for b, mat in enumerate(obj["basis"]):
        path = f"$.basis[{b}]"
        if len(mat) != n or any(len(r) != n for r in mat):
            raise InputError(f"matrix must be {n}x{n}", path)
        mats.append(RatMatrix([[parse_rational(v, f"{path}[{i}][{j}]") for j, v in enumerate(r)]
                               for i, r in enumerate(mat)], n))
    try:
        g = LieAlgebraVF(mats, n)
    except NotClosedError as exc:
        i, j = exc.witness.pair
        raise InputError(f"basis not closed: bracket of X{i + 1} and X{j + 1} leaves the span "
                         f"(residual {exc.witness.residual})", "$.basis") from None
    except ValueError as exc:
        raise InputError(str(exc), "$.basis") from None
    return Task(n, names, algebra=g, points=points, options=options)


def load_input(path: str | Path) -> Task:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg} at line {exc.lineno}") from None
    return parse_input(obj)


# analysis --------------------------------------------------------------------

@dataclass
class AnalysisReport:
    task: Task
    options: dict[str, int]
    algebra: LieAlgebraVF | None = None
    pv: PVSpace | None = None
    lfd: bool | None = None
    lfd_reason: str = ""
    determinant: Poly | None = None
    basics: list[SemiInvariant] = field(default_factory=list)
    multiplicities: tuple[int, ...] | None = None
    additive: list[AdditiveInvariant] = field(default_factory=list)
    dims: dict[str, int] = field(default_factory=dict)
    checks: dict[str, verifier.Verdict] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    timing: float = 0.0

    @property
    def r(self) -> int:
        return len(self.basics)

    @property
    def degrees(self) -> list[int]:
        return sorted(b.degree for b in self.basics)

    @property
    def ok(self) -> bool:
        return not self.errors and all(v.ok for v in self.checks.values())

    def to_json(self) -> dict[str, Any]:
        names = self.task.variables
        out: dict[str, Any] = {
            "version": REPORT_VERSION,
            "input": self.task.to_json(),
            "options": dict(sorted(self.options.items())),
        }
        if self.algebra is not None:
            out["algebra"] = {"dim": self.algebra.dim, "basis": [matrix_json(m) for m in self.algebra.basis]}
        out["prehomogeneous"] = ({"certified": True, "v0": [str(x) for x in self.pv.v0]}
                                 if self.pv else {"certified": False})
        out["lfd"] = {"verdict": self.lfd, "reason": self.lfd_reason}
        out["saito_determinant"] = self.determinant.to_str(names) if self.determinant is not None else None
        out["basics"] = [
            {"f": b.f.to_str(names), "degree": b.degree, "lambda": [str(x) for x in b.lam],
             **({"multiplicity": self.multiplicities[i]} if self.multiplicities else {})}
            for i, b in enumerate(self.basics)]
        out["additive"] = [
            {"h1": a.h1.to_str(names), "k": list(a.k), "denominator": a.g1.to_str(names),
             "fraction": a.fraction_str(names), "dphi": [str(x) for x in a.dphi]}
            for a in self.additive]
        out["dims"] = dict(self.dims)
        out["checks"] = {k: {"status": v.status, "detail": v.detail} for k, v in self.checks.items()}
        out["warnings"] = list(self.warnings)
        out["errors"] = list(self.errors)
        return out

    def to_text(self) -> str:
        names = self.task.variables
        lines = []
        if self.algebra is not None:
            lines.append(f"algebra: dim {self.algebra.dim} on C^{self.task.n}")
        if self.pv is None:
            lines.append("prehomogeneity: no certificate")
        else:
            lines.append(f"generic point: ({', '.join(str(x) for x in self.pv.v0)})")
        if self.lfd is not None:
            lines.append(f"linear free divisor: {'yes' if self.lfd else 'no'} ({self.lfd_reason})")
        if self.determinant is not None:
            lines.append(f"Saito determinant: {self.determinant.to_str(names)}")
        for b in self.basics:
            lines.append(f"basic invariant: {b.f.to_str(names)}  (degree {b.degree}, "
                         f"lambda = [{', '.join(str(x) for x in b.lam)}])")
        for a in self.additive:
            lines.append(f"additive invariant: {a.fraction_str(names)}  (dphi = [{', '.join(str(x) for x in a.dphi)}])")
        if self.dims:
            lines.append("dims: " + ", ".join(f"{k}={v}" for k, v in self.dims.items()))
        for k, v in self.checks.items():
            lines.append(f"[{v.status}] {k}: {v.detail}")
        lines += [f"warning: {w}" for w in self.warnings]
        lines += [f"error: {e}" for e in self.errors]
        return "\n".join(lines)


DEFAULTS = {"seed": 0, "reduced_trials": 3, "generic_max_tries": 200}


def run_analysis(task: Task, **overrides: int | None) -> AnalysisReport:
    """Run the whole pipeline; stage failures are recorded, not raised."""
    start = time.perf_counter()
    opts = {**DEFAULTS, **task.options, **{k: v for k, v in overrides.items() if v is not None}}
    rep = AnalysisReport(task, opts)
    g = task.algebra if task.algebra is not None else linear_logarithmic_fields(task.poly)
    rep.algebra = g
    seed = opts["seed"]
    try:
        rep.pv = certify(g, seed, opts["generic_max_tries"], task.points.get("generic"))
    except GenericPointError as exc:
        rep.errors.append(f"prehomogeneity: {exc}")
        rep.timing = time.perf_counter() - start
        return rep
    pv = rep.pv
    rep.determinant = pv.saito_det
    verdict = is_linear_free_divisor(g, opts["reduced_trials"], seed, determinant=rep.determinant)
    rep.lfd, rep.lfd_reason = verdict.is_lfd, verdict.reason
    if verdict.reduced is not None and verdict.reduced.verdict != "reduced":
        rep.warnings.append(f"reducedness is a probabilistic verdict after {verdict.reduced.trials} line trials")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            scan = basic_relative_invariants(pv, opts.get("max_degree"), lfd=rep.lfd)
        except LFDReconstructionError as exc:
            rep.errors.append(f"basic invariants: {exc}")
            scan = None
    rep.warnings += [str(w.message) for w in caught]
    opts["max_degree"] = opts.get("max_degree") or (scan.degree_bound if scan else g.n)
    if scan is not None:
        rep.basics = list(scan.basics)
        rep.multiplicities = scan.multiplicities
        rep.warnings += list(scan.flags)
    bound = opts.get("max_denominator_degree")
    if bound is None:
        bound = opts["max_denominator_degree"] = g.n
    rep.additive = additive_invariants(pv, rep.basics, bound) if scan is not None else []
    iso = isotropy_subalgebra(g, pv.v0)
    dim_h = g.dim - derived_plus_isotropy(g, pv.v0).dim
    rep.dims = {"dim_g": g.dim, "dim_derived": g.derived.dim, "dim_isotropy_v0": iso.dim, "dim_H": dim_h,
                "k": rep.r, "l": len(rep.additive), "r": rep.r, "dim_A1": len(rep.additive)}
    if scan is not None:
        _run_checks(rep, bound)
    rep.timing = time.perf_counter() - start
    return rep


def _run_checks(rep: AnalysisReport, bound: int) -> None:
    g, pv, basics, additive, lfd = rep.algebra, rep.pv, rep.basics, rep.additive, bool(rep.lfd)
    dims = rep.dims
    c = rep.checks
    c["component_count"] = verifier.check_component_count(g, basics, lfd)
    c["no_additive"] = verifier.check_no_additive(additive, lfd, bound)
    c["euler_decomposition"] = verifier.check_euler(g, basics, lfd)
    points = list(rep.task.component_points)
    if not points:
        for i in range(len(basics)):
            v = verifier.find_component_point(g, basics, i, rep.options["seed"])
            if v is None:
                points = []
                rep.warnings.append(f"no point found on V(f{i + 1}); vanishing check skipped")
                break
            points.append(v)
    c["vanishing"] = verifier.check_vanishing(g, basics, points, lfd, additive)
    c["abelian"] = verifier.check_abelian(g, basics, lfd)
    c["solvable"] = verifier.check_solvable(g, basics)
    c["nontrivial"] = verifier.check_nontrivial(g, basics, dims["dim_H"], dims["dim_A1"])
    c["small_quotient"] = verifier.check_small_quotient(rep.r, dims["dim_H"], dims["dim_A1"])
    c["component_identity"] = verifier.check_identity(rep.r, dims["dim_H"], dims["dim_A1"])
    c["jacobian_rank"] = verifier.check_jacobian(pv, basics, additive)
    c["dphi_vanishing"] = verifier.check_dphi_vanishing(pv, additive)


def report_json_text(rep: AnalysisReport) -> str:
    return json.dumps(rep.to_json(), indent=2, sort_keys=False) + "\n"
