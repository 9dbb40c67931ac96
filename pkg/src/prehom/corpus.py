"""Built-in catalogue of worked examples with their expected analyses."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from . import families as fam
from .invariants import AdditiveInvariant, infer_dphi, partial_fraction_split, verify_additive
from .linalg import RatMatrix, Subspace
from .ratpoly import Poly
from .report import AnalysisReport, Task, matrix_json, parse_input, run_analysis

Extra = Callable[[AnalysisReport], list[str]]


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    description: str
    build: Callable[[], dict[str, Any]]       # input object in the file schema
    expected: dict[str, Any]
    extras: tuple[Extra, ...] = ()

    def task(self) -> Task:
        return parse_input(self.build())


@dataclass
class CorpusResult:
    name: str
    passed: bool
    failures: list[str]
    report: AnalysisReport | None
    seconds: float = 0.0


def _basis_input(mats: list[RatMatrix], names: list[str] | None = None, points: dict | None = None,
                 options: dict | None = None) -> dict[str, Any]:
    n = mats[0].nrows
    obj: dict[str, Any] = {"n": n, "basis": [matrix_json(m) for m in mats]}
    if names:
        obj["variables"] = names
    if points:
        obj["points"] = {k: [str(x) for x in v] for k, v in points.items()}
    if options:
        obj["options"] = options
    return obj


def _poly_input(n: int, text: str, names: list[str], options: dict | None = None) -> dict[str, Any]:
    obj: dict[str, Any] = {"n": n, "variables": names, "poly": text}
    if options:
        obj["options"] = options
    return obj


# extra checks -----------------------------------------------------------------

def equal_mod_denominator(h: Poly, target: Poly, g1: Poly) -> bool:
    """Whether ``h = s * target + a * g1`` for rationals ``s != 0`` and ``a``."""
    lm = g1.leading_monomial()

    def strip(p: Poly) -> Poly:
        c = p.coefficient(lm)
        return p - g1.scale(c / g1.coefficient(lm)) if c else p

    a, b = strip(h), strip(target)
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.scale(1 / a.leading_coefficient()) == b.scale(1 / b.leading_coefficient())


def _toeplitz_closed_forms(n: int) -> Extra:
    def check(rep: AnalysisReport) -> list[str]:
        out = []
        by_k = {a.k: a for a in rep.additive}
        for i in range(1, n):
            a = by_k.get((i,))
            if a is None:
                out.append(f"no additive invariant with denominator x1^{i}")
                continue
            if not equal_mod_denominator(a.h1, fam.toeplitz_numerator(n, i), a.g1):
                out.append(f"k={i}: numerator {a.h1} does not match the closed form")
        for i in range(1, n):
            if not fam.homomorphism_defect(n, i).is_zero():
                out.append(f"closed form of degree {i} is not additive on the group")
        return out
    return check


def _two_additive_span(n: int) -> Extra:
    def check(rep: AnalysisReport) -> list[str]:
        if [b.f for b in rep.basics] != [Poly.var(n, 0)]:
            return ["basic invariant is not x1"]
        # dphi covectors must span the same space as those of x_i/x1
        want = []
        for i in range(1, n):
            d = infer_dphi(rep.algebra, Poly.var(n, i), rep.basics, (1,))
            if d is None:
                return [f"x{i + 1}/x1 is not additive"]
            want.append(d)
        got = [a.dphi for a in rep.additive]
        if Subspace.span(got, rep.algebra.dim) != Subspace.span(want, rep.algebra.dim):
            return ["additive basis does not span {x_i/x1}"]
        if any(a.k != (1,) for a in rep.additive):
            return ["additive basis uses denominators other than x1"]
        return []
    return check


def _lu_closed_forms(n: int, m: int) -> Extra:
    def check(rep: AnalysisReport) -> list[str]:
        out = []
        mat = fam.lu_matrix(n, m)
        minors = [fam.leading_minor(mat, i).monic() for i in range(1, n + 1)]
        index = {b.f: j for j, b in enumerate(rep.basics)}
        if set(index) != set(minors):
            return ["basic invariants are not the leading minors"]
        dphis = []
        for i in range(1, m):
            k = tuple(1 if b.f == minors[i - 1] else 0 for b in rep.basics)
            h = fam.lu_numerator(n, m, i).scale(1 / fam.leading_minor(mat, i).leading_coefficient())
            d = infer_dphi(rep.algebra, h, rep.basics, k)
            if d is None:
                out.append(f"closed form h_{i} is not additive")
                continue
            a = AdditiveInvariant(h, k, d, tuple(rep.basics))
            if not verify_additive(rep.pv, a):
                out.append(f"closed form h_{i} fails verification")
            dphis.append(d)
        if not out and Subspace.span(dphis, rep.algebra.dim) != Subspace.span(
                [a.dphi for a in rep.additive], rep.algebra.dim):
            out.append("closed forms and computed basis span different dphi spaces")
        return out
    return check


def _product_split(rep: AnalysisReport) -> list[str]:
    x, w = Poly.var(4, 0), Poly.var(4, 3)
    y, z = Poly.var(4, 1), Poly.var(4, 2)
    basics = rep.basics
    if {b.f for b in basics} != {x, w}:
        return ["basic invariants are not x and w"]
    ix = next(i for i, b in enumerate(basics) if b.f == x)
    iw = next(i for i, b in enumerate(basics) if b.f == w)
    k = tuple(1 if i in (ix, iw) else 0 for i in range(len(basics)))
    h = z * x + y * w
    d = infer_dphi(rep.algebra, h, basics, k)
    if d is None:
        return ["(zx + yw)/(xw) is not additive"]
    whole = AdditiveInvariant(h, k, d, tuple(basics))
    parts = partial_fraction_split(rep.algebra, whole, [ix], [iw])
    if parts is None:
        return ["(zx + yw)/(xw) did not split"]
    first, second = parts
    out = []
    if not (verify_additive(rep.pv, first) and verify_additive(rep.pv, second)):
        out.append("split parts fail verification")
    if not (equal_mod_denominator(first.h1, y, first.g1) and equal_mod_denominator(second.h1, z, second.g1)):
        out.append(f"split parts {first.fraction_str()} and {second.fraction_str()} differ from y/x and z/w")
    return out


# catalogue ----------------------------------------------------------------------

def _entries() -> list[CorpusEntry]:
    E: list[CorpusEntry] = []
    E.append(CorpusEntry(
        "aac", "solvable group defining x(xz - y^2), explicit basis",
        lambda: _basis_input(fam.aac_basis(), ["x", "y", "z"],
                             {"generic": [1, 0, 1], "component:1": [0, 1, 0], "component:2": [1, 0, 0]},
                             {"max_denominator_degree": 6}),
        {"lfd": True, "r": 2, "degrees": [1, 2], "dim_A1": 0, "dim_g": 3, "dim_derived": 1,
         "basics": ["x", "x*z - y^2"]}))
    E.append(CorpusEntry(
        "aac-poly", "x(xz - y^2) given as a polynomial",
        lambda: _poly_input(3, "x*(x*z - y^2)", ["x", "y", "z"], {"max_denominator_degree": 6}),
        {"lfd": True, "r": 2, "degrees": [1, 2], "dim_A1": 0, "dim_g": 3, "dim_derived": 1,
         "basics": ["x", "x*z - y^2"]}))
    for n in (3, 4, 5):
        E.append(CorpusEntry(
            f"2addinvs-{n}", f"scalars and shears into x1 on C^{n}",
            lambda n=n: _basis_input(fam.two_additive(n)),
            {"lfd": False, "r": 1, "degrees": [1], "dim_A1": n - 1, "dim_g": n, "dim_derived": 0,
             "determinant": f"x1^{n}"},
            (_two_additive_span(n),)))
    E.append(CorpusEntry(
        "exA", "abelian group with one additive invariant",
        lambda: _basis_input(fam.ex_a_basis(), ["x", "y", "z"]),
        {"r": 2, "dim_A1": 1, "dim_H": 3, "lfd": False}))
    E.append(CorpusEntry(
        "nonexample", "same orbits as exA but no additive invariants",
        lambda: _basis_input(fam.non_example_basis(), ["x", "y", "z"]),
        {"r": 2, "dim_A1": 0, "dim_H": 2, "dim_derived": 1, "lfd": False}))
    for n in (3, 4, 5, 6):
        E.append(CorpusEntry(
            f"denompowers-{n}", f"lower-triangular Toeplitz group on C^{n}",
            lambda n=n: _basis_input(fam.toeplitz_lower(n), options={"max_denominator_degree": n - 1}),
            {"r": 1, "degrees": [1], "dim_A1": n - 1, "lfd": False},
            (_toeplitz_closed_forms(n),)))
    for n, m in ((2, 2), (2, 3), (3, 3), (3, 4)):
        E.append(CorpusEntry(
            f"lu-{n}-{m}", f"LU factorisation group on {n}x{m} matrices",
            lambda n=n, m=m: _basis_input(fam.lu_basis(n, m), fam.lu_names(n, m),
                                          options={"max_denominator_degree": m - 1}),
            {"r": n, "degrees": list(range(1, n + 1)), "dim_A1": m - 1, "dim_H": n + m - 1},
            (_lu_closed_forms(n, m),)))
    E.append(CorpusEntry(
        "complicated", "block group acting on symmetric 4x4 matrices with x11 = 0",
        lambda: _basis_input(fam.symmetric_action(), fam.SYMMETRIC_NAMES, {
            "generic": fam.sym_point([[0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
            "component:1": fam.sym_point([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
            "component:2": fam.sym_point([[0, 0, 1, 1], [0, 0, 1, 0], [1, 1, 0, 0], [1, 0, 0, 0]]),
            "component:3": fam.sym_point([[0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]])},
            {"max_denominator_degree": 9}),
        {"lfd": True, "r": 3, "degrees": [2, 3, 4], "dim_A1": 0, "dim_g": 9, "dim_derived": 6,
         "dim_isotropy_v0": 0, "basics_from": "symmetric_minors"}))
    E.append(CorpusEntry(
        "d1", "linear log fields of (x3x5 - x4^2) times a bordered 3x3 determinant",
        lambda: _poly_input(5, fam.D1_TEXT, [f"x{i}" for i in range(1, 6)]),
        {"lfd": True, "dim_g": 5, "dim_derived": 3, "r": 2, "degrees": [2, 3], "dim_A1": 0}))
    E.append(CorpusEntry(
        "d2", "linear log fields of a binary cubic discriminant times x5",
        lambda: _poly_input(5, fam.D2_TEXT, [f"x{i}" for i in range(1, 6)]),
        {"lfd": True, "dim_g": 5, "dim_derived": 3, "r": 2, "degrees": [1, 4], "dim_A1": 0}))
    for n in (2, 3, 4, 5):
        E.append(CorpusEntry(
            f"normal-crossings-{n}", f"diagonal torus on C^{n}",
            lambda n=n: _basis_input(fam.normal_crossings(n)),
            {"lfd": True, "r": n, "degrees": [1] * n, "dim_A1": 0, "dim_derived": 0}))
    E.append(CorpusEntry(
        "product-blocks", "two scaling-plus-shear blocks; (zx + yw)/(xw) splits",
        lambda: _basis_input(fam.product_blocks(), ["x", "y", "z", "w"]),
        {"r": 2, "degrees": [1, 1], "dim_A1": 2, "lfd": False},
        (_product_split,)))
    return E


CORPUS: dict[str, CorpusEntry] = {e.name: e for e in _entries()}
GROUPS: dict[str, list[str]] = {"d1-vs-d2": ["d1", "d2"]}


def corpus_list() -> list[CorpusEntry]:
    return list(CORPUS.values())


def resolve(name: str) -> list[str]:
    """Entry names selected by an exact name, a group, or a family prefix like ``lu``."""
    if name in CORPUS:
        return [name]
    if name in GROUPS:
        return GROUPS[name]
    fam_names = [k for k in CORPUS if k.startswith(name + "-")]
    if not fam_names:
        raise KeyError(f"unknown corpus entry {name!r}")
    return fam_names


def compare(entry: CorpusEntry, rep: AnalysisReport) -> list[str]:
    exp = entry.expected
    out = list(rep.errors)
    actual = {"lfd": rep.lfd, "r": rep.r, "degrees": rep.degrees, **rep.dims}
    for key, want in exp.items():
        if key == "basics":
            got = sorted(b.f.to_str(rep.task.variables) for b in rep.basics)
            if got != sorted(want):
                out.append(f"basics: expected {sorted(want)}, got {got}")
        elif key == "basics_from":
            want_polys = {f.monic() for f in fam.symmetric_minors()}
            if {b.f for b in rep.basics} != want_polys:
                out.append("basics differ from the displayed minors")
        elif key == "determinant":
            got = rep.determinant.to_str(rep.task.variables) if rep.determinant is not None else None
            if got != want:
                out.append(f"determinant: expected {want}, got {got}")
        elif actual.get(key) != want:
            out.append(f"{key}: expected {want}, got {actual.get(key)}")
    for name, v in rep.checks.items():
        if v.status == "fail":
            out.append(f"check {name} failed: {v.detail}")
    for extra in entry.extras:
        out += extra(rep)
    return out


def corpus_run(name: str, seed: int | None = None) -> list[CorpusResult]:
    results = []
    names = resolve(name)
    for key in names:
        entry = CORPUS[key]
        rep = run_analysis(entry.task(), seed=seed)
        fails = compare(entry, rep)
        results.append(CorpusResult(key, not fails, fails, rep, rep.timing))
    if name in GROUPS:
        results.append(_group_result(name, results))
    return results


def _group_result(name: str, results: list[CorpusResult]) -> CorpusResult:
    a, b = (r.report for r in results[:2])
    fails = []
    if a.r != b.r or a.dims["dim_derived"] != b.dims["dim_derived"] or a.dims["dim_g"] != b.dims["dim_g"]:
        fails.append("the pair differs in r, dim g or dim [g, g]")
    if a.degrees == b.degrees:
        fails.append("the pair has identical degree multisets")
    return CorpusResult(name, not fails, fails, None)


def corpus_run_all(seed: int | None = None) -> list[CorpusResult]:
    out = []
    for key in CORPUS:
        out += corpus_run(key, seed)
    out += [_group_result(g, [r for r in out if r.name in GROUPS[g]]) for g in GROUPS]
    return out
