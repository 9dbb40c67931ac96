"""Structural checks on an analysed algebra, each backed by an exact identity."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from .linalg import RatMatrix, contains, rank, solve_sparse, sparse, subspace_sum
from .liealg import LieAlgebraVF, apply_derivation, isotropy_subalgebra, orbit_tangent_dim
from .invariants import AdditiveInvariant, SemiInvariant
from .pvscore import PVSpace
from .ratpoly import Poly, evaluate

Status = Literal["pass", "fail", "skipped"]


@dataclass(frozen=True)
class Verdict:
    status: Status
    detail: str = ""
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def passed(detail: str = "", **witness) -> Verdict:
    return Verdict("pass", detail, witness)


def failed(detail: str, **witness) -> Verdict:
    return Verdict("fail", detail, witness)


def skipped(reason: str) -> Verdict:
    return Verdict("skipped", reason)


def pair(lam: Sequence[Fraction], x: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(lam, x) if a and b), Fraction(0))


def check_component_count(g: LieAlgebraVF, basics: Sequence[SemiInvariant], lfd: bool) -> Verdict:
    if not lfd:
        return skipped("not a linear free divisor")
    r, dg, dd = len(basics), g.dim, g.derived.dim
    text = f"{r} == {dg} - {dd}"
    return passed(text) if r == dg - dd else failed(text, r=r, dim_g=dg, dim_derived=dd)


def check_no_additive(additive: Sequence[AdditiveInvariant], lfd: bool, bound: int) -> Verdict:
    if not lfd:
        return skipped("not a linear free divisor")
    if additive:
        return failed(f"{len(additive)} additive invariants with denominator degree <= {bound}",
                      fractions=[a.fraction_str() for a in additive])
    return passed(f"none with denominator degree <= {bound}", bound=bound)


@dataclass(frozen=True)
class EulerDecomposition:
    """Elements ``X_j`` with ``lam_i(X_j) = delta_ij`` and the residual of the identity."""

    xs: tuple[tuple[Fraction, ...], ...]
    identity_coords: tuple[Fraction, ...]
    residual: tuple[Fraction, ...]
    euler_values: tuple[Fraction, ...]   # lam_i(I)


class EulerError(ArithmeticError):
    pass


def euler_decomposition(g: LieAlgebraVF, basics: Sequence[SemiInvariant]) -> EulerDecomposition:
    r = len(basics)
    ident = g.coordinates(RatMatrix.identity(g.n))
    if ident is None:
        raise EulerError("the identity matrix is not in the algebra")
    rows = [sparse(b.lam) for b in basics]
    xs = []
    for j in range(r):
        res = solve_sparse(rows, [int(i == j) for i in range(r)], g.dim)
        if res is None:
            raise EulerError(f"no element X with lam_i(X) = delta_i{j + 1}: characters are dependent")
        xs.append(tuple(res[0].get(k, Fraction(0)) for k in range(g.dim)))
    resid = list(ident)
    for b, x in zip(basics, xs):
        for k in range(g.dim):
            resid[k] -= b.degree * x[k]
    values = tuple(pair(b.lam, ident) for b in basics)
    return EulerDecomposition(tuple(xs), ident, tuple(resid), values)


def check_euler(g: LieAlgebraVF, basics: Sequence[SemiInvariant], lfd: bool) -> Verdict:
    if not lfd:
        return skipped("not a linear free divisor")
    try:
        dec = euler_decomposition(g, basics)
    except EulerError as exc:
        return failed(str(exc))
    degrees = tuple(b.degree for b in basics)
    if dec.euler_values != degrees:
        return failed("lam_i(I) differs from the degrees", values=[str(v) for v in dec.euler_values])
    for j, x in enumerate(dec.xs):
        xm = g.element(x)
        for i, b in enumerate(basics):
            want = b.f if i == j else Poly.zero(g.n)
            if apply_derivation(xm, b.f) != want:
                return failed(f"xi_X{j + 1} f{i + 1} != delta f{i + 1}")
    if not contains(g.derived_coords, dec.residual):
        return failed("residual is not in [g, g]", residual=[str(v) for v in dec.residual])
    return passed(f"lam_i(I) = {list(map(int, degrees))}, residual in [g, g]",
                  xs=[[str(v) for v in x] for x in dec.xs],
                  residual=[str(v) for v in dec.residual])


# component points -----------------------------------------------------------

def validate_component_point(basics: Sequence[SemiInvariant], v: Sequence[Fraction]) -> int:
    """Index of the unique basic invariant vanishing at ``v``; ValueError otherwise."""
    zeros = [i for i, b in enumerate(basics) if evaluate(b.f, v) == 0]
    if len(zeros) != 1:
        raise ValueError(f"point lies on {len(zeros)} components, expected exactly one")
    return zeros[0]


def find_component_point(g: LieAlgebraVF, basics: Sequence[SemiInvariant], i: int,
                         seed: int = 0, tries: int = 200) -> tuple[Fraction, ...] | None:
    """A point on the ``i``-th component, off the others, whose orbit has dimension ``n - 1``."""
    rng = random.Random(seed)
    f = basics[i].f
    n = g.n
    linear = [k for k in range(n) if f.degree_in(k) == 1]

    def good(v) -> bool:
        return (evaluate(f, v) == 0
                and all(evaluate(b.f, v) != 0 for j, b in enumerate(basics) if j != i)
                and orbit_tangent_dim(g, v) == n - 1)

    for attempt in range(tries):
        box = 2 + attempt // 20
        if linear:
            k = linear[attempt % len(linear)]
            v = [Fraction(rng.randint(-box, box)) for _ in range(n)]
            # f = a * x_k + b with a, b free of x_k
            v[k] = Fraction(0)
            b = evaluate(f, v)
            v[k] = Fraction(1)
            a = evaluate(f, v) - b
            if a == 0:
                continue
            v[k] = -b / a
        else:
            v = [Fraction(rng.randint(-box, box)) for _ in range(n)]
        if good(v):
            return tuple(v)
    return None


def check_vanishing(g: LieAlgebraVF, basics: Sequence[SemiInvariant], points: Sequence[Sequence[Fraction]],
                    lfd: bool, additive: Sequence[AdditiveInvariant] = ()) -> Verdict:
    if not points:
        return skipped("no component points available")
    details = []
    for v in points:
        v = tuple(Fraction(x) for x in v)
        try:
            i = validate_component_point(basics, v)
        except ValueError as exc:
            return failed(f"point {[str(x) for x in v]}: {exc}")
        iso = isotropy_subalgebra(g, v).vectors()
        for j, b in enumerate(basics):
            if j != i and any(pair(b.lam, x) for x in iso):
                return failed(f"lam_{j + 1} does not vanish on the isotropy at a point of V(f{i + 1})",
                              point=[str(x) for x in v])
        if lfd:
            if len(iso) != 1:
                return failed(f"isotropy at a point of V(f{i + 1}) has dimension {len(iso)}, expected 1",
                              point=[str(x) for x in v])
            if not pair(basics[i].lam, iso[0]):
                return failed(f"lam_{i + 1} vanishes on the isotropy at a point of V(f{i + 1})")
        for a in additive:
            if a.k[i] == 0 and any(pair(a.dphi, x) for x in iso):
                return failed(f"dphi of {a.fraction_str()} does not vanish on the isotropy at V(f{i + 1})")
            if a.k[i] > 0 and evaluate(a.h1, v) != 0 and any(pair(basics[i].lam, x) for x in iso):
                return failed(f"lam_{i + 1} does not vanish on the isotropy although h1 is nonzero there")
        details.append(f"V(f{i + 1}): isotropy dim {len(iso)}")
    return passed("; ".join(details))


# special cases ---------------------------------------------------------------

def check_abelian(g: LieAlgebraVF, basics: Sequence[SemiInvariant], lfd: bool) -> Verdict:
    if g.derived.dim:
        return skipped("algebra is not abelian")
    if not lfd:
        return skipped("not a linear free divisor")
    degs = [b.degree for b in basics]
    if len(basics) == g.n and all(d == 1 for d in degs):
        return passed(f"r = n = {g.n}, every basic invariant linear")
    return failed(f"abelian linear free divisor with r = {len(basics)}, degrees {degs}")


def check_solvable(g: LieAlgebraVF, basics: Sequence[SemiInvariant]) -> Verdict:
    lower = all(m.is_lower_triangular() for m in g.basis)
    upper = all(m.is_upper_triangular() for m in g.basis)
    if not (lower or upper):
        return skipped("basis is not simultaneously triangular")
    diag_rank = rank(RatMatrix([m.diagonal() for m in g.basis], g.n)) if g.dim else 0
    r = len(basics)
    if r != diag_rank:
        return failed(f"r = {r} but the diagonal projection has rank {diag_rank}")
    return passed(f"r = {r} == rank of the diagonal projection")


def check_nontrivial(g: LieAlgebraVF, basics: Sequence[SemiInvariant], dim_h: int, dim_a1: int) -> Verdict:
    if basics:
        return passed(f"{len(basics)} hypersurface components")
    if dim_h > 0:
        return Verdict("fail" if dim_h != dim_a1 else "pass",
                       f"no hypersurface components with dim H = {dim_h}, dim A1 = {dim_a1}")
    return passed("no components and dim H = 0")


def check_identity(r: int, dim_h: int, dim_a1: int) -> Verdict:
    text = f"{r} == {dim_h} - {dim_a1}"
    return passed(text) if r == dim_h - dim_a1 else failed(text)


def check_small_quotient(r: int, dim_h: int, dim_a1: int) -> Verdict:
    if dim_h > 1:
        return skipped(f"dim H = {dim_h} > 1")
    if dim_a1 == 0 and r == dim_h:
        return passed(f"dim H = {dim_h}: no additive invariants and r = dim H")
    return failed(f"dim H = {dim_h} but r = {r}, dim A1 = {dim_a1}")


def gradient_at(f: Poly, v: Sequence[Fraction]) -> list[Fraction]:
    return [evaluate(f.partial(i), v) for i in range(f.n)]


def jacobian_rank(p: PVSpace, basics: Sequence[SemiInvariant], additive: Sequence[AdditiveInvariant]) -> int:
    """Rank at ``v0`` of the Jacobian of the basics and the fractions ``h1 / g1``."""
    v = p.v0
    rows = [gradient_at(b.f, v) for b in basics]
    for a in additive:
        g1 = a.g1
        gv, hv = evaluate(g1, v), evaluate(a.h1, v)
        dh, dg = gradient_at(a.h1, v), gradient_at(g1, v)
        rows.append([(gv * x - hv * y) / (gv * gv) for x, y in zip(dh, dg)])
    if not rows:
        return 0
    return rank(RatMatrix(rows, p.n))


def check_jacobian(p: PVSpace, basics: Sequence[SemiInvariant], additive: Sequence[AdditiveInvariant]) -> Verdict:
    want = len(basics) + len(additive)
    got = jacobian_rank(p, basics, additive)
    text = f"rank {got} == r + s = {want}"
    return passed(text) if got == want else failed(text)


def check_dphi_vanishing(p: PVSpace, additive: Sequence[AdditiveInvariant]) -> Verdict:
    if not additive:
        return skipped("no additive invariants")
    iso = isotropy_subalgebra(p.g, p.v0)
    target = subspace_sum(p.g.derived_coords, iso)
    for a in additive:
        bad = [x for x in target.vectors() if pair(a.dphi, x)]
        if bad:
            return failed(f"dphi of {a.fraction_str()} is nonzero on [g, g] + g_v0")
    return passed("every dphi vanishes on [g, g] + g_v0")
