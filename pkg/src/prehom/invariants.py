"""Relative invariants and additive relative invariants, infinitesimally.

A homogeneous ``f`` is a semi-invariant with character ``lam`` when
``xi_X f = lam(X) f`` for every ``X`` in the algebra.  An additive invariant
``h / g`` (with ``g`` a product of basic invariants) satisfies
``xi_X h - lam_g(X) h = dphi(X) g`` for every ``X``.

Both searches use the grading by the diagonal part ``t`` of the algebra: a
diagonal matrix acts on each monomial by a scalar (its weight), so
semi-invariants and additive numerators live in a single weight class.  This
keeps the linear systems small enough for nine variables and degree nine.

Only rational eigenvalues are sought.  A character of an algebraic group
defined over QQ has a rational differential on rational matrices, so no
relative invariant is lost; irrational eigenvalues carry none.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from .linalg import (Echelon, RatMatrix, Subspace, dense, kernel, rational_eigenvalues,
                     solve_sparse, sparse, subspace_intersect)
from .liealg import LieAlgebraVF, apply_derivation
from .pvscore import PVSpace, is_linear_free_divisor
from .ratpoly import Exps, Poly, exact_divide, monomials, order_key


# derivation data ------------------------------------------------------------

def monomial_image(a: RatMatrix, e: Exps) -> dict[Exps, Fraction]:
    """``xi_a(x^e)`` as a sparse map from monomials to coefficients."""
    out: dict[Exps, Fraction] = {}
    for i, ei in enumerate(e):
        if not ei:
            continue
        for j, aij in enumerate(a.rows[i]):
            if aij:
                t = list(e)
                t[i] -= 1
                t[j] += 1
                t = tuple(t)
                v = out.get(t, 0) + ei * aij
                if v:
                    out[t] = v
                else:
                    del out[t]
    return out


def derivation_matrix(a: RatMatrix, d: int) -> RatMatrix:
    """Matrix of ``xi_a`` on degree-``d`` forms in the descending monomial basis."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    mons = monomials(a.nrows, d)
    cols = []
    for m in mons:
        img = monomial_image(a, m)
        cols.append([img.get(t, Fraction(0)) for t in mons])
    size = len(mons)
    return RatMatrix([[cols[j][i] for j in range(size)] for i in range(size)], size) if size else RatMatrix([], 0)


def poly_from_coeffs(n: int, mons: Sequence[Exps], coeffs) -> Poly:
    if isinstance(coeffs, dict):
        return Poly(n, {mons[k]: v for k, v in coeffs.items()})
    return Poly(n, {m: c for m, c in zip(mons, coeffs)})


def character_of(g: LieAlgebraVF, f: Poly) -> tuple[Fraction, ...] | None:
    """``lam`` with ``xi_X f = lam(X) f`` on every basis element, or None."""
    if f.is_zero():
        raise ValueError("zero polynomial has no character")
    lm = f.leading_monomial()
    lc = f.coefficient(lm)
    lam = []
    for b in g.basis:
        img = apply_derivation(b, f)
        c = img.coefficient(lm) / lc
        if img != f.scale(c):
            return None
        lam.append(c)
    return tuple(lam)


# diagonal grading -----------------------------------------------------------

@dataclass(frozen=True)
class Grading:
    """Diagonal part of an algebra, used to split forms into weight classes."""

    torus: tuple[tuple[Fraction, ...], ...]          # diagonals of a basis of g ∩ diag
    torus_coords: tuple[tuple[Fraction, ...], ...]   # same elements on the basis of g
    derived_torus: tuple[tuple[Fraction, ...], ...]  # diagonals spanning t ∩ [g, g]

    def weight(self, e: Exps) -> tuple[Fraction, ...]:
        return tuple(sum((a * d for a, d in zip(e, diag) if a), Fraction(0)) for diag in self.torus)

    def admissible(self, e: Exps) -> bool:
        """Whether characters can take this weight (they vanish on t ∩ [g, g])."""
        return all(not sum((a * d for a, d in zip(e, diag) if a), Fraction(0)) for diag in self.derived_torus)

    def classes(self, n: int, d: int) -> dict[tuple[Fraction, ...], list[Exps]]:
        """Degree-``d`` monomials grouped by weight (cached per grading)."""
        return _weight_classes(self, n, d)


@lru_cache(maxsize=64)
def _weight_classes(grade: Grading, n: int, d: int) -> dict[tuple[Fraction, ...], list[Exps]]:
    out: dict[tuple[Fraction, ...], list[Exps]] = {}
    for m in monomials(n, d):
        out.setdefault(grade.weight(m), []).append(m)
    return out


def grading(g: LieAlgebraVF) -> Grading:
    n = g.n
    diag_space = Subspace.span([[1 if k == i * n + i else 0 for k in range(n * n)] for i in range(n)], n * n)
    t = subspace_intersect(g.span, diag_space)
    td = subspace_intersect(t, g.derived)
    diags = tuple(tuple(v[i * n + i] for i in range(n)) for v in t.vectors())
    coords = tuple(g.coordinates(RatMatrix.from_flat(v, n)) for v in t.vectors())
    dtor = tuple(tuple(v[i * n + i] for i in range(n)) for v in td.vectors())
    return Grading(diags, coords, dtor)


def _derived_mats(g: LieAlgebraVF) -> list[RatMatrix]:
    return [RatMatrix.from_flat(v, g.n) for v in g.derived.vectors()]


def _coset_reps(g: LieAlgebraVF) -> list[int]:
    """Indices of basis elements spanning ``g`` modulo ``[g, g]``."""
    ech = g.derived_coords.echelon()
    reps = []
    for j in range(g.dim):
        if ech.add({j: Fraction(1)}):
            reps.append(j)
    return reps


# semi-invariants ------------------------------------------------------------

@dataclass(frozen=True)
class SemiInvariantSpace:
    """A joint eigenspace of degree-``degree`` forms with character ``lam``."""

    degree: int
    polys: tuple[Poly, ...]
    lam: tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return len(self.polys)

    def subspace(self) -> Subspace:
        """The eigenspace as a subspace of the monomial coordinate space."""
        n = self.polys[0].n
        mons = monomials(n, self.degree)
        return Subspace.span([[p.coefficient(m) for m in mons] for p in self.polys], len(mons))


def _kernel_in_class(mons: list[Exps], mats: Sequence[RatMatrix]) -> list[dict[int, Fraction]]:
    """Forms supported on ``mons`` killed by every ``xi_Y``, as sparse coefficient rows."""
    if not mats:
        return [{k: Fraction(1)} for k in range(len(mons))]
    eqs: dict[tuple[int, Exps], dict[int, Fraction]] = {}
    for y, a in enumerate(mats):
        for col, m in enumerate(mons):
            for t, v in monomial_image(a, m).items():
                eqs.setdefault((y, t), {})[col] = v
    return Echelon(len(mons)).add_all(eqs.values()).kernel_rows()


def _apply_sparse(a: RatMatrix, mons: list[Exps], vec: dict[int, Fraction]) -> dict[Exps, Fraction]:
    out: dict[Exps, Fraction] = {}
    for col, c in vec.items():
        for t, v in monomial_image(a, mons[col]).items():
            out[t] = out.get(t, 0) + c * v
    return {t: v for t, v in out.items() if v}


def _restricted_operator(a: RatMatrix, mons: list[Exps], basis: list[dict[int, Fraction]]) -> RatMatrix:
    """Matrix of ``xi_a`` on ``span(basis)``; the span must be invariant."""
    index = {m: k for k, m in enumerate(mons)}
    r = len(basis)
    # express images in the basis by solving  sum_i c_i basis_i = image
    cols = sorted({c for b in basis for c in b})
    rows = [{i: b[c] for i, b in enumerate(basis) if c in b} for c in cols]
    out_cols = []
    for b in basis:
        img = _apply_sparse(a, mons, b)
        rhs_map = {index[t]: v for t, v in img.items() if t in index}
        if len(rhs_map) != len(img) or any(c not in set(cols) for c in rhs_map):
            raise ArithmeticError("subspace is not invariant under the operator")
        res = solve_sparse(rows, [rhs_map.get(c, 0) for c in cols], r)
        if res is None:
            raise ArithmeticError("subspace is not invariant under the operator")
        out_cols.append([res[0].get(i, Fraction(0)) for i in range(r)])
    return RatMatrix([[out_cols[j][i] for j in range(r)] for i in range(r)], r)


def _split_joint(ops: list[RatMatrix], dim: int) -> list[list[tuple[Fraction, ...]]]:
    """Joint rational eigenspaces of commuting operators on QQ^dim (as bases)."""
    spaces: list[list[tuple[Fraction, ...]]] = [[tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]]
    for op in ops:
        nxt = []
        for basis in spaces:
            s = len(basis)
            # operator restricted to span(basis): solve basis^T c = op v
            bt = RatMatrix([[basis[i][k] for i in range(s)] for k in range(dim)], s)
            cols = []
            for v in basis:
                w = op.apply(v)
                res = solve_sparse([sparse(r) for r in bt.rows], w, s)
                if res is None:
                    raise ArithmeticError("operators do not preserve the joint eigenspace")
                cols.append(dense(res[0], s))
            local = RatMatrix([[cols[j][i] for j in range(s)] for i in range(s)], s)
            for mu in sorted(set(rational_eigenvalues(local))):
                ker = kernel(local - RatMatrix.identity(s).scale(mu))
                vecs = []
                for cvec in ker.vectors():
                    vecs.append(tuple(sum((c * b[k] for c, b in zip(cvec, basis) if c), Fraction(0))
                                      for k in range(dim)))
                nxt.append(vecs)
        spaces = nxt
    return spaces


def semiinvariants_of_degree(g: LieAlgebraVF, d: int, grade: Grading | None = None
                             ) -> list[SemiInvariantSpace]:
    """All nonzero joint eigenspaces of the algebra on degree-``d`` forms."""
    if d < 1:
        raise ValueError("degree must be at least 1")
    if not g.closed:
        raise ValueError("algebra is not closed under brackets")
    grade = grade or grading(g)
    derived = _derived_mats(g)
    reps = [g.basis[j] for j in _coset_reps(g)]
    out: list[SemiInvariantSpace] = []
    for w, mons in grade.classes(g.n, d).items():
        if not grade.admissible(mons[0]):
            continue
        kbasis = _kernel_in_class(mons, derived)
        if not kbasis:
            continue
        ops = [_restricted_operator(a, mons, kbasis) for a in reps]
        for space in _split_joint(ops, len(kbasis)):
            polys = []
            for cvec in space:
                coeffs: dict[int, Fraction] = {}
                for c, b in zip(cvec, kbasis):
                    if c:
                        for col, v in b.items():
                            coeffs[col] = coeffs.get(col, 0) + c * v
                polys.append(poly_from_coeffs(g.n, mons, coeffs))
            polys = _canonical_polys(polys, g.n, d)
            lam = character_of(g, polys[0])
            if lam is None:
                raise ArithmeticError("joint eigenvector failed the eigen-relation")
            out.append(SemiInvariantSpace(d, tuple(polys), lam))
    out.sort(key=lambda s: [(-order_key(e)[0], tuple(-x for x in e)) for e, _ in s.polys[0].sorted_terms()])
    return out


def _canonical_polys(polys: list[Poly], n: int, d: int) -> list[Poly]:
    """RREF basis of a span of forms, pivots at the largest monomials."""
    keys: dict[Exps, int] = {}
    allm = sorted({e for p in polys for e in p.terms}, key=order_key, reverse=True)
    keys = {m: k for k, m in enumerate(allm)}
    ech = Echelon(len(allm)).add_all({keys[e]: c for e, c in p.items()} for p in polys)
    return [Poly(n, {allm[k]: v for k, v in row.items()}) for row in ech.rows()]


# basic relative invariants ---------------------------------------------------

@dataclass(frozen=True)
class SemiInvariant:
    f: Poly
    lam: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return self.f.total_degree()

    def check(self, g: LieAlgebraVF) -> bool:
        return all(apply_derivation(b, self.f) == self.f.scale(l) for b, l in zip(g.basis, self.lam))


class LFDReconstructionError(ArithmeticError):
    """The basic invariants found do not reconstruct the Saito determinant."""


@dataclass(frozen=True)
class BasicScan:
    basics: tuple[SemiInvariant, ...]
    multiplicities: tuple[int, ...] | None   # exponents in the Saito determinant, when known
    degree_bound: int
    scanned_to: int
    complete: bool                           # every basic provably found
    flags: tuple[str, ...] = ()


def basic_relative_invariants(p: PVSpace, max_degree: int | None = None,
                              lfd: bool | None = None) -> BasicScan:
    """Scan degrees upward for irreducible semi-invariants.

    Every basic invariant divides each nonzero maximal minor of the
    coefficient matrix (those minors vanish on the whole complement of the
    open orbit), so no basic has degree above ``n`` and the scan is capped
    there.  When ``dim g == n`` the Saito determinant is the product of the
    basics with multiplicities, and the scan stops as soon as it is used up.
    """
    g = p.g
    n = g.n
    det = p.saito_det
    if lfd is None:
        lfd = det is not None and is_linear_free_divisor(g, determinant=det).is_lfd
    if max_degree is None:
        max_degree = n if lfd else 2 * n
        if not lfd and det is None:
            warnings.warn(f"no degree bound is known here; scanning with max_degree={max_degree}", stacklevel=2)
    cap = min(max_degree, n)
    grade = grading(g)
    found: list[SemiInvariant] = []
    mults: list[int] = []
    flags: list[str] = []
    remainder = det if det is not None and not det.is_zero() else None
    scanned = 0
    for d in range(1, cap + 1):
        if remainder is not None and remainder.is_constant():
            break
        scanned = d
        for space in semiinvariants_of_degree(g, d, grade):
            if space.dim > 1:
                flags.append(f"degree {d}: joint eigenspace of dimension {space.dim} "
                             f"for character {[str(x) for x in space.lam]}")
                continue
            f = space.polys[0].monic()
            if any(exact_divide(f, b.f) is not None for b in found):
                continue
            found.append(SemiInvariant(f, space.lam))
            if remainder is not None:
                m = 0
                while True:
                    q = exact_divide(remainder, f)
                    if q is None:
                        break
                    remainder, m = q, m + 1
                mults.append(m)
    complete = remainder is not None and remainder.is_constant()
    if remainder is not None and not complete:
        raise LFDReconstructionError(
            f"basic invariants up to degree {cap} leave the non-constant factor "
            f"{remainder} of the Saito determinant")
    return BasicScan(tuple(found), tuple(mults) if det is not None and not det.is_zero() else None,
                     max_degree, scanned, complete or cap >= n, tuple(flags))


# additive invariants ---------------------------------------------------------

@dataclass(frozen=True)
class AdditiveInvariant:
    """``h1 / prod f_i^k_i`` with infinitesimal additive function ``dphi``."""

    h1: Poly
    k: tuple[int, ...]
    dphi: tuple[Fraction, ...]
    denominators: tuple[SemiInvariant, ...] = field(repr=False)

    @property
    def g1(self) -> Poly:
        return denominator_poly(self.denominators, self.k)

    @property
    def lam(self) -> tuple[Fraction, ...]:
        return combined_character(self.denominators, self.k)

    def fraction_str(self, names: Sequence[str] | None = None) -> str:
        return f"({self.h1.to_str(names)})/({self.g1.to_str(names)})"


def denominator_poly(basics: Sequence[SemiInvariant], k: Sequence[int]) -> Poly:
    n = basics[0].f.n if basics else 0
    acc = Poly.constant(n, 1)
    for b, e in zip(basics, k):
        if e:
            acc = acc * b.f ** e
    return acc


def combined_character(basics: Sequence[SemiInvariant], k: Sequence[int]) -> tuple[Fraction, ...]:
    dim = len(basics[0].lam) if basics else 0
    return tuple(sum((e * b.lam[j] for b, e in zip(basics, k) if e), Fraction(0)) for j in range(dim))


def exponent_vectors(degrees: Sequence[int], bound: int) -> list[tuple[int, ...]]:
    """Nonzero ``k`` with ``sum k_i deg_i <= bound``, ordered by that degree then ``k``."""
    out = []
    ranges = [range(bound // d + 1) for d in degrees]
    for k in product(*ranges):
        tot = sum(a * d for a, d in zip(k, degrees))
        if 0 < tot <= bound:
            out.append(k)
    out.sort(key=lambda k: (sum(a * d for a, d in zip(k, degrees)), k))
    return out


def infer_dphi(g: LieAlgebraVF, h1: Poly, basics: Sequence[SemiInvariant], k: Sequence[int]
               ) -> tuple[Fraction, ...] | None:
    """The covector making ``h1 / g1`` additive, or None if there is none."""
    g1 = denominator_poly(basics, k)
    lam = combined_character(basics, k)
    out = []
    for b, l in zip(g.basis, lam):
        q = exact_divide(apply_derivation(b, h1) - h1.scale(l), g1)
        if q is None or not q.is_constant():
            return None
        out.append(q.constant_value())
    return tuple(out)


def _normalise_numerator(h: Poly, g1: Poly) -> Poly:
    """Representative of ``h`` modulo ``QQ g1`` with no term at ``g1``'s leading monomial."""
    lm = g1.leading_monomial()
    c = h.coefficient(lm)
    return h - g1.scale(c / g1.coefficient(lm)) if c else h


def _reduce_lowest_terms(h: Poly, k: tuple[int, ...], basics: Sequence[SemiInvariant]
                         ) -> tuple[Poly, tuple[int, ...]]:
    k = list(k)
    changed = True
    while changed:
        changed = False
        for i, b in enumerate(basics):
            if k[i] and not h.is_zero():
                q = exact_divide(h, b.f)
                if q is not None:
                    h, k[i], changed = q, k[i] - 1, True
    return h, tuple(k)


def _additive_system(g: LieAlgebraVF, grade: Grading, g1: Poly, lam: Sequence[Fraction]):
    """Kernel of the additive equations for one denominator.

    Unknowns: coefficients of ``h`` on one weight class, then ``c_j`` per basis element.
    Returns the monomial list and the kernel basis.
    """
    n = g.n
    d = g1.total_degree()
    mons = grade.classes(n, d).get(grade.weight(g1.leading_monomial()), [])
    nm = len(mons)
    eqs: dict[tuple[int, Exps], dict[int, Fraction]] = {}
    for j, a in enumerate(g.basis):
        lj = lam[j]
        for col, m in enumerate(mons):
            for t, v in monomial_image(a, m).items():
                row = eqs.setdefault((j, t), {})
                row[col] = row.get(col, 0) + v
            if lj:
                row = eqs.setdefault((j, m), {})
                row[col] = row.get(col, 0) - lj
        for t, v in g1.items():
            eqs.setdefault((j, t), {})[nm + j] = -v
    extra = []
    for y in g.derived_coords.vectors():
        extra.append({nm + j: c for j, c in enumerate(y) if c})
    for y in grade.torus_coords:
        extra.append({nm + j: c for j, c in enumerate(y) if c})
    ech = Echelon(nm + g.dim).add_all(r for r in eqs.values() if any(r.values()))
    ech.add_all(extra)
    return mons, ech.kernel_rows()


def _lift_direction(ker: list[dict[int, Fraction]], cvecs: list[dict[int, Fraction]],
                    direction: dict[int, Fraction], found: Echelon) -> dict[int, Fraction]:
    """A solution whose ``dphi`` equals ``direction``, or failing that agrees with it modulo ``found``."""
    t = len(ker)
    dim = found.ncols
    known = found.rows()
    for extra in ([], known):
        # sum_i s_i c(u_i) - sum_j q_j known_j = direction
        rows = []
        for col in range(dim):
            row = {i: c[col] for i, c in enumerate(cvecs) if col in c}
            for j, kv in enumerate(extra):
                if col in kv:
                    row[t + j] = -kv[col]
            rows.append(row)
        res = solve_sparse(rows, [direction.get(col, 0) for col in range(dim)], t + len(extra))
        if res is not None:
            u: dict[int, Fraction] = {}
            for i, s in res[0].items():
                if i < t:
                    for key, v in ker[i].items():
                        u[key] = u.get(key, 0) + s * v
            return {key: v for key, v in u.items() if v}
    raise ArithmeticError("direction is not realised by the solution space")


def additive_invariants(p: PVSpace, basics: Sequence[SemiInvariant], max_denominator_degree: int | None = None
                        ) -> list[AdditiveInvariant]:
    """A basis (by ``dphi``) of additive invariants with denominators of bounded degree."""
    g = p.g
    bound = g.n if max_denominator_degree is None else max_denominator_degree
    if bound < 0:
        raise ValueError("denominator bound must be non-negative")
    if not basics:
        return []
    grade = grading(g)
    degrees = [b.degree for b in basics]
    found = Echelon(g.dim)
    out: list[AdditiveInvariant] = []
    for k in exponent_vectors(degrees, bound):
        if found.rank == g.dim:
            break
        g1 = denominator_poly(basics, k)
        lam = combined_character(basics, k)
        mons, ker = _additive_system(g, grade, g1, lam)
        nm = len(mons)
        cvecs = [{j - nm: v for j, v in u.items() if j >= nm} for u in ker]
        # new directions: canonical complement of what is already spanned
        fresh = Echelon(g.dim).add_all(found.reduce(c) for c in cvecs)
        for direction in fresh.rows():
            u = _lift_direction(ker, cvecs, direction, found)
            c = {j - nm: v for j, v in u.items() if j >= nm}
            if not found.add(c):
                continue
            h = poly_from_coeffs(g.n, mons, {j: v for j, v in u.items() if j < nm})
            dphi = tuple(c.get(j, Fraction(0)) for j in range(g.dim))
            h, kk = _reduce_lowest_terms(h, k, basics)
            h = _normalise_numerator(h, denominator_poly(basics, kk))
            out.append(AdditiveInvariant(h, kk, dphi, tuple(basics)))
    return out


def verify_additive(p: PVSpace | LieAlgebraVF, a: AdditiveInvariant) -> bool:
    """Exact check of the defining identity, homogeneity and lowest terms."""
    g = p.g if isinstance(p, PVSpace) else p
    g1 = a.g1
    if len(a.dphi) != g.dim:
        return False
    if not a.h1.is_zero() and a.h1.homogeneous_degree() != g1.total_degree():
        return False
    for b, l, c in zip(g.basis, a.lam, a.dphi):
        if apply_derivation(b, a.h1) - a.h1.scale(l) != g1.scale(c):
            return False
    q = exact_divide(a.h1, g1) if not a.h1.is_zero() else Poly.zero(g.n)
    if q is not None and q.is_constant():
        return not any(a.dphi)
    for b, e in zip(a.denominators, a.k):
        if e and exact_divide(a.h1, b.f) is not None:
            return False
    return True


def partial_fraction_split(g: PVSpace | LieAlgebraVF, a: AdditiveInvariant,
                           first: Sequence[int], second: Sequence[int]
                           ) -> tuple[AdditiveInvariant, AdditiveInvariant] | None:
    """Split ``h1/(f f')`` into ``alpha/f + beta/f'``; None when no split exists.

    ``first`` and ``second`` are disjoint sets of indices into the basic
    invariants and together cover the support of ``k``.  A split only counts
    when both parts are themselves additive invariants.
    """
    g = g.g if isinstance(g, PVSpace) else g
    s1, s2 = set(first), set(second)
    if s1 & s2:
        raise ValueError(f"denominator parts share basic invariants {sorted(s1 & s2)}")
    support = {i for i, e in enumerate(a.k) if e}
    if not support <= s1 | s2:
        raise ValueError("split does not cover the denominator")
    basics = a.denominators
    n = a.h1.n
    k1 = tuple(e if i in s1 else 0 for i, e in enumerate(a.k))
    k2 = tuple(e if i in s2 else 0 for i, e in enumerate(a.k))
    zero_dphi = tuple(Fraction(0) for _ in a.dphi)
    if not any(k2):
        return a, AdditiveInvariant(Poly.zero(n), k2, zero_dphi, basics)
    if not any(k1):
        return AdditiveInvariant(Poly.zero(n), k1, zero_dphi, basics), a
    f = denominator_poly(basics, k1)
    fp = denominator_poly(basics, k2)
    m1 = monomials(n, f.total_degree())
    m2 = monomials(n, fp.total_degree())
    # h1 = alpha * f' + beta * f, one equation per monomial of h1's degree
    eqs: dict[Exps, dict[int, Fraction]] = {t: {} for t in a.h1.terms}
    for col, m in enumerate(m1):
        for t, v in (Poly.monomial(m) * fp).items():
            eqs.setdefault(t, {})[col] = v
    for col, m in enumerate(m2):
        for t, v in (Poly.monomial(m) * f).items():
            eqs.setdefault(t, {})[len(m1) + col] = v
    keys = list(eqs)
    res = solve_sparse([eqs[t] for t in keys], [a.h1.coefficient(t) for t in keys], len(m1) + len(m2))
    if res is None:
        return None
    sol = res[0]
    alpha = poly_from_coeffs(n, m1, {j: v for j, v in sol.items() if j < len(m1)})
    beta = poly_from_coeffs(n, m2, {j - len(m1): v for j, v in sol.items() if j >= len(m1)})
    parts = []
    for h, k in ((alpha, k1), (beta, k2)):
        dphi = infer_dphi(g, h, basics, k)
        if dphi is None:
            return None
        h, kk = _reduce_lowest_terms(h, k, basics)
        parts.append(AdditiveInvariant(_normalise_numerator(h, denominator_poly(basics, kk)), kk, dphi, basics))
    return parts[0], parts[1]
