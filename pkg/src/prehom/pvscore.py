"""Prehomogeneity certificates, Saito matrices and linear free divisors."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Literal, Sequence

from .linalg import Echelon, RatMatrix
from .liealg import LieAlgebraVF, orbit_tangent_dim
from .ratpoly import Poly, is_squarefree, poly_det, restrict_to_line


class GenericPointError(RuntimeError):
    """No point with an open orbit was found; this is not a proof of non-prehomogeneity."""


@dataclass(frozen=True)
class PVSpace:
    """An algebra together with a rational point whose orbit is open."""

    g: LieAlgebraVF
    v0: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.v0) != self.g.n:
            raise ValueError("generic point has the wrong length")
        if orbit_tangent_dim(self.g, self.v0) != self.g.n:
            raise ValueError("orbit at the given point is not open")

    @property
    def n(self) -> int:
        return self.g.n

    @cached_property
    def saito_det(self) -> Poly | None:
        """Saito determinant when ``dim g == n``, else None."""
        if self.g.dim != self.g.n:
            return None
        return saito_determinant(saito_matrix(self.g))


def find_generic_point(g: LieAlgebraVF, seed: int = 0, max_tries: int = 200,
                       tries_per_box: int = 8) -> tuple[Fraction, ...]:
    """Sample integer points from ``[-B, B]^n`` until the orbit tangent space is everything.

    ``B`` starts at 1 and doubles after every ``tries_per_box`` failures.
    """
    if g.dim < g.n:
        raise GenericPointError(f"dim g = {g.dim} < n = {g.n}: no orbit can be open")
    rng = random.Random(seed)
    bound = 1
    for attempt in range(max_tries):
        if attempt and attempt % tries_per_box == 0:
            bound *= 2
        v = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(g.n))
        if orbit_tangent_dim(g, v) == g.n:
            return v
    raise GenericPointError(f"no open-orbit point found in {max_tries} samples")


def certify(g: LieAlgebraVF, seed: int = 0, max_tries: int = 200,
            candidate: Sequence | None = None) -> PVSpace:
    """Build a :class:`PVSpace`, preferring ``candidate`` when its orbit is open."""
    if candidate is not None:
        v = tuple(Fraction(c) for c in candidate)
        if len(v) == g.n and orbit_tangent_dim(g, v) == g.n:
            return PVSpace(g, v)
    return PVSpace(g, find_generic_point(g, seed, max_tries))


def saito_matrix(g: LieAlgebraVF) -> list[list[Poly]]:
    """Entry ``(i, j)`` is the linear form ``(A_j x)_i``."""
    if g.dim != g.n:
        raise ValueError(f"Saito matrix needs dim g == n, got {g.dim} and {g.n}")
    return coefficient_matrix(g)


def coefficient_matrix(g: LieAlgebraVF) -> list[list[Poly]]:
    cols = [[Poly.linear_form(r) for r in m.rows] for m in g.basis]
    return [[cols[j][i] for j in range(g.dim)] for i in range(g.n)]


def saito_determinant(s: Sequence[Sequence[Poly]]) -> Poly:
    return poly_det(s)


@dataclass(frozen=True)
class ReducedVerdict:
    verdict: Literal["reduced", "not_reduced", "inconclusive"]
    trials: int
    witness: tuple[tuple[Fraction, ...], tuple[Fraction, ...]] | None = None
    note: str = ""


def is_reduced(f: Poly, trials: int = 3, seed: int = 0, box: int = 100,
               max_resamples: int = 50) -> ReducedVerdict:
    """Probabilistic square-freeness test on random line sections.

    A line ``p + t q`` on which ``f`` keeps its full degree and restricts to a
    square-free polynomial certifies that ``f`` is reduced.  Lines where the
    degree drops are resampled.  ``not_reduced`` is never a proof.
    """
    if f.is_zero():
        raise ValueError("reducedness of the zero polynomial")
    deg = f.total_degree()
    if deg <= 1:
        return ReducedVerdict("reduced", 0, note="degree at most one")
    rng = random.Random(seed)
    done = 0
    resamples = 0
    while done < trials:
        p = tuple(Fraction(rng.randint(-box, box)) for _ in range(f.n))
        q = tuple(Fraction(rng.randint(-box, box)) for _ in range(f.n))
        g = restrict_to_line(f, p, q)
        if g.degree() != deg:
            resamples += 1
            if resamples > max_resamples:
                break
            continue
        done += 1
        if is_squarefree(g):
            return ReducedVerdict("reduced", done, (p, q), "square-free line section")
    if done == 0:
        return ReducedVerdict("inconclusive", 0, note="every sampled line lost degree")
    return ReducedVerdict("not_reduced", done,
                          note=f"all {done} full-degree line sections had repeated roots")


@dataclass(frozen=True)
class LFDVerdict:
    is_lfd: bool
    reason: str
    determinant: Poly | None = None
    reduced: ReducedVerdict | None = None


def is_linear_free_divisor(g: LieAlgebraVF, trials: int = 3, seed: int = 0,
                           determinant: Poly | None = None) -> LFDVerdict:
    if g.dim != g.n:
        return LFDVerdict(False, f"dim g = {g.dim} differs from n = {g.n}")
    det = determinant if determinant is not None else saito_determinant(saito_matrix(g))
    if det.is_zero():
        return LFDVerdict(False, "Saito determinant vanishes identically", det)
    red = is_reduced(det, trials, seed)
    if red.verdict != "reduced":
        return LFDVerdict(False, f"Saito determinant is {red.verdict.replace('_', ' ')}", det, red)
    return LFDVerdict(True, "Saito determinant is nonzero and reduced", det, red)


def linear_logarithmic_fields(f: Poly) -> LieAlgebraVF:
    """All matrices ``A`` with ``xi_A f`` a constant multiple of ``f``."""
    deg = f.homogeneous_degree()
    if deg == "zero":
        raise ValueError("zero polynomial")
    if deg is None:
        raise ValueError("polynomial is not homogeneous")
    n = f.n
    ncols = n * n + 1
    eqs: dict[tuple[int, ...], dict[int, Fraction]] = {}
    # coefficient of each monomial in  sum_ij A_ij x_j d_i f  -  c f
    partials = [f.partial(i) for i in range(n)]
    for i in range(n):
        for e, c in partials[i].items():
            for j in range(n):
                t = list(e)
                t[j] += 1
                row = eqs.setdefault(tuple(t), {})
                row[i * n + j] = row.get(i * n + j, 0) + c
    for e, c in f.items():
        row = eqs.setdefault(e, {})
        row[n * n] = row.get(n * n, 0) - c
    ker = Echelon(ncols).add_all(eqs.values()).kernel_rows()
    mats = [RatMatrix.from_flat([v.get(k, Fraction(0)) for k in range(n * n)], n) for v in ker]
    return LieAlgebraVF.spanned_by(mats, n)


def exceptional_ideal_generators(p: PVSpace | LieAlgebraVF) -> list[Poly]:
    """All maximal minors of the ``n x dim g`` coefficient matrix."""
    g = p.g if isinstance(p, PVSpace) else p
    if g.dim < g.n:
        raise ValueError(f"need dim g >= n, got {g.dim} < {g.n}")
    m = coefficient_matrix(g)
    out = []
    for cols in combinations(range(g.dim), g.n):
        out.append(poly_det([[row[j] for j in cols] for row in m]))
    return out
