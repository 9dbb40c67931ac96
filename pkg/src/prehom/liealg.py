"""Lie algebras of linear vector fields.

A rational ``n x n`` matrix ``A`` acts on polynomials as the derivation
``f -> sum_i (A x)_i * df/dx_i``.  With that convention the matrix whose
derivation is the commutator ``[xi_A, xi_B]`` is ``B A - A B``; the property
tests pin this down by applying both sides to random polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .linalg import Echelon, RatMatrix, Subspace, kernel, rank, solve_sparse, sparse, subspace_sum
from .ratpoly import Poly


@dataclass(frozen=True)
class LinVectorField:
    """A linear vector field, identified with its matrix."""

    matrix: RatMatrix

    def __post_init__(self):
        if not self.matrix.is_square():
            raise ValueError("a linear vector field needs a square matrix")

    @property
    def n(self) -> int:
        return self.matrix.nrows

    def image_forms(self) -> list[Poly]:
        """The linear forms ``(A x)_i``, i.e. the coefficients of the field."""
        return [Poly.linear_form(r) for r in self.matrix.rows]

    def __call__(self, f: Poly) -> Poly:
        return apply_derivation(self, f)


def as_field(a: LinVectorField | RatMatrix) -> LinVectorField:
    return a if isinstance(a, LinVectorField) else LinVectorField(a)


def vf_bracket(a: LinVectorField | RatMatrix, b: LinVectorField | RatMatrix) -> LinVectorField:
    """Matrix of the commutator derivation ``xi_a xi_b - xi_b xi_a``."""
    a, b = as_field(a), as_field(b)
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n}")
    return LinVectorField(b.matrix @ a.matrix - a.matrix @ b.matrix)


def apply_derivation(a: LinVectorField | RatMatrix, f: Poly) -> Poly:
    a = as_field(a)
    if a.n != f.n:
        raise ValueError(f"size mismatch: field on {a.n} variables, polynomial in {f.n}")
    # termwise: x^e -> sum_{i,j} A_ij e_i x^(e - e_i + e_j)
    n = f.n
    rows = a.matrix.rows
    out: dict[tuple[int, ...], Fraction] = {}
    for e, c in f.items():
        for i in range(n):
            if not e[i]:
                continue
            ci = c * e[i]
            for j, aij in enumerate(rows[i]):
                if aij:
                    t = list(e)
                    t[i] -= 1
                    t[j] += 1
                    t = tuple(t)
                    v = out.get(t, 0) + ci * aij
                    if v:
                        out[t] = v
                    else:
                        del out[t]
    return Poly(n, out)


@dataclass(frozen=True)
class ClosureWitness:
    closed: bool
    pair: tuple[int, int] | None = None
    residual: RatMatrix | None = None


class NotClosedError(ValueError):
    def __init__(self, witness: ClosureWitness):
        i, j = witness.pair
        super().__init__(f"basis is not closed under brackets: [X{i + 1}, X{j + 1}] leaves the span")
        self.witness = witness


@dataclass(frozen=True)
class LieAlgebraVF:
    """A Lie algebra of linear vector fields given by a basis of matrices."""

    n: int
    basis: tuple[RatMatrix, ...]
    closed: bool = field(default=False, compare=False)

    def __init__(self, basis: Sequence[RatMatrix | LinVectorField], n: int | None = None,
                 require_closed: bool = True):
        mats = tuple(b.matrix if isinstance(b, LinVectorField) else b for b in basis)
        if n is None:
            if not mats:
                raise ValueError("dimension n required for the zero algebra")
            n = mats[0].nrows
        for m in mats:
            if m.shape != (n, n):
                raise ValueError(f"basis matrix of shape {m.shape}, expected {(n, n)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "basis", mats)
        if mats and rank(RatMatrix([m.flat() for m in mats], n * n)) != len(mats):
            raise ValueError("basis matrices are linearly dependent")
        w = self.verify_closure()
        object.__setattr__(self, "closed", w.closed)
        if require_closed and not w.closed:
            raise NotClosedError(w)

    @classmethod
    def spanned_by(cls, mats: Sequence[RatMatrix], n: int, require_closed: bool = True) -> LieAlgebraVF:
        """Algebra from a possibly dependent spanning set (canonical RREF basis)."""
        sub = Subspace.span([m.flat() for m in mats], n * n)
        return cls([RatMatrix.from_flat(v, n) for v in sub.vectors()], n, require_closed)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def fields(self) -> list[LinVectorField]:
        return [LinVectorField(m) for m in self.basis]

    @cached_property
    def _flat_echelon(self) -> Echelon:
        return Echelon(self.n * self.n).add_all(sparse(m.flat()) for m in self.basis)

    @cached_property
    def span(self) -> Subspace:
        return Subspace.span([m.flat() for m in self.basis], self.n * self.n)

    def contains(self, m: RatMatrix) -> bool:
        return self._flat_echelon.contains(sparse(m.flat()))

    def coordinates(self, m: RatMatrix) -> tuple[Fraction, ...] | None:
        """Coefficients of ``m`` on the basis, or None when ``m`` lies outside."""
        nn = self.n * self.n
        eqs = [{k: b.flat()[c] for k, b in enumerate(self.basis) if b.flat()[c]} for c in range(nn)]
        res = solve_sparse(eqs, m.flat(), self.dim)
        if res is None:
            return None
        return tuple(res[0].get(k, Fraction(0)) for k in range(self.dim))

    def element(self, coords: Sequence) -> RatMatrix:
        acc = RatMatrix.zeros(self.n, self.n)
        for c, b in zip(coords, self.basis):
            if c:
                acc = acc + b.scale(c)
        return acc

    def verify_closure(self) -> ClosureWitness:
        return verify_closure(self)

    @cached_property
    def derived(self) -> Subspace:
        """``[g, g]`` as a subspace of flattened matrices."""
        return derived_subalgebra(self)

    @cached_property
    def derived_coords(self) -> Subspace:
        """``[g, g]`` in coordinates with respect to the basis."""
        vecs = [self.coordinates(RatMatrix.from_flat(v, self.n)) for v in self.derived.vectors()]
        return Subspace.span(vecs, self.dim)

    def is_abelian(self) -> bool:
        return self.derived.dim == 0

    def __str__(self) -> str:
        return f"LieAlgebraVF(n={self.n}, dim={self.dim})"


def verify_closure(g: LieAlgebraVF) -> ClosureWitness:
    ech = Echelon(g.n * g.n).add_all(sparse(m.flat()) for m in g.basis)
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            c = vf_bracket(g.basis[i], g.basis[j]).matrix
            res = ech.reduce(sparse(c.flat()))
            if res:
                resid = RatMatrix.from_flat([res.get(k, 0) for k in range(g.n * g.n)], g.n)
                return ClosureWitness(False, (i, j), resid)
    return ClosureWitness(True)


def derived_subalgebra(g: LieAlgebraVF) -> Subspace:
    if not g.closed:
        raise NotClosedError(verify_closure(g))
    vecs = [vf_bracket(g.basis[i], g.basis[j]).matrix.flat()
            for i in range(g.dim) for j in range(i + 1, g.dim)]
    return Subspace.span(vecs, g.n * g.n)


def orbit_matrix(g: LieAlgebraVF, v: Sequence) -> RatMatrix:
    """The ``n x dim g`` matrix with columns ``A_j v``."""
    if len(v) != g.n:
        raise ValueError(f"point of length {len(v)}, expected {g.n}")
    cols = [b.apply(v) for b in g.basis]
    return RatMatrix([[c[i] for c in cols] for i in range(g.n)], g.dim)


def isotropy_subalgebra(g: LieAlgebraVF, v: Sequence) -> Subspace:
    """Coordinates (on the basis) of the fields vanishing at ``v``."""
    return kernel(orbit_matrix(g, v))


def orbit_tangent_dim(g: LieAlgebraVF, v: Sequence) -> int:
    return rank(orbit_matrix(g, v))


def derived_plus_isotropy(g: LieAlgebraVF, v: Sequence) -> Subspace:
    return subspace_sum(g.derived_coords, isotropy_subalgebra(g, v))
