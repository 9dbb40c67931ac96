"""Independent brute-force oracles, deliberately free of the library's shortcuts."""

from __future__ import annotations

from fractions import Fraction

from prehom.invariants import derivation_matrix
from prehom.liealg import LieAlgebraVF
from prehom.linalg import RatMatrix, Subspace, kernel, rational_eigenvalues


def semiinvariant_oracle(g: LieAlgebraVF, d: int) -> set[tuple[tuple[Fraction, ...], Subspace]]:
    """Every nonzero joint eigenspace on degree-``d`` forms, by direct solving.

    Candidate characters run over the grid of rational eigenvalues of the
    individual operators; each candidate is checked by solving the full
    stacked system ``xi_X f = lam(X) f`` for all basis elements at once.
    The grid is explored depth first and a branch is dropped as soon as its
    partial system has only the zero solution.
    """
    ops = [derivation_matrix(b, d) for b in g.basis]
    size = ops[0].nrows
    eig = [sorted(set(rational_eigenvalues(m))) for m in ops]
    out = set()

    def stacked(lam):
        rows = []
        for m, l in zip(ops, lam):
            rows += (m - RatMatrix.identity(size).scale(l)).rows
        return kernel(RatMatrix(rows, size)) if rows else Subspace.full(size)

    def search(lam):
        space = stacked(lam)
        if space.dim == 0:
            return
        if len(lam) == len(ops):
            out.add((tuple(lam), space))
            return
        for mu in eig[len(lam)]:
            search(lam + [mu])

    search([])
    return out
