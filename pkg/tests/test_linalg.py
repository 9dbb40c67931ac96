from fractions import Fraction

import pytest

from prehom.linalg import (Echelon, RatMatrix, Subspace, char_poly, contains, det_rat, eigenspace, inverse,
                           kernel, rank, rational_eigenvalues, rational_roots, rref, solve, solve_sparse,
                           subspace_intersect, subspace_sum)
from prehom.ratpoly import UniPoly


def mat(rows):
    return RatMatrix(rows)


def basis_vector(i, n=3):
    return [int(k == i) for k in range(n)]


class TestRref:
    def test_identity(self):
        assert rref(RatMatrix.identity(3)) == (RatMatrix.identity(3), 3)

    def test_zero(self):
        z = RatMatrix.zeros(2, 3)
        assert rref(z) == (z, 0)

    def test_rank_one(self):
        assert rref(mat([[1, 2], [2, 4]])) == (mat([[1, 2], [0, 0]]), 1)

    def test_fractions(self):
        m, r = rref(mat([[2, 1], [1, 3]]))
        assert r == 2 and m == RatMatrix.identity(2)

    def test_rank(self):
        assert rank(mat([[1, 2, 3], [2, 4, 6], [0, 0, 1]])) == 2


class TestKernel:
    def test_identity(self):
        assert kernel(RatMatrix.identity(3)).dim == 0

    def test_zero_map(self):
        assert kernel(RatMatrix.zeros(3, 3)) == Subspace.full(3)

    def test_single_row(self):
        assert kernel(mat([[1, 0, 0]])) == Subspace.span([basis_vector(1), basis_vector(2)], 3)

    def test_vectors_are_annihilated(self):
        m = mat([[1, 2, 3, 4], [2, 4, 6, 9]])
        for v in kernel(m).vectors():
            assert m.apply(v) == (0, 0)


class TestSubspaces:
    def test_sum(self):
        a, b = Subspace.span([basis_vector(0)], 3), Subspace.span([basis_vector(1)], 3)
        assert subspace_sum(a, b) == Subspace.span([basis_vector(0), basis_vector(1)], 3)

    def test_intersect(self):
        a = Subspace.span([basis_vector(0), basis_vector(1)], 3)
        b = Subspace.span([basis_vector(1), basis_vector(2)], 3)
        assert subspace_intersect(a, b) == Subspace.span([basis_vector(1)], 3)

    def test_intersect_skew(self):
        a = Subspace.span([[1, 1, 0], [0, 0, 1]], 3)
        b = Subspace.span([[1, 0, 0], [0, 1, 1]], 3)
        assert subspace_intersect(a, b) == Subspace.span([[1, 1, 1]], 3)

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError):
            subspace_sum(Subspace.zero(2), Subspace.zero(3))

    def test_canonical_form(self):
        a = Subspace.span([[1, 2, 3], [4, 5, 6]], 3)
        b = Subspace.span([[5, 7, 9], [3, 3, 3], [0, 0, 0]], 3)
        assert a == b and a.basis == b.basis

    def test_contains(self):
        a = Subspace.span([[1, 2, 3]], 3)
        assert contains(a, [2, 4, 6])
        assert not contains(a, [1, 0, 0])

    def test_coordinates(self):
        a = Subspace.span([[1, 0, 1], [0, 1, 1]], 3)
        assert a.coordinates([2, 3, 5]) == (2, 3)
        with pytest.raises(ValueError):
            a.coordinates([1, 0, 0])


class TestCharPoly:
    def test_diagonal(self):
        assert char_poly(RatMatrix.diag([1, 2])) == UniPoly.from_roots([1, 2])

    def test_nilpotent(self):
        assert char_poly(mat([[0, 1], [0, 0]])) == UniPoly([0, 0, 1])

    def test_identity(self):
        assert char_poly(RatMatrix.identity(3)) == UniPoly.from_roots([1, 1, 1])

    def test_companion(self):
        # companion matrix of t^3 - 2t + 5
        c = mat([[0, 0, -5], [1, 0, 2], [0, 1, 0]])
        assert char_poly(c) == UniPoly([5, -2, 0, 1])

    def test_non_square(self):
        with pytest.raises(ValueError):
            char_poly(RatMatrix.zeros(2, 3))


class TestEigen:
    def test_repeated(self):
        assert rational_eigenvalues(RatMatrix.diag([1, 1, 2])) == [1, 1, 2]

    def test_rotation(self):
        assert rational_eigenvalues(mat([[0, -1], [1, 0]])) == []

    def test_nilpotent(self):
        assert rational_eigenvalues(mat([[0, 1], [0, 0]])) == [0, 0]

    def test_fractional(self):
        assert rational_eigenvalues(RatMatrix.diag([Fraction(1, 3), Fraction(-7, 2)])) == [Fraction(-7, 2),
                                                                                             Fraction(1, 3)]

    def test_large_constant_term(self):
        assert rational_roots(UniPoly.from_roots([10**9 + 7, -3])) == [-3, 10**9 + 7]

    def test_eigenspace(self):
        assert eigenspace(RatMatrix.diag([1, 2]), 1) == Subspace.span([[1, 0]], 2)

    def test_eigenspace_identity(self):
        assert eigenspace(RatMatrix.identity(3), 1) == Subspace.full(3)

    def test_eigenspace_non_eigenvalue(self):
        assert eigenspace(RatMatrix.diag([1, 2]), 5).dim == 0

    def test_non_square(self):
        with pytest.raises(ValueError):
            rational_eigenvalues(RatMatrix.zeros(1, 2))


class TestDeterminant:
    def test_identity(self):
        assert det_rat(RatMatrix.identity(4)) == 1

    def test_singular(self):
        assert det_rat(mat([[1, 2], [2, 4]])) == 0

    def test_two_by_two(self):
        assert det_rat(mat([[1, 2], [3, 4]])) == -2

    def test_pivot_swap_and_fractions(self):
        assert det_rat(mat([[0, Fraction(1, 2)], [3, 1]])) == Fraction(-3, 2)

    def test_non_square(self):
        with pytest.raises(ValueError):
            det_rat(RatMatrix.zeros(2, 3))


class TestSolve:
    def test_solve(self):
        m = mat([[2, 1], [1, 3]])
        x = solve(m, [3, 5])
        assert m.apply(x) == (3, 5)

    def test_inconsistent(self):
        assert solve(mat([[1, 1], [1, 1]]), [1, 2]) is None

    def test_sparse_particular_and_kernel(self):
        part, ker = solve_sparse([{0: Fraction(1), 1: Fraction(1)}], [Fraction(2)], 2)
        assert part == {0: 2}
        assert ker == [{1: 1, 0: -1}]

    def test_inverse(self):
        m = mat([[1, 2], [3, 4]])
        assert m @ inverse(m) == RatMatrix.identity(2)

    def test_inverse_singular(self):
        with pytest.raises(ZeroDivisionError):
            inverse(mat([[1, 2], [2, 4]]))


def test_echelon_is_order_independent():
    rows = [{0: Fraction(1), 2: Fraction(3)}, {1: Fraction(2), 2: Fraction(1)}, {0: Fraction(1), 1: Fraction(1)}]
    a = Echelon(3).add_all(rows).rows()
    b = Echelon(3).add_all(reversed(rows)).rows()
    assert a == b
