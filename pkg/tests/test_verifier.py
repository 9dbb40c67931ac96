from fractions import Fraction

import pytest

from prehom import families as fam
from prehom import verifier as vf
from prehom.invariants import additive_invariants, basic_relative_invariants
from prehom.liealg import LieAlgebraVF
from prehom.linalg import contains
from prehom.pvscore import certify


def analysed(mats, candidate=None, bound=None):
    p = certify(LieAlgebraVF(mats), candidate=candidate)
    basics = list(basic_relative_invariants(p).basics)
    return p, basics, additive_invariants(p, basics, bound)


class TestComponentCount:
    def test_aac(self):
        p, basics, _ = analysed(fam.aac_basis())
        v = vf.check_component_count(p.g, basics, True)
        assert v.status == "pass" and v.detail == "2 == 3 - 1"

    def test_complicated(self):
        # the derived algebra has codimension 3 inside a 9-dimensional algebra
        p, basics, _ = analysed(fam.symmetric_action())
        assert vf.check_component_count(p.g, basics, True).detail == "3 == 9 - 6"

    def test_normal_crossings(self):
        p, basics, _ = analysed(fam.normal_crossings(4))
        assert vf.check_component_count(p.g, basics, True).detail == "4 == 4 - 0"

    def test_skipped_without_lfd(self):
        p, basics, _ = analysed(fam.two_additive(3))
        assert vf.check_component_count(p.g, basics, False).status == "skipped"


class TestNoAdditive:
    def test_aac(self):
        _, _, add = analysed(fam.aac_basis(), bound=6)
        v = vf.check_no_additive(add, True, 6)
        assert v.status == "pass" and v.witness["bound"] == 6

    def test_two_additive_skipped(self):
        _, _, add = analysed(fam.two_additive(3))
        assert vf.check_no_additive(add, False, 3).status == "skipped"

    def test_fails_when_present(self):
        _, _, add = analysed(fam.two_additive(3))
        assert vf.check_no_additive(add, True, 3).status == "fail"


class TestEuler:
    def test_aac(self):
        p, basics, _ = analysed(fam.aac_basis())
        dec = vf.euler_decomposition(p.g, basics)
        x1, _, x3 = fam.aac_basis()
        assert [p.g.element(x) for x in dec.xs] == [x1, x3.scale(Fraction(1, 2))]
        assert not any(dec.residual)
        assert dec.euler_values == (1, 2)
        assert vf.check_euler(p.g, basics, True).status == "pass"

    def test_torus(self):
        p, basics, _ = analysed(fam.normal_crossings(3))
        dec = vf.euler_decomposition(p.g, basics)
        for x, b in zip(dec.xs, basics):
            m = p.g.element(x)
            assert m.is_lower_triangular() and m.is_upper_triangular()
            assert sum(m.diagonal()) == 1
        assert vf.check_euler(p.g, basics, True).ok

    def test_complicated(self):
        p, basics, _ = analysed(fam.symmetric_action())
        dec = vf.euler_decomposition(p.g, basics)
        assert dec.euler_values == tuple(b.degree for b in basics)
        assert sorted(dec.euler_values) == [2, 3, 4]
        assert contains(p.g.derived_coords, dec.residual)

    def test_identity_missing(self):
        g = LieAlgebraVF(fam.toeplitz_lower(3)[1:])
        with pytest.raises(vf.EulerError):
            vf.euler_decomposition(g, [])


class TestVanishing:
    def test_aac(self):
        p, basics, _ = analysed(fam.aac_basis())
        points = [[0, 1, 0], [1, 0, 0]]
        assert vf.check_vanishing(p.g, basics, points, True).status == "pass"

    def test_complicated_points(self):
        p, basics, _ = analysed(fam.symmetric_action())
        pts = [fam.sym_point(m) for m in (
            [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            [[0, 0, 1, 1], [0, 0, 1, 0], [1, 1, 0, 0], [1, 0, 0, 0]],
            [[0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]])]
        v = vf.check_vanishing(p.g, basics, pts, True)
        assert v.status == "pass" and v.detail.count("isotropy dim 1") == 3

    def test_normal_crossings(self):
        p, basics, _ = analysed(fam.normal_crossings(3))
        pts = [[int(j != i) for j in range(3)] for i in range(3)]
        assert vf.check_vanishing(p.g, basics, pts, True).ok

    def test_invalid_point(self):
        p, basics, _ = analysed(fam.aac_basis())
        v = vf.check_vanishing(p.g, basics, [[0, 0, 1]], True)
        assert v.status == "fail" and "2 components" in v.detail

    def test_found_points(self):
        p, basics, _ = analysed(fam.aac_basis())
        for i in range(len(basics)):
            v = vf.find_component_point(p.g, basics, i)
            assert vf.validate_component_point(basics, v) == i

    def test_no_points(self):
        p, basics, _ = analysed(fam.aac_basis())
        assert vf.check_vanishing(p.g, basics, [], True).status == "skipped"


class TestSpecialCases:
    def test_torus_abelian(self):
        p, basics, _ = analysed(fam.normal_crossings(3))
        assert vf.check_abelian(p.g, basics, True).status == "pass"

    def test_aac_solvable(self):
        p, basics, _ = analysed(fam.aac_basis())
        v = vf.check_solvable(p.g, basics)
        assert v.status == "pass" and "rank of the diagonal projection" in v.detail

    def test_complicated_not_triangular(self):
        p, basics, _ = analysed(fam.symmetric_action())
        assert vf.check_solvable(p.g, basics).status == "skipped"

    def test_nontrivial(self):
        assert vf.check_nontrivial(None, [], 2, 1).status == "fail"
        assert vf.check_nontrivial(None, [], 0, 0).status == "pass"

    def test_small_quotient(self):
        assert vf.check_small_quotient(1, 1, 0).status == "pass"
        assert vf.check_small_quotient(0, 1, 1).status == "fail"
        assert vf.check_small_quotient(1, 3, 2).status == "skipped"

    def test_identity(self):
        assert vf.check_identity(2, 3, 1).ok
        assert not vf.check_identity(2, 3, 0).ok


class TestJacobian:
    def test_two_additive(self):
        p, basics, add = analysed(fam.two_additive(4))
        assert vf.jacobian_rank(p, basics, add) == 4
        assert vf.check_jacobian(p, basics, add).ok

    def test_dphi_vanishing(self):
        p, basics, add = analysed(fam.lu_basis(2, 3), bound=2)
        assert vf.check_dphi_vanishing(p, add).status == "pass"

    def test_dphi_skipped(self):
        p, basics, add = analysed(fam.aac_basis())
        assert vf.check_dphi_vanishing(p, add).status == "skipped"
