import numpy as np
import pytest

from projmono.classifier import random_general_hypersurface, random_inner_point, random_outer_point
from projmono.exceptions import DeflationError, UnsupportedCenter
from projmono.fibration import (
    CenterKind,
    FiberFamily,
    branch_points,
    build_projection,
    classify_center,
    genericity_report,
    plan_loops,
    slice_to_family,
    slice_with_frame,
)
from projmono.polycore import UnivariatePoly, parse_poly

FERMAT3 = parse_poly("x0^3 + x1^3 + x2^3")


def family(F, P, seed=0):
    return slice_to_family(build_projection(F, P, seed=seed), seed=seed)


class TestCenters:
    def test_fermat_outer(self):
        assert classify_center(FERMAT3, [0, 0, 1])[0] is CenterKind.OUTER
        assert build_projection(FERMAT3, [0, 0, 1]).effective_degree == 3

    def test_fermat_inner(self):
        inst = build_projection(FERMAT3, [1, -1, 0])
        assert inst.center_kind is CenterKind.INNER and inst.effective_degree == 2

    def test_random_quartic_surface(self):
        F = random_general_hypersurface(2, 4, seed=3)
        inst = build_projection(F, random_outer_point(F, 3))
        assert inst.center_kind is CenterKind.OUTER and inst.effective_degree == 4

    def test_singular_center_rejected(self):
        with pytest.raises(UnsupportedCenter):
            classify_center(parse_poly("x0*x1*x2"), [0, 0, 1])

    def test_ambiguous_band_rejected(self):
        F = parse_poly("x0^2 + x1^2 + x2^2")
        with pytest.raises(UnsupportedCenter):
            classify_center(F, [1, 1j * np.sqrt(1 + 1e-7), 0])

    def test_deflation_guard(self):
        F = parse_poly("x0^2 + x1^2 + x2^2")
        with pytest.raises(DeflationError):
            slice_with_frame(F, np.array([1, 0, 0]), np.array([0, 1, 0.3]), np.array([0.2, 0, 1]), inner=True)


class TestSlicing:
    def test_fermat_family_shape(self):
        # F(A + sB + tP) with P = (0,0,1) and A, B in {x2 = 0}: t^3 + (x(s)^3 + y(s)^3)
        A = np.array([1.0, 0.5, 0])
        B = np.array([-0.3, 1.0, 0])
        fam = slice_with_frame(FERMAT3, np.array([0, 0, 1.0]), A, B, inner=False)
        C = fam.coeff_matrix
        assert np.allclose(C[1], 0, atol=1e-12) and np.allclose(C[2], 0, atol=1e-12)
        assert np.allclose(C[3], [1, 0, 0, 0], atol=1e-12)
        s = 0.7 - 0.2j
        x = A + s * B
        assert abs(UnivariatePoly(C[0])(s) - (x[0] ** 3 + x[1] ** 3)) < 1e-12

    @pytest.mark.parametrize("kind", ["outer", "inner"])
    def test_pencil_consistency(self, kind):
        F = random_general_hypersurface(1, 4, seed=11)
        P = random_outer_point(F, 11) if kind == "outer" else random_inner_point(F, 11)
        fam = family(F, P, 11)
        rng = np.random.default_rng(0)
        for _ in range(50):
            s, t = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            # the deflated family is F along the pencil with its vanishing t^d term dropped
            want = F.unit_scaled().eval(fam.pencil_map(s, t))
            got = fam(s, t)
            assert abs(got - want) < 1e-9 * max(1.0, abs(want))

    def test_degree_laws(self):
        for d in (2, 3, 4):
            F = random_general_hypersurface(1, d, seed=d)
            assert family(F, random_outer_point(F, d)).fiber_degree == d
            assert family(F, random_inner_point(F, d)).fiber_degree == d - 1

    def test_inner_cubic_residual(self):
        fam = family(FERMAT3, [1, -1, 0])
        assert fam.fiber_degree == 2 and fam.deflation_residual < 1e-9

    def test_far_fiber_keeps_full_degree(self):
        # lc is tiny next to c_0(s) for large s but must not be trimmed
        fam = FiberFamily(np.array([[0, 0, 0, 0, 0, 1], [1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0], [1e-3, 0, 0, 0, 0, 0]], complex))
        r = fam.fiber_roots(1e4)
        assert r.size == 3 and np.max(np.abs(fam(1e4, r))) < 1e-6 * 1e20

    def test_conic_two_branch_points(self):
        F = parse_poly("x0^2 + x1^2 + x2^2")
        fam = family(F, [1, 2, 3])
        assert fam.fiber_degree == 2 and len(branch_points(fam)) == 2


class TestBranchPoints:
    def test_t2_minus_s(self):
        fam = FiberFamily(np.array([[0, -1], [0, 0], [1, 0]], complex))
        bps = branch_points(fam)
        assert np.allclose(bps.points, [0], atol=1e-12) and bps.simple_flags.tolist() == [True]
        assert genericity_report(fam, bps).generic

    def test_pure_cubic_nonsimple(self):
        zeros = [0.5, -0.4 + 0.3j, 0.1 - 0.6j]
        c = UnivariatePoly.from_roots(zeros)
        C = np.zeros((4, 4), complex)
        C[0], C[3, 0] = c.coeffs, 1
        fam = FiberFamily(C)
        bps = branch_points(fam)
        assert len(bps) == 3 and bps.multiplicities.tolist() == [2, 2, 2]
        assert not bps.simple_flags.any()
        for z in zeros:
            assert np.min(np.abs(bps.points - z)) < 1e-6
        rep = genericity_report(fam, bps)
        assert not rep.generic and "non-simple discriminant zeros" in rep.reasons

    def test_random_quartic_twelve(self):
        F = random_general_hypersurface(1, 4, seed=21)
        fam = family(F, random_outer_point(F, 21), 21)
        bps = branch_points(fam)
        assert len(bps) == 12 and bps.simple_flags.all()

    def test_random_quintic_generic(self):
        F = random_general_hypersurface(1, 5, seed=22)
        fam = family(F, random_outer_point(F, 22), 22)
        assert genericity_report(fam, branch_points(fam)).generic


class TestPlanLoops:
    def test_single_point(self):
        fam = FiberFamily(np.array([[0, -1], [0, 0], [1, 0]], complex))
        plan = plan_loops(branch_points(fam), seed=4)
        assert len(plan.petals) == 1 and plan.petals[0].radius <= 1
        assert abs(abs(plan.basepoint) - 2.2) < 1e-12

    def test_two_points(self):
        bps = branch_points(FiberFamily(np.array([[-1, 0, 1], [0, 0, 0], [1, 0, 0]], complex)))
        assert np.allclose(sorted(bps.points.real), [-1, 1])
        plan = plan_loops(bps, seed=5)
        assert all(p.radius <= 1 for p in plan.petals)
        s0 = plan.basepoint
        inward = -s0 / abs(s0)
        ang = [np.angle((p.branch_point - s0) / inward) for p in plan.petals]
        assert ang == sorted(ang)

    def test_twelve_points_invariants(self):
        F = random_general_hypersurface(1, 4, seed=23)
        bps = branch_points(family(F, random_outer_point(F, 23), 23))
        plan = plan_loops(bps, seed=23)
        pts = bps.points
        for p in plan.petals:
            others = np.abs(pts - p.branch_point)
            others = others[others > 0]
            assert p.radius <= 0.5 * others.min()
        s0 = plan.basepoint
        ang = [np.angle((p.branch_point + 0j - s0) / (-s0 / abs(s0))) for p in plan.petals]
        assert all(a < b for a, b in zip(ang, ang[1:]))
