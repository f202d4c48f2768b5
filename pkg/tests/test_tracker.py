import numpy as np
import pytest

from projmono.classifier import random_general_hypersurface, random_outer_point
from projmono.exceptions import AmbiguousMatching, InputError
from projmono.fibration import FiberFamily, Petal, branch_points, build_projection, plan_loops, slice_to_family
from projmono.permgroup import Permutation, generate
from projmono.tracker import (
    FiberState,
    circle_path,
    initial_state,
    match_roots,
    monodromy_generators,
    track_loop,
    track_path,
    track_segment,
)

SQRT = FiberFamily(np.array([[0, -1], [0, 0], [1, 0]], complex))  # t^2 - s
CBRT = FiberFamily(np.array([[0, -1], [0, 0], [0, 0], [1, 0]], complex))  # t^3 - s


def random_family(d, seed):
    F = random_general_hypersurface(1, d, seed)
    return slice_to_family(build_projection(F, random_outer_point(F, seed), seed=seed), seed=seed)


class TestSegments:
    def test_square_roots(self):
        out = track_segment(SQRT, FiberState(1, [1, -1]), 4)
        assert np.allclose(out.roots, [2, -2], atol=1e-10)

    def test_cubic_branch(self):
        fam = FiberFamily(np.array([[-2, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]], complex))
        start = initial_state(fam, 0)
        i = int(np.argmin(np.abs(start.roots - 2 ** (1 / 3))))
        out = track_segment(fam, start, 1)
        assert abs(out.roots[i] - 1) < 1e-10

    def test_zero_length(self):
        st = FiberState(0.5, [0.3, -0.3])
        assert np.array_equal(track_segment(SQRT, st, 0.5).roots, st.roots)

    def test_state_is_read_only(self):
        st = FiberState(1, [1, -1])
        with pytest.raises(ValueError):
            st.roots[0] = 3

    def test_path_must_start_at_state(self):
        with pytest.raises(InputError):
            track_path(SQRT, FiberState(1, [1, -1]), [2, 3])


class TestMatching:
    def test_permutation(self):
        assert match_roots([2, 0, 1], [0, 1, 2], 0.1).tolist() == [2, 0, 1]

    def test_per_root_radii(self):
        # a scalar radius sized for the big root would swallow the small gap
        ref = [0.0, 0.5, 1e7]
        assert match_roots([0.5, 1e7 + 3, 0.0], ref, [1e-6, 1e-6, 10.0]).tolist() == [1, 2, 0]
        with pytest.raises(AmbiguousMatching):
            match_roots([0.5, 1e7, 0.0], ref, 10.0)

    def test_ambiguous(self):
        with pytest.raises(AmbiguousMatching):
            match_roots([0.5, 2], [0, 2], 0.1)


class TestLoops:
    def test_square_root_petal(self):
        plan = plan_loops(branch_points(SQRT), seed=1)
        g = monodromy_generators(SQRT, plan)
        assert [str(p) for p in g.petals] == ["(0 1)"] and g.relation_holds

    def test_cube_root_petal(self):
        plan = plan_loops(branch_points(CBRT), seed=2)
        (p,) = monodromy_generators(CBRT, plan).petals
        assert p.cycle_type() == (3,)

    def test_empty_petal_is_identity(self):
        base = initial_state(SQRT, 3.0)
        start = 2.5 + 0.0j
        petal = Petal(2.0 + 0j, 0.5, np.array([3.0, start]))
        assert track_loop(SQRT, base, petal).is_identity()

    def test_return_path_agrees(self):
        fam = random_family(3, 40)
        plan = plan_loops(branch_points(fam), seed=40)
        base = initial_state(fam, plan.basepoint)
        for petal in plan.petals[:3]:
            assert track_loop(fam, base, petal) == track_loop(fam, base, petal, return_path=True)

    def test_circle_closes(self):
        pts = circle_path(1 + 1j, 2 + 1j, 8)
        assert pts[0] == pts[-1] and np.allclose(np.abs(pts - (1 + 1j)), 1)

    @pytest.mark.parametrize("d,seed", [(3, 41), (4, 42)])
    def test_cubic_quartic_transpositions(self, d, seed):
        fam = random_family(d, seed)
        bps = branch_points(fam)
        g = monodromy_generators(fam, plan_loops(bps, seed=seed))
        assert len(g.petals) == d * (d - 1)
        assert all([c for c in p.cycle_type() if c > 1] == [2] for p in g.petals)
        assert g.relation_holds
        assert generate(d, g.petals).order == [1, 1, 2, 6, 24][d]

    def test_clockwise_inverts(self):
        fam = random_family(4, 43)
        plan = plan_loops(branch_points(fam), seed=43)
        ccw = monodromy_generators(fam, plan)
        cw = monodromy_generators(fam, plan, clockwise=True)
        assert all(a * b == Permutation.identity(4) for a, b in zip(ccw.petals, cw.petals))
        assert cw.relation_holds

    def test_relabeling_conjugates(self):
        fam = random_family(4, 44)
        plan = plan_loops(branch_points(fam), seed=44)
        g0 = monodromy_generators(fam, plan)
        order = [2, 0, 3, 1]
        g1 = monodromy_generators(fam, plan, label_order=order)
        relabel = Permutation(np.argsort(order))
        assert [p.conjugate(relabel) for p in g0.petals] == list(g1.petals)
