import json
import math

import numpy as np
import pytest

from projmono.classifier import (
    _restrict_to_line,
    decomposability_report,
    degeneration_experiment,
    monodromy_report,
    random_degeneration_data,
    random_general_hypersurface,
    random_inner_point,
    random_outer_point,
    uniform_sweep,
)
from projmono.exceptions import InputError, UnsupportedCenter
from projmono.fibration import CenterKind
from projmono.permgroup import generate, k_transitivity, parse_permutation
from projmono.polycore import HomogeneousPoly, monomial_exponents, parse_poly, roots

FERMAT4 = parse_poly("x0^4 + x1^4 + x2^4")


class TestRandomInstances:
    def test_deterministic(self):
        assert random_general_hypersurface(1, 3, 5) == random_general_hypersurface(1, 3, 5)
        assert random_general_hypersurface(1, 3, 5) != random_general_hypersurface(1, 3, 6)

    def test_coefficient_count(self):
        F = random_general_hypersurface(2, 4, 1)
        assert len(F.terms) == math.comb(4 + 2 + 1, 3) == len(monomial_exponents(4, 4))

    def test_points(self):
        F = random_general_hypersurface(1, 4, 2)
        G = F.unit_scaled()
        assert abs(G.eval(random_inner_point(F, 2))) < 1e-10
        assert abs(G.eval(random_outer_point(F, 2))) > 1e-3

    def test_bad_parameters(self):
        with pytest.raises(InputError):
            random_general_hypersurface(1, 1, 0)


class TestMonodromyReport:
    def test_cubic_outer_inner(self):
        F = random_general_hypersurface(1, 3, 0)
        R = monodromy_report(F, random_outer_point(F, 0), seed=0)
        assert R.group.order == 6 and R.uniform and R.center_kind is CenterKind.OUTER
        R = monodromy_report(F, random_inner_point(F, 0), seed=0)
        assert R.group.degree == 2 and R.group.order == 2 and R.uniform

    def test_conic(self):
        F = parse_poly("x0^2 + x1^2 - 2*x2^2")
        R = monodromy_report(F, [1, 2, 3])
        assert R.group.order == 2 and R.uniform
        R = monodromy_report(F, [1, 1, 1])
        assert R.effective_degree == 1 and R.group.order == 1 and R.uniform

    def test_fermat_quartic(self):
        R = monodromy_report(FERMAT4, [0, 0, 1], seed=0)
        assert R.group.order == 4 and "cyclic" in R.labels and not R.uniform
        assert R.accepted_nonsimple and len(R.retries) >= 1
        dec = decomposability_report(R)
        assert dec["decomposable"] and any(t["factor_degrees"] == [2, 2] for t in dec["towers"])

    def test_group_transitive_and_generated_by_transpositions(self):
        F = random_general_hypersurface(2, 3, 9)
        R = monodromy_report(F, random_outer_point(F, 9), seed=9)
        assert R.group.is_transitive()
        assert all([c for c in ct if c > 1] == [2] for ct in R.petal_cycle_types)

    def test_relabeling_invariance(self):
        F = random_general_hypersurface(1, 4, 13)
        P = random_outer_point(F, 13)
        a = monodromy_report(F, P, seed=13)
        b = monodromy_report(F, P, seed=13, label_order=[3, 1, 0, 2])
        assert a.group.order == b.group.order
        assert k_transitivity(a.group) == k_transitivity(b.group)
        assert a.uniform == b.uniform and a.labels == b.labels

    def test_json_deterministic(self):
        F = random_general_hypersurface(1, 3, 4)
        P = random_outer_point(F, 4)
        j1 = monodromy_report(F, P, seed=4).to_json()
        j2 = monodromy_report(F, P, seed=4).to_json()
        assert j1 == j2
        doc = json.loads(j1)
        assert doc["group"]["order"] == "6" and doc["seed"] == 4 and "collision" in doc["tolerances"]

    def test_center_near_flex(self):
        # one branch point sits about 2000 times farther out than the rest
        F = random_general_hypersurface(1, 4, 1407)
        R = monodromy_report(F, random_inner_point(F, 1407), seed=1407)
        assert R.group.order == 6 and R.uniform and len(R.branch_points) == 10

    def test_singular_center(self):
        with pytest.raises(UnsupportedCenter):
            monodromy_report(parse_poly("x0*x1*x2"), [0, 0, 1])


class TestDecomposability:
    def test_symmetric_is_primitive(self):
        dec = decomposability_report(generate(4, [parse_permutation("(0 1)", 4), parse_permutation("(0 1 2 3)", 4)]))
        assert dec["primitive"] and not dec["decomposable"]

    def test_klein(self):
        dec = decomposability_report(generate(4, [parse_permutation("(0 1)(2 3)", 4), parse_permutation("(0 2)(1 3)", 4)]))
        assert dec["decomposable"] and len(dec["systems"]) == 3
        assert all(s["block_size"] == 2 for s in dec["systems"])

    def test_tower_of_three(self):
        # C8 has nested blocks of size 2 and 4
        dec = decomposability_report(generate(8, [parse_permutation("(0 1 2 3 4 5 6 7)", 8)]))
        assert [2, 2, 2] in [t["factor_degrees"] for t in dec["towers"]]


class TestSweep:
    def test_conics(self):
        S = uniform_sweep(1, 2, 3, seed=10)
        assert S.all_uniform and S.outer_uniform == 3 and S.inner_uniform == 3

    @pytest.mark.parametrize("args", [(0, 3, 1), (3, 3, 1), (1, 1, 1), (1, 7, 1), (1, 3, 0), (1, 3, 101)])
    def test_bounds(self, args):
        with pytest.raises(InputError):
            uniform_sweep(*args)

    def test_parallel_matches_serial(self):
        a = uniform_sweep(1, 3, 2, seed=20)
        b = uniform_sweep(1, 3, 2, seed=20, n_jobs=2)
        assert a.to_dict() == b.to_dict()


def point_on_Y_and_H(Y, H, rng):
    h = np.array([H.terms.get(tuple(int(i == j) for j in range(3)), 0) for i in range(3)])
    basis = np.linalg.svd(h[None, :])[2][1:].conj()
    U, V = basis
    u = roots(_restrict_to_line(Y, U, V))[0]
    return U + u * V


class TestDegeneration:
    def test_cubic(self):
        E = degeneration_experiment(*random_degeneration_data(1, 3, 1), seed=1)
        assert E.contained and E.base_group.order == 2
        assert all(G.order == 6 for G in E.groups)
        assert all(sorted(m) == [0, 1, 2] for m in E.label_matchings)

    def test_large_s_is_halved(self):
        E = degeneration_experiment(*random_degeneration_data(1, 4, 7), s_values=[0.5], seed=7)
        assert E.contained and E.halvings[0] >= 1 and abs(E.s_values[0]) < 0.5

    def test_center_on_both_components(self):
        Y, H, F, _ = random_degeneration_data(1, 3, 2)
        P = point_on_Y_and_H(Y, H, np.random.default_rng(0))
        with pytest.raises(UnsupportedCenter, match="singular locus"):
            degeneration_experiment(Y, H, F, P)

    def test_bad_degrees(self):
        Y, H, F, P = random_degeneration_data(1, 3, 3)
        with pytest.raises(InputError):
            degeneration_experiment(F, H, F, P)

    def test_json(self):
        E = degeneration_experiment(*random_degeneration_data(1, 3, 5), seed=5)
        doc = json.loads(E.to_json())
        assert doc["contained"] and len(doc["runs"]) == 2
