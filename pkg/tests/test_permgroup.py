import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projmono.exceptions import ParseError, PreconditionError
from projmono.permgroup import (
    Permutation,
    block_systems,
    classify,
    exhaustive_closure,
    generate,
    is_block_system,
    is_primitive,
    is_transitive,
    k_transitivity,
    k_transitivity_bruteforce,
    landau,
    lemma1_check,
    lemma2_check,
    orbits,
    parse_permutation,
    restrict,
    stabilizer,
)


def G_(degree, *cycles):
    return generate(degree, [parse_permutation(c, degree) for c in cycles])


S4 = G_(4, "(0 1)", "(0 1 2 3)")
A4 = G_(4, "(0 1 2)", "(0 1)(2 3)")
C4 = G_(4, "(0 1 2 3)")
C5 = G_(5, "(0 1 2 3 4)")
KLEIN = G_(4, "(0 1)(2 3)", "(0 2)(1 3)")


class TestPermutation:
    def test_composition_order(self):
        p, q = parse_permutation("(0 1)", 3), parse_permutation("(1 2)", 3)
        # p is applied first
        assert (p * q)(0) == q(p(0)) == 2

    def test_cycle_notation(self):
        p = parse_permutation("(0 2)(1 3)", 4)
        assert str(p) == "(0 2)(1 3)"
        assert str(Permutation.identity(3)) == "()"
        assert parse_permutation("()", 3).is_identity()

    def test_inverse_and_power(self):
        p = parse_permutation("(0 1 2 3 4)", 5)
        assert (p * p.inverse()).is_identity()
        assert (p**5).is_identity() and p.order() == 5
        assert p**-1 == p.inverse()

    def test_sign(self):
        assert parse_permutation("(0 1)", 3).sign() == -1
        assert parse_permutation("(0 1 2)", 3).is_even()

    @pytest.mark.parametrize("bad", ["(0 1", "(0 a)", "0 1", "(0 5)", "(0 0)"])
    def test_malformed(self, bad):
        with pytest.raises(ParseError):
            parse_permutation(bad, 4)

    @settings(max_examples=50, deadline=None)
    @given(st.permutations(list(range(6))))
    def test_round_trip(self, images):
        p = Permutation(images)
        assert parse_permutation(str(p), 6) == p


class TestOrder:
    def test_examples(self):
        assert S4.order == 24
        assert G_(3, "(0 1 2)").order == 3
        assert generate(5, []).order == 1

    def test_big_symmetric(self):
        n = 12
        G = generate(n, [Permutation.from_cycles([[0, 1]], n), Permutation.from_cycles([list(range(n))], n)])
        assert G.order == math.factorial(n)

    def test_membership(self):
        assert parse_permutation("(0 1 2)", 4) in A4
        assert parse_permutation("(0 1)", 4) not in A4


class TestOrbitsAndTransitivity:
    def test_orbits(self):
        assert is_transitive(C4)
        assert orbits(G_(4, "(0 1)")) == ((0, 1), (2,), (3,))

    def test_k_transitivity_examples(self):
        assert k_transitivity(S4) == 4
        assert k_transitivity(C5) == 1
        assert k_transitivity(A4) == 2

    def test_stabilizers(self):
        S3 = G_(3, "(0 1)", "(0 1 2)")
        H = stabilizer(S3, [0])
        assert H.order == 2
        R, pts = restrict(H, [1, 2])
        assert pts == (1, 2) and R.order == 2
        assert stabilizer(G_(3, "(0 1 2)"), [0]).order == 1
        S5 = G_(5, "(0 1)", "(0 1 2 3 4)")
        H = stabilizer(S5, [0, 1])
        assert H.order == 6 and all(g(0) == 0 and g(1) == 1 for g in H.elements())


class TestBlocks:
    def test_klein(self):
        systems = block_systems(KLEIN)
        assert ((0, 1), (2, 3)) in systems and len(systems) == 3
        assert not is_primitive(KLEIN)

    def test_prime_degree_cyclic_primitive(self):
        assert is_primitive(C5)

    def test_block_axioms(self):
        for G in (KLEIN, C4, G_(6, "(0 1 2 3 4 5)"), G_(6, "(0 2 4)(1 3 5)", "(0 1)(2 3)(4 5)")):
            for s in block_systems(G):
                assert is_block_system(G, s)
                assert G.degree % len(s[0]) == 0 and len(s) == G.degree // len(s[0])


class TestLemmas:
    def test_lemma1_examples(self):
        assert lemma1_check(S4, 0, 3) == (True, True)
        assert lemma1_check(A4, 0, 3) == (False, False)
        assert lemma1_check(C4, 0, 2) == (False, False)

    def test_lemma2_examples(self):
        assert lemma2_check(S4, [0, 1])
        A5 = G_(5, "(0 1 2)", "(0 1 2 3 4)")
        assert A5.order == 60 and lemma2_check(A5, [0])
        with pytest.raises(PreconditionError):
            lemma2_check(KLEIN, [0])

    def test_lemma2_on_small_groups(self):
        rng = np.random.default_rng(7)
        checked = 0
        for _ in range(150):
            n = int(rng.integers(3, 7))
            G = generate(n, [Permutation(rng.permutation(n)) for _ in range(int(rng.integers(1, 3)))])
            for a in range(1, n - 1):
                try:
                    assert lemma2_check(G, list(range(a)))
                    checked += 1
                except PreconditionError:
                    pass
        assert checked > 0


class TestClassify:
    def test_labels(self):
        assert classify(G_(3, "(0 1)", "(0 1 2)")) == ("symmetric",)
        assert classify(A4) == ("alternating",)
        assert classify(C4) == ("cyclic", "imprimitive(2)")
        assert "imprimitive(2)" in classify(KLEIN) and "cyclic" not in classify(KLEIN)

    def test_landau(self):
        assert [landau(n) for n in range(1, 11)] == [1, 2, 3, 4, 6, 6, 12, 15, 20, 30]

    def test_two_transitive_is_primitive(self):
        rng = np.random.default_rng(8)
        for _ in range(60):
            n = int(rng.integers(3, 8))
            G = generate(n, [Permutation(rng.permutation(n)) for _ in range(2)])
            if is_transitive(G) and k_transitivity(G) >= 2:
                assert is_primitive(G)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.permutations(list(range(n))), max_size=3).map(lambda g: (n, g))))
def test_chain_matches_closure(data):
    n, gens = data
    perms = [Permutation(g) for g in gens]
    G = generate(n, perms)
    closure = exhaustive_closure(n, perms)
    assert G.order == len(closure)
    if is_transitive(G):
        assert k_transitivity(G) == k_transitivity_bruteforce(G, closure)
