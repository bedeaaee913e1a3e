"""Lexicographic models: membership, maximality, conditioning, witnesses."""

import random
from fractions import Fraction

import pytest

from desirability import (
    DegenerateConditioningError,
    Gamble,
    LexSystem,
    Scope,
    ScopeError,
    Tri,
    Variable,
    expectation_vector,
    gamble_grid,
    independent_product,
    indicator,
    inex_member,
    lex_canonical,
    lex_condition,
    lex_equal,
    lex_is_coherent,
    lex_is_maximal,
    lex_member,
    lower_prevision,
    maximal_product_check,
    nonmaximality_witness,
    sample_gambles,
    upper_prevision,
)
from desirability.randgen import random_maximal_binary_lex

F = Fraction
V1 = Variable("X1", ("a", "b"))
V2 = Variable("X2", ("a", "b"))
S1 = Scope.of([V1])
S2 = Scope.of([V2])
S12 = S1.union(S2)

UNIFORM2 = (F(1, 2), F(1, 2))
FAIR_THEN_HEADS = LexSystem(S1, (UNIFORM2, (F(1), F(0))))


def refined_joint():
    return LexSystem(
        S12,
        (
            (F(1, 4), F(1, 4), F(1, 4), F(1, 4)),
            (F(1), F(0), F(0), F(0)),
            (F(0), F(1), F(0), F(0)),
            (F(0), F(0), F(1), F(0)),
        ),
    )


class TestMembership:
    def test_second_level_breaks_first_level_ties(self):
        assert lex_member(FAIR_THEN_HEADS, Gamble.on(S1, [1, -1]))
        assert not lex_member(FAIR_THEN_HEADS, Gamble.on(S1, [-1, 1]))

    def test_zero_rejected(self):
        assert not lex_member(FAIR_THEN_HEADS, Gamble.zero(S1))

    def test_expectation_vector_drives_membership(self):
        f = Gamble.on(S1, [1, -1])
        assert expectation_vector(FAIR_THEN_HEADS, f) == (F(0), F(1))

    def test_scope_mismatch_rejected(self):
        with pytest.raises(ScopeError):
            expectation_vector(FAIR_THEN_HEADS, Gamble.on(S2, [1, 0]))


class TestMaximality:
    def test_two_independent_levels_span_binary(self):
        assert lex_is_maximal(FAIR_THEN_HEADS)

    def test_single_level_leaves_a_blind_direction(self):
        assert not lex_is_maximal(LexSystem(S1, (UNIFORM2,)))

    def test_refined_joint_spans_the_four_point_space(self):
        assert lex_is_maximal(refined_joint())

    def test_coherence_requires_support_coverage(self):
        assert lex_is_coherent(LexSystem(S1, (UNIFORM2,)))
        assert not lex_is_coherent(LexSystem(S1, ((F(1), F(0)),)))

    def test_dichotomy_for_maximal_systems(self):
        rng = random.Random("dichotomy")
        for i in range(12):
            system = random_maximal_binary_lex(rng, S1)
            for f in gamble_grid(S1, lo=-2, hi=2):
                if f.is_zero():
                    continue
                assert lex_member(system, f) != lex_member(system, -f), (
                    "i=%d f=%s" % (i, f.values)
                )

    def test_maximal_prices_are_linear(self):
        rng = random.Random("linear-prices")
        for i in range(8):
            system = random_maximal_binary_lex(rng, S1)
            for f in sample_gambles(S1, budget=10, seed=i):
                assert lower_prevision(system, f) == upper_prevision(system, f)


class TestCanonicalForm:
    def test_averaging_a_later_level_changes_nothing(self):
        p2 = (F(1), F(0))
        mixed = tuple(
            (a + b) / 2 for a, b in zip(UNIFORM2, p2)
        )
        other = LexSystem(S1, (UNIFORM2, mixed))
        assert lex_equal(FAIR_THEN_HEADS, other)
        for f in gamble_grid(S1, lo=-2, hi=2):
            assert lex_member(FAIR_THEN_HEADS, f) == lex_member(other, f)

    def test_dependent_levels_are_dropped(self):
        p2 = (F(1), F(0))
        dependent = tuple(
            (a + 2 * b) / 3 for a, b in zip(UNIFORM2, p2)
        )
        extended = LexSystem(S1, (UNIFORM2, p2, dependent))
        assert lex_canonical(extended) == lex_canonical(FAIR_THEN_HEADS)
        assert lex_equal(extended, FAIR_THEN_HEADS)

    def test_different_orientations_differ(self):
        flipped = LexSystem(S1, (UNIFORM2, (F(0), F(1))))
        assert not lex_equal(FAIR_THEN_HEADS, flipped)


class TestConditioning:
    def test_refined_joint_conditions_to_the_binary_factor(self):
        for piece, j in ((S1, 0), (S1, 1), (S2, 0), (S2, 1)):
            cond = lex_condition(refined_joint(), piece.assignment_at(j))
            assert lex_equal(
                cond, LexSystem(cond.scope, (UNIFORM2, (F(1), F(0))))
            )

    def test_empty_observation_is_identity(self):
        from desirability import Assignment

        assert (
            lex_condition(FAIR_THEN_HEADS, Assignment.empty()) == FAIR_THEN_HEADS
        )

    def test_membership_biconditional(self):
        system = refined_joint()
        given = S1.assignment_at(1)
        cond = lex_condition(system, given)
        mask = indicator(given, S12)
        for g in gamble_grid(S2, lo=-2, hi=2):
            assert lex_member(cond, g) == lex_member(system, mask * g.embed(S12))

    def test_conditioning_on_a_null_event_fails_loudly(self):
        point = LexSystem(S12, ((F(1), F(0), F(0), F(0)),))
        with pytest.raises(DegenerateConditioningError):
            lex_condition(point, S1.assignment_at(1))


class TestNonmaximalityWitness:
    def test_interior_pair(self):
        m1 = LexSystem(S1, ((F(1, 3), F(2, 3)), (F(1), F(0))))
        m2 = LexSystem(S2, ((F(2, 5), F(3, 5)), (F(0), F(1))))
        w = nonmaximality_witness(m1, m2)
        prod = independent_product([m1, m2])
        assert inex_member(prod, w) is Tri.OUT
        assert inex_member(prod, -w) is Tri.OUT

    def test_one_degenerate_factor(self):
        m1 = LexSystem(S1, ((F(1), F(0)), (F(0), F(1))))
        m2 = LexSystem(S2, ((F(2, 5), F(3, 5)), (F(1), F(0))))
        w = nonmaximality_witness(m1, m2)
        prod = independent_product([m1, m2])
        assert inex_member(prod, w) is Tri.OUT
        assert inex_member(prod, -w) is Tri.OUT

    def test_both_degenerate_factors_yield_off_diagonal_pattern(self):
        m1 = LexSystem(S1, ((F(1), F(0)), (F(0), F(1))))
        m2 = LexSystem(S2, ((F(1), F(0)), (F(0), F(1))))
        w = nonmaximality_witness(m1, m2)
        assert w.values[0] == 0 and w.values[3] == 0
        assert w.values[1] == -w.values[2] != 0

    def test_rejects_nonmaximal_input(self):
        other = LexSystem(S2, (UNIFORM2, (F(1), F(0))))
        with pytest.raises(ValueError):
            nonmaximality_witness(LexSystem(S1, (UNIFORM2,)), other)

    def test_rejects_nonbinary_scopes(self):
        wide = Variable("W", ("x", "y", "z"))
        sw = Scope.of([wide])
        uniform3 = (F(1, 3), F(1, 3), F(1, 3))
        m = LexSystem(
            sw, (uniform3, (F(1), F(0), F(0)), (F(0), F(1), F(0)))
        )
        with pytest.raises(ScopeError):
            nonmaximality_witness(m, FAIR_THEN_HEADS)


class TestMaximalProductCheck:
    def test_refined_joint_is_a_product(self):
        assert maximal_product_check(refined_joint())

    def test_slice_dependent_refinement_is_not(self):
        skewed = LexSystem(
            S12,
            (
                (F(1, 4), F(1, 4), F(1, 4), F(1, 4)),
                (F(0), F(1), F(0), F(0)),
                (F(1), F(0), F(0), F(0)),
                (F(0), F(0), F(1), F(0)),
            ),
        )
        assert lex_is_maximal(skewed)
        assert not maximal_product_check(skewed)
