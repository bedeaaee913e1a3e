"""Possibility spaces, assignments, and exact-rational gambles."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from desirability import (
    Assignment,
    DimensionMismatchError,
    ExactnessError,
    Gamble,
    OutcomeError,
    Scope,
    ScopeError,
    Variable,
    as_rational,
    format_rational,
    indicator,
)

A = Variable("A", ("x", "y"))
B = Variable("B", ("u", "v", "w"))
SA = Scope.of([A])
SB = Scope.of([B])
SAB = SA.union(SB)

ints = st.integers(min_value=-9, max_value=9)


class TestRationals:
    def test_accepts_integers_strings_and_fractions(self):
        assert as_rational(3) == Fraction(3)
        assert as_rational("-5/7") == Fraction(-5, 7)
        assert as_rational("4") == Fraction(4)
        assert as_rational(Fraction(2, 6)) == Fraction(1, 3)

    def test_rejects_floats(self):
        with pytest.raises(ExactnessError):
            as_rational(0.5)
        with pytest.raises(ExactnessError):
            as_rational("0.5")

    def test_format_round_trip(self):
        for value in (Fraction(0), Fraction(-3), Fraction(22, 7)):
            assert as_rational(format_rational(value)) == value


class TestScope:
    def test_variables_sorted_by_name(self):
        assert Scope.of([B, A]).names == ("A", "B")

    def test_size_is_product_of_outcome_counts(self):
        assert SAB.size == 6
        assert Scope.empty().size == 1

    def test_conflicting_redeclaration_rejected(self):
        clash = Variable("A", ("x", "z"))
        with pytest.raises(ScopeError):
            Scope.of([A, clash])

    def test_set_algebra(self):
        assert SAB.difference(SA) == SB
        assert SAB.intersection(SA) == SA
        assert SA.isdisjoint(SB)
        assert SA.issubset(SAB)
        assert not SAB.issubset(SA)

    def test_assignment_enumeration_is_indexable(self):
        seen = []
        for i in range(SAB.size):
            at = SAB.assignment_at(i)
            assert SAB.index_of(at) == i
            seen.append(str(at))
        assert len(set(seen)) == SAB.size

    def test_enumeration_order_varies_last_variable_fastest(self):
        labels = [str(SAB.assignment_at(i)) for i in range(3)]
        assert labels == ["A=x,B=u", "A=x,B=v", "A=x,B=w"]

    def test_unknown_outcome_rejected(self):
        with pytest.raises(OutcomeError):
            Assignment.of({A: "nope"})


class TestAssignment:
    def test_string_form(self):
        at = Assignment.of({A: "x", B: "v"})
        assert str(at) == "A=x,B=v"
        assert str(Assignment.empty()) == "()"

    def test_union_rejects_conflicts(self):
        with pytest.raises(ScopeError):
            Assignment.of({A: "x"}).union(Assignment.of({A: "y"}))

    def test_restrict_keeps_named_variables(self):
        at = Assignment.of({A: "x", B: "v"})
        assert at.restrict(SA) == Assignment.of({A: "x"})

    def test_indicator_is_one_exactly_on_the_event(self):
        at = Assignment.of({A: "x"})
        mask = indicator(at, SAB)
        for i in range(SAB.size):
            expected = 1 if SAB.assignment_at(i).restrict(SA) == at else 0
            assert mask.values[i] == expected


class TestGamble:
    def test_dimension_mismatch_rejected(self):
        with pytest.raises(DimensionMismatchError):
            Gamble.on(SA, [1, 2, 3])

    def test_float_values_rejected(self):
        with pytest.raises(ExactnessError):
            Gamble.on(SA, [0.5, 1])

    @given(st.lists(ints, min_size=2, max_size=2), st.lists(ints, min_size=2, max_size=2))
    def test_pointwise_algebra(self, left, right):
        f = Gamble.on(SA, left)
        g = Gamble.on(SA, right)
        assert (f + g).values == tuple(a + b for a, b in zip(f.values, g.values))
        assert (f - g).values == tuple(a - b for a, b in zip(f.values, g.values))
        assert (-f).values == tuple(-a for a in f.values)
        assert (f * Fraction(1, 2)).values == tuple(a / 2 for a in f.values)
        assert f.shift(3).values == tuple(a + 3 for a in f.values)

    @given(st.lists(ints, min_size=2, max_size=2))
    def test_sign_predicates(self, values):
        f = Gamble.on(SA, values)
        assert f.is_zero() == all(v == 0 for v in values)
        assert f.is_positive() == (
            all(v >= 0 for v in values) and any(v > 0 for v in values)
        )
        assert f.is_nonpositive() == all(v <= 0 for v in values)

    @given(st.lists(ints, min_size=2, max_size=2))
    def test_embed_then_slice_is_identity(self, values):
        f = Gamble.on(SA, values)
        lifted = f.embed(SAB)
        for j in range(SB.size):
            at = SB.assignment_at(j)
            assert lifted.slice_at(at).values == f.values

    @given(st.lists(ints, min_size=6, max_size=6))
    def test_masking_keeps_only_the_event_slice(self, values):
        f = Gamble.on(SAB, values)
        at = Assignment.of({A: "y"})
        mask = indicator(at, SAB)
        sliced = f.slice_at(at).embed(SAB)
        assert (mask * f).values == (mask * sliced).values

    @given(st.lists(ints, min_size=6, max_size=6))
    def test_flatness_detection(self, values):
        f = Gamble.on(SAB, values)
        flat, reduced = f.depends_only_on(SA)
        by_slice = [f.slice_at(SA.assignment_at(i)) for i in range(SA.size)]
        constant_slices = all(
            len(set(s.values)) == 1 for s in by_slice
        )
        assert flat == constant_slices
        if flat:
            assert reduced.scope == SA
            assert reduced.embed(SAB).values == f.values

    def test_dot_product(self):
        f = Gamble.on(SA, [3, -2])
        assert f.dot((Fraction(1, 2), Fraction(1, 2))) == Fraction(1, 2)
