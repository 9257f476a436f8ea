"""Cesàro means, limit estimates, and the generalized-limit axioms."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uflab import banach as bn
from uflab.errors import ValidationError

ALTERNATING = bn.SequenceWindow([0, 1, 0, 1], bn.Tail.periodic([0, 1]))
ONES = bn.SequenceWindow([1, 1, 1], bn.Tail.constant(1))


class TestSequenceWindow:
    def test_value_at_window_and_tail(self):
        x = bn.SequenceWindow([5, 6], bn.Tail.periodic([1, 2, 3]))
        assert [x.value_at(n) for n in range(1, 9)] == [5, 6, 1, 2, 3, 1, 2, 3]

    def test_beyond_window_needs_tail(self):
        x = bn.SequenceWindow([1, 2, 3])
        with pytest.raises(ValidationError):
            x.value_at(4)

    def test_json(self):
        doc = {"window": [0, 1, 0, 1], "tail": {"kind": "periodic", "pattern": [0, 1]}}
        x = bn.SequenceWindow.from_json_dict(doc)
        assert x.values == (0, 1, 0, 1)
        assert x.tail.pattern == (0, 1)
        y = bn.SequenceWindow.from_json_dict({"window": ["1/3", 2]})
        assert y.values == (Fraction(1, 3), 2)

    def test_shift(self):
        s = bn.shift(ALTERNATING)
        assert [s.value_at(n) for n in range(1, 5)] == [1, 0, 1, 0]
        assert s.tail.pattern == (1, 0)


class TestCesaro:
    def test_constant(self):
        means = bn.cesaro(ONES)
        assert means.means == (1, 1, 1)
        assert means.analytic_limit == 1

    def test_alternating_analytic_half(self):
        means = bn.cesaro(ALTERNATING)
        assert means.analytic_limit == Fraction(1, 2)
        assert means.means == (0, Fraction(1, 2), Fraction(1, 3), Fraction(1, 2))

    def test_window_only_has_no_analytic_limit(self):
        assert bn.cesaro(bn.SequenceWindow(list(range(1, 9)))).analytic_limit is None

    @given(st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=20))
    @settings(max_examples=200)
    def test_means_stay_within_window_bounds(self, values):
        means = bn.cesaro(bn.SequenceWindow(values)).means
        assert all(min(values) <= t <= max(values) for t in means)


class TestLimitEstimate:
    def test_alternating(self):
        est = bn.generalized_limit_estimate(ALTERNATING)
        assert est.status == "converged"
        assert est.value == Fraction(1, 2)
        assert est.tolerance == 0
        assert est.liminf_est == 0 and est.limsup_est == 1

    def test_growing_window_diverges(self):
        est = bn.generalized_limit_estimate(bn.SequenceWindow(list(range(1, 21))))
        assert est.status == "diverged" and est.value is None

    def test_oscillating_density_undetermined(self):
        seq, bit, run = [], 0, 1
        while len(seq) < 64:
            seq.extend([bit] * run)
            bit ^= 1
            run += 1
        est = bn.generalized_limit_estimate(bn.SequenceWindow(seq[:64]))
        assert est.status == "undetermined"
        assert est.value is None
        assert est.liminf_est < est.limsup_est

    def test_numeric_convergence_within_window(self):
        x = bn.SequenceWindow([Fraction(1, 2)] * 400)
        est = bn.generalized_limit_estimate(x)
        assert est.status == "converged" and est.value == Fraction(1, 2)

    @given(st.lists(st.integers(min_value=-5, max_value=5), min_size=4, max_size=30))
    @settings(max_examples=200)
    def test_estimates_bracket_and_stay_in_range(self, values):
        est = bn.generalized_limit_estimate(bn.SequenceWindow(values))
        assert est.liminf_est <= est.limsup_est
        assert min(values) <= est.liminf_est and est.limsup_est <= max(values)


class TestAxioms:
    def test_full_report(self):
        decay = bn.SequenceWindow(
            [Fraction(1, n) for n in range(1, 11)], bn.Tail.constant(0)
        )
        period3 = bn.SequenceWindow([2, 0, 1], bn.Tail.periodic([2, 0, 1]))
        report = bn.banach_axioms_check([ALTERNATING, ONES, decay, period3])
        assert report.all_pass
        assert {c.name for c in report.checks} == {
            "linearity",
            "positivity",
            "shift_invariance",
            "normalization",
            "baire_sandwich",
        }

    def test_shift_preserves_alternating_limit(self):
        est = bn.generalized_limit_estimate(bn.shift(ALTERNATING))
        assert est.value == Fraction(1, 2)

    def test_nonconvergent_input_rejected(self):
        growing = bn.SequenceWindow(list(range(1, 21)))
        with pytest.raises(ValidationError):
            bn.banach_axioms_check([growing])

    def test_positivity_on_decaying_window(self):
        decay = bn.SequenceWindow(
            [Fraction(1, n) for n in range(1, 11)], bn.Tail.constant(0)
        )
        est = bn.generalized_limit_estimate(decay)
        assert est.value == 0
        report = bn.banach_axioms_check([decay])
        assert report.all_pass

    def test_linearity_is_exact_for_rational_tails(self):
        combined = bn._combine(Fraction(2), ALTERNATING, Fraction(-3), ONES)
        est = bn.generalized_limit_estimate(combined)
        assert est.value == 2 * Fraction(1, 2) - 3 * 1
