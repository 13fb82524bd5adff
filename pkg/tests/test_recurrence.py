import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anacci.errors import AllZeroInit, NoConvergence, NonPositiveInput
from anacci.recurrence import (
    RecurrenceSpec,
    canonical_init,
    generate,
    horadam_check,
    ratio_limit,
)
from anacci.solver import solve_lambda


class TestSpec:
    def test_rejects_all_zero_init(self):
        with pytest.raises(AllZeroInit):
            RecurrenceSpec(p=1, n=2, init=(0, 0))

    def test_rejects_wrong_init_length(self):
        with pytest.raises(ValueError):
            RecurrenceSpec(p=1, n=3, init=(0, 1))

    def test_rejects_nonpositive_weight(self):
        with pytest.raises(NonPositiveInput):
            RecurrenceSpec(p=0, n=2, init=(0, 1))

    def test_exact_detection(self):
        assert RecurrenceSpec(p=1, n=2, init=(0, 1)).exact
        assert RecurrenceSpec(p=Fraction(1, 2), n=1, init=(1,)).exact
        assert not RecurrenceSpec(p=1.5, n=1, init=(1,)).exact


class TestCanonicalInit:
    def test_shapes(self):
        assert canonical_init(1) == (1,)
        assert canonical_init(2) == (0, 1)
        assert canonical_init(4) == (0, 0, 0, 1)


class TestGenerate:
    def test_fibonacci(self):
        spec = RecurrenceSpec(p=1, n=2, init=(0, 1))
        assert generate(spec, 8) == [0, 1, 1, 2, 3, 5, 8, 13]

    def test_weight_two(self):
        spec = RecurrenceSpec(p=2, n=2, init=(0, 1))
        assert generate(spec, 6) == [0, 1, 2, 6, 16, 44]

    def test_tribonacci(self):
        spec = RecurrenceSpec(p=1, n=3, init=(0, 0, 1))
        assert generate(spec, 7) == [0, 0, 1, 1, 2, 4, 7]

    def test_integer_closure(self):
        spec = RecurrenceSpec(p=3, n=4, init=(2, 0, -1, 5))
        terms = generate(spec, 40)
        assert all(isinstance(t, int) for t in terms)

    def test_rational_arithmetic(self):
        spec = RecurrenceSpec(p=Fraction(1, 2), n=2, init=(0, 1))
        terms = generate(spec, 6)
        assert terms == [0, 1, Fraction(1, 2), Fraction(3, 4), Fraction(5, 8), Fraction(11, 16)]

    def test_count_must_cover_init(self):
        with pytest.raises(ValueError):
            generate(RecurrenceSpec(p=1, n=3, init=(0, 0, 1)), 2)

    def test_float_agrees_with_exact(self):
        for p in (1, 2, 3):
            exact = generate(RecurrenceSpec(p=p, n=3, init=(0, 0, 1)), 50)
            approx = generate(RecurrenceSpec(p=float(p), n=3, init=(0.0, 0.0, 1.0)), 50)
            for e, f in zip(exact, approx):
                assert f == pytest.approx(float(e), rel=1e-12)

    def test_float_window_does_not_drift(self):
        # 200 steps crosses several resync points
        exact = generate(RecurrenceSpec(p=1, n=2, init=(0, 1)), 200)
        approx = generate(RecurrenceSpec(p=1.0, n=2, init=(0.0, 1.0)), 200)
        for e, f in zip(exact, approx):
            assert f == pytest.approx(float(e), rel=1e-12)


class TestRatioLimit:
    def test_fibonacci_reaches_golden_ratio(self):
        spec = RecurrenceSpec(p=1, n=2, init=(0, 1))
        estimate = ratio_limit(spec, 1e-12)
        assert estimate.converged
        assert estimate.k0 == 0
        assert estimate.value == pytest.approx(solve_lambda(1, 2).value, abs=1e-11)

    def test_weight_two(self):
        spec = RecurrenceSpec(p=2, n=2, init=(0, 1))
        estimate = ratio_limit(spec, 1e-12)
        assert estimate.value == pytest.approx(1.0 + math.sqrt(3.0), abs=1e-11)

    def test_constant_sequence_converges_at_zero_tol(self):
        estimate = ratio_limit(RecurrenceSpec(p=1, n=1, init=(5,)), 0.0)
        assert estimate.converged
        assert estimate.value == 1.0
        assert estimate.k0 == -1

    def test_zero_term_mid_sequence_resets_and_records_k0(self):
        # 1, -1, 0, -1, -1, -2, ... has its last zero at index 2
        spec = RecurrenceSpec(p=1, n=2, init=(1, -1))
        estimate = ratio_limit(spec, 1e-12)
        assert estimate.k0 == 2
        assert estimate.value == pytest.approx(solve_lambda(1, 2).value, abs=1e-10)

    def test_matches_solver_over_small_lattice(self):
        for m in range(1, 6):
            for n in range(1, 7):
                spec = RecurrenceSpec(p=m, n=n, init=canonical_init(n))
                estimate = ratio_limit(spec, 1e-12, 500)
                assert estimate.value == pytest.approx(
                    solve_lambda(m, n).value, abs=1e-10
                ), (m, n)

    def test_long_run_renormalization_survives_overflow(self):
        # growth ~6^k overflows doubles near k = 397 without rescaling
        spec = RecurrenceSpec(p=5.0, n=6, init=tuple(map(float, canonical_init(6))))
        estimate = ratio_limit(spec, 0.0, 500)
        assert math.isfinite(estimate.value)
        assert estimate.k_used > 64  # crossed at least one renormalization
        assert estimate.value == pytest.approx(solve_lambda(5, 6).value, abs=1e-9)

    def test_budget_exhaustion_raises(self):
        spec = RecurrenceSpec(p=1, n=2, init=(0, 1))
        with pytest.raises(NoConvergence):
            ratio_limit(spec, 0.0, 12)

    def test_max_terms_precondition(self):
        with pytest.raises(ValueError):
            ratio_limit(RecurrenceSpec(p=1, n=4, init=canonical_init(4)), 1e-9, 6)

    @given(scale=st.one_of(
        st.integers(min_value=1, max_value=1000),
        st.integers(min_value=-1000, max_value=-1),
    ))
    @settings(max_examples=40, deadline=None)
    def test_scale_invariance(self, scale):
        base = ratio_limit(RecurrenceSpec(p=1, n=3, init=(0, 0, 1)), 1e-12)
        scaled = ratio_limit(
            RecurrenceSpec(p=1, n=3, init=(0, 0, scale)), 1e-12
        )
        assert scaled.value == pytest.approx(base.value, rel=1e-12)
        assert scaled.k0 == base.k0


class TestHoradam:
    def test_examples(self):
        assert horadam_check(2, 0, 1, 6) == [0, 1, 2, 6, 16, 44]
        assert horadam_check(1, 0, 1, 6) == [0, 1, 1, 2, 3, 5]
        assert horadam_check(3, 1, 1, 5) == [1, 1, 6, 21, 81]

    def test_integer_arithmetic(self):
        terms = horadam_check(7, 2, -3, 30)
        assert all(isinstance(t, int) for t in terms)

    def test_count_precondition(self):
        with pytest.raises(ValueError):
            horadam_check(2, 0, 1, 1)

    def test_weight_precondition(self):
        with pytest.raises(NonPositiveInput):
            horadam_check(0, 0, 1, 4)
