"""Weight-sequence kernel: terms, closed-form tails, refinement sums."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohrad import (BUILTIN_PHI, EVEN_ONLY, MONOMIAL, ODD_ONLY,
                    WEIGHTED_LINEAR, WEIGHTED_QUADRATIC, CoeffSeries,
                    PhiSequence, SeriesEvalConfig, phi_tail, phi_term,
                    refined_sum)
from bohrad.errors import ConfigurationError, DomainError, NonConvergenceError

# independent term formulas for the partial-sum oracle
ORACLE_TERMS = {
    "monomial": lambda n, r: r**n,
    "weighted_linear": lambda n, r: (n + 1) * r**n,
    "weighted_quadratic": lambda n, r: 1.0 if n == 0 else n * n * r**n,
    "even_only": lambda n, r: r**n if n % 2 == 0 else 0.0,
    "odd_only": lambda n, r: 1.0 if n == 0 else (r**n if n % 2 == 1 else 0.0),
}


def oracle_tail(kind, N, r, terms=800):
    f = ORACLE_TERMS[kind]
    return math.fsum(f(n, r) for n in range(N, N + terms))


class TestPhiTerm:
    def test_monomial(self):
        assert phi_term(MONOMIAL, 3, 0.5) == 0.125

    def test_weighted_linear(self):
        assert phi_term(WEIGHTED_LINEAR, 2, 0.5) == 0.75

    def test_even_only_odd_terms_vanish(self):
        assert phi_term(EVEN_ONLY, 3, 0.9) == 0.0

    def test_odd_only_head(self):
        assert phi_term(ODD_ONLY, 0, 0.7) == 1.0
        assert phi_term(ODD_ONLY, 2, 0.7) == 0.0
        assert phi_term(ODD_ONLY, 3, 0.5) == 0.125

    def test_weighted_quadratic_head(self):
        assert phi_term(WEIGHTED_QUADRATIC, 0, 0.3) == 1.0
        assert phi_term(WEIGHTED_QUADRATIC, 3, 0.5) == 9 * 0.125

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            phi_term(MONOMIAL, 2, 1.0)
        with pytest.raises(DomainError):
            phi_term(MONOMIAL, -1, 0.5)

    def test_custom_without_term_is_rejected(self):
        with pytest.raises(ConfigurationError):
            PhiSequence("custom")

    def test_unknown_kind_rejected(self):
        with pytest.raises(ConfigurationError):
            PhiSequence("fibonacci")


class TestPhiTail:
    def test_monomial_geometric(self):
        assert phi_tail(MONOMIAL, 1, 0.5) == pytest.approx(1.0, abs=1e-15)

    def test_weighted_linear_matches_partial_sum_oracle(self):
        # oracle to n = 200 pins the closed form r(2-r)/(1-r)^2
        expected = math.fsum((n + 1) * 0.5**n for n in range(1, 201))
        assert expected == pytest.approx(3.0, abs=1e-12)
        assert phi_tail(WEIGHTED_LINEAR, 1, 0.5) == pytest.approx(expected, abs=1e-12)

    def test_weighted_quadratic_matches_partial_sum_oracle(self):
        expected = math.fsum(n * n * 0.5**n for n in range(1, 201))
        assert expected == pytest.approx(6.0, abs=1e-12)
        assert phi_tail(WEIGHTED_QUADRATIC, 1, 0.5) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("kind", list(ORACLE_TERMS))
    @pytest.mark.parametrize("N", range(7))
    def test_closed_forms_match_oracle_on_grid(self, kind, N):
        phi = BUILTIN_PHI[kind]
        for k in range(19):  # r = 0, 0.05, ..., 0.90
            r = 0.05 * k
            got = phi_tail(phi, N, r)
            want = oracle_tail(kind, N, r)
            # tolerance scales with the tail: doubles cannot carry an
            # absolute 1e-12 on values of size 1e3
            assert abs(got - want) <= 1e-12 * max(1.0, abs(want))

    @pytest.mark.parametrize("kind", list(ORACLE_TERMS))
    @pytest.mark.parametrize("N", range(7))
    def test_telescoping(self, kind, N):
        phi = BUILTIN_PHI[kind]
        for k in range(19):
            r = 0.05 * k
            lhs = phi_tail(phi, N, r) - phi_tail(phi, N + 1, r)
            want = phi_term(phi, N, r)
            assert abs(lhs - want) <= 1e-12 * max(1.0, phi_tail(phi, N, r))

    @pytest.mark.parametrize("kind", list(ORACLE_TERMS))
    def test_tail_nondecreasing_in_r(self, kind):
        phi = BUILTIN_PHI[kind]
        for N in range(5):
            values = [phi_tail(phi, N, 0.05 * k) for k in range(20)]  # up to 0.95
            assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))

    def test_custom_matching_monomial(self):
        custom = PhiSequence("custom", custom_term=lambda n, r: r**n)
        for r in (0.0, 0.3, 0.6, 0.9):
            assert custom and abs(phi_tail(custom, 2, r) - phi_tail(MONOMIAL, 2, r)) <= 1e-12

    def test_custom_closed_tail_takes_precedence(self):
        custom = PhiSequence("custom", custom_term=lambda n, r: r**n,
                             custom_tail=lambda N, r: r**N / (1 - r))
        assert phi_tail(custom, 3, 0.5) == 0.5**3 / 0.5

    def test_non_convergent_custom_raises(self):
        slow = PhiSequence("custom", custom_term=lambda n, r: 1.0 / (n + 1.0))
        with pytest.raises(NonConvergenceError):
            phi_tail(slow, 0, 0.5)

    def test_ratio_above_cap_raises(self):
        nearly_flat = PhiSequence("custom", custom_term=lambda n, r: 0.995**n)
        with pytest.raises(NonConvergenceError):
            phi_tail(nearly_flat, 0, 0.5)


class TestRefinedSum:
    def test_zero_series(self):
        zero = CoeffSeries((0.0, 0.0, 0.0))
        assert refined_sum(zero, MONOMIAL, 0, 0.3) == 0.0

    def test_single_coefficient_example(self):
        # ||A_1|| = 1/2, monomial weights, m = 0, r = 1/2:
        # 0.25 * (r^2 / (1 + 0) + r^3 / (1 - r)) = 0.25 * (0.25 + 0.25)
        coeffs = CoeffSeries((0.0, 0.5))
        assert refined_sum(coeffs, MONOMIAL, 0, 0.5) == pytest.approx(0.125, abs=1e-15)
        # exponents 2 and 2n coincide at n = 1
        assert refined_sum(coeffs, MONOMIAL, 0, 0.5, "two_n") == \
            pytest.approx(0.125, abs=1e-15)

    def test_direct_sum_oracle(self):
        coeffs = CoeffSeries((0.0, 0.5, 0.25, 0.75))
        r = 0.4
        want = math.fsum(
            coeffs.norm(n) ** 2 * (r ** (2 * n) / (1 + coeffs.norm(0))
                                   + r ** (2 * n + 1) / (1 - r))
            for n in range(1, 4))
        assert refined_sum(coeffs, MONOMIAL, 0, r) == pytest.approx(want, rel=1e-14)

    def test_bad_mode_rejected(self):
        with pytest.raises(ConfigurationError):
            refined_sum(CoeffSeries((0.0, 0.5)), MONOMIAL, 0, 0.5, "cubed")

    def test_out_of_range_radius(self):
        with pytest.raises(DomainError):
            refined_sum(CoeffSeries((0.0, 0.5)), MONOMIAL, 0, 1.0)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=8),
           st.floats(0.0, 0.9))
    def test_square_mode_dominates_two_n_for_unit_norms(self, norms, r):
        coeffs = CoeffSeries(tuple([0.0] + norms))
        sq = refined_sum(coeffs, MONOMIAL, 0, r)
        tn = refined_sum(coeffs, MONOMIAL, 0, r, "two_n")
        assert sq >= tn - 1e-12


class TestSeriesEvalConfig:
    def test_validation(self):
        with pytest.raises(ConfigurationError):
            SeriesEvalConfig(truncation_n=1)
        with pytest.raises(ConfigurationError):
            SeriesEvalConfig(tail_ratio_cap=1.5)
        with pytest.raises(ConfigurationError):
            SeriesEvalConfig(abs_tol=0.0)
