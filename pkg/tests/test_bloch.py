"""Hyperbolic densities, circle integrals, and Bloch radii."""

import math

import pytest

from bohrad import (CoeffSeries, HyperbolicDensity, bloch_majorant_check,
                    bloch_radius, bloch_radius_gamma, bloch_refined_radius,
                    count_sign_changes, m_integral)
from bohrad.bloch import (MAJORANT_THRESHOLD, REFINED_THRESHOLD, BlochParams,
                          gamma_equation_value)
from bohrad.errors import (DomainError, InvalidTestFunctionError, NoRootError,
                           SingularIntegrandError)

DISK = HyperbolicDensity.unit_disk()


def bisect(f, lo, hi, iters=200):
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if flo * f(mid) <= 0:
            hi = mid
        else:
            lo = mid
            flo = f(lo)
    return 0.5 * (lo + hi)


class TestCircleIntegral:
    def test_disk_closed_form(self):
        # nu = 1/2: M(r) = r^2/(1 - r^2) = 1/3 at r = 1/2
        assert m_integral(DISK, 0.5, 0.5) == pytest.approx(1.0 / 3.0, abs=1e-15)

    def test_quadrature_matches_closed_form(self):
        for r in (0.2, 0.5, 0.8):
            for nu in (0.25, 0.5, 1.0):
                closed = m_integral(DISK, nu, r)
                quad = m_integral(DISK, nu, r, force_quadrature=True)
                assert abs(closed - quad) <= 1e-9

    def test_gamma_zero_reduces_to_disk(self):
        dens = HyperbolicDensity.omega_gamma(0.0)
        for r in (0.3, 0.6, 0.9):
            assert abs(m_integral(dens, 0.5, r) - m_integral(DISK, 0.5, r)) <= 1e-10

    def test_vanishes_at_origin(self):
        for dens in (DISK, HyperbolicDensity.omega_gamma(0.4)):
            assert m_integral(dens, 0.5, 0.0) == 0.0
            assert m_integral(dens, 0.5, 1e-6) <= 2e-12

    def test_custom_density_quadrature(self):
        dens = HyperbolicDensity.custom(lambda z: 1.0 / (1.0 - abs(z) ** 2))
        for r in (0.3, 0.7):
            assert abs(m_integral(dens, 0.5, r) - m_integral(DISK, 0.5, r)) <= 1e-9

    def test_against_adaptive_quadrature_oracle(self):
        from scipy.integrate import quad

        gamma, r = 0.5, 0.7
        dens = HyperbolicDensity.omega_gamma(gamma)
        for nu in (0.25, 0.5, 1.0):
            def integrand(t):
                w_sq = ((1 - gamma) ** 2 * r * r + gamma * gamma
                        + 2 * gamma * (1 - gamma) * r * math.cos(t))
                return ((1 - gamma) / (1 - w_sq)) ** (2 * nu)

            oracle, err = quad(integrand, 0.0, 2.0 * math.pi, limit=400,
                               epsabs=1e-12, epsrel=1e-12)
            oracle *= r * r / (2.0 * math.pi)
            assert err < 1e-8
            assert m_integral(dens, nu, r) == pytest.approx(oracle, abs=1e-9)

    def test_singular_custom_density(self):
        dens = HyperbolicDensity.custom(lambda z: 1.0 / (0.5 - abs(z)))
        with pytest.raises(SingularIntegrandError):
            m_integral(dens, 0.5, 0.7)

    def test_domain_checks(self):
        with pytest.raises(DomainError):
            m_integral(DISK, 0.5, 1.0)
        with pytest.raises(DomainError):
            m_integral(DISK, 1.5, 0.5)


class TestBaselConstant:
    def test_threshold_literal_from_partial_sum(self):
        # bracket sum(1/s^2) by a 1e5-term partial sum plus integral
        # tail bounds; the literal 6/pi^2 must be its reciprocal
        S = 100_000
        partial = math.fsum(1.0 / (s * s) for s in range(1, S + 1))
        lower = partial + 1.0 / (S + 1)
        upper = partial + 1.0 / S
        assert upper - lower <= 1e-10
        target = 1.0 / MAJORANT_THRESHOLD
        assert lower - 1e-12 <= target <= upper + 1e-12


class TestMajorantRadius:
    def test_disk_half_nu_closed_form(self):
        want = math.sqrt(6.0 / (6.0 + math.pi**2))
        got = bloch_radius(DISK, 0.5).value
        assert abs(got - want) <= 1e-8

    def test_disk_quarter_nu_against_bisection_oracle(self):
        # closed form M(r) = r^2 (1 - r^2)^{-1/2}; solve by bisection
        oracle = bisect(lambda r: r * r / (1 - r * r) ** 0.5 - MAJORANT_THRESHOLD,
                        1e-9, 1 - 1e-9)
        got = bloch_radius(DISK, 0.25).value
        assert abs(got - oracle) <= 1e-8

    def test_gamma_zero_density_matches_disk(self):
        got = bloch_radius(HyperbolicDensity.omega_gamma(0.0), 0.5).value
        want = bloch_radius(DISK, 0.5).value
        assert abs(got - want) <= 1e-8

    def test_no_root_for_bounded_density(self):
        flat = HyperbolicDensity.custom(lambda z: 0.1)
        with pytest.raises(NoRootError):
            bloch_radius(flat, 1.0)


class TestGammaRadius:
    def test_gamma_zero_equals_disk_closed_form(self):
        want = math.sqrt(6.0 / (6.0 + math.pi**2))
        got = bloch_radius_gamma(0.0, 0.5).value
        assert abs(got - want) <= 1e-8

    def test_root_is_bracketed_by_sign_change(self):
        result = bloch_radius_gamma(0.5, 0.5)
        lo, hi = result.bracket
        assert gamma_equation_value(0.5, 0.5, lo) * gamma_equation_value(0.5, 0.5, hi) <= 0

    def test_endpoint_signs(self):
        for gamma in (0.0, 0.3, 0.7):
            assert gamma_equation_value(gamma, 0.5, 0.0) < 0
            assert gamma_equation_value(gamma, 0.5, 1.0) > 0

    def test_increasing_in_gamma(self):
        # enlarging the domain shrinks the hyperbolic density, which
        # relaxes the derivative bound and grows the radius; verified
        # against the quadratic closed form at nu = 1/2:
        # (1-g) r^2 pi^2 = 6 (1 - ((1-g) r + g)^2)
        def quadratic_oracle(g):
            A = (1 - g) * math.pi**2 + 6 * (1 - g) ** 2
            B = 12 * g * (1 - g)
            C = 6 * (g * g - 1)
            return (-B + math.sqrt(B * B - 4 * A * C)) / (2 * A)

        values = [bloch_radius_gamma(0.1 * k, 0.5).value for k in range(10)]
        for k, got in enumerate(values):
            assert got == pytest.approx(quadratic_oracle(0.1 * k), abs=1e-10)
        assert all(b > a - 1e-12 for a, b in zip(values, values[1:]))

    def test_single_sign_change_at_scan_resolution(self):
        for gamma in (0.0, 0.25, 0.5):
            changes = count_sign_changes(
                lambda r: gamma_equation_value(gamma, 0.5, r))
            assert changes == 1

    def test_majorized_density_gives_smaller_radius(self):
        # the closed form replaces the density by its max on the circle,
        # so its root cannot exceed the exact circle-integral radius
        for gamma in (0.25, 0.5):
            closed = bloch_radius_gamma(gamma, 0.5).value
            exact = bloch_radius(HyperbolicDensity.omega_gamma(gamma), 0.5).value
            assert closed <= exact + 1e-9


class TestRefinedRadius:
    def test_disk_half_nu_closed_form(self):
        # 2 pi r^2/(1-r^2) = 3/pi  =>  r = sqrt(3/(3 + 2 pi^2))
        want = math.sqrt(3.0 / (3.0 + 2.0 * math.pi**2))
        got = bloch_refined_radius(DISK, 0.5).value
        assert abs(got - want) <= 1e-8

    def test_head_value(self):
        assert 2.0 * math.pi * m_integral(DISK, 0.5, 0.0) - REFINED_THRESHOLD \
            == -3.0 / math.pi

    def test_sits_below_majorant_radius(self):
        refined = bloch_refined_radius(DISK, 0.5).value
        plain = bloch_radius(DISK, 0.5).value
        assert refined < plain

    def test_no_root_for_bounded_density(self):
        flat = HyperbolicDensity.custom(lambda z: 0.05)
        with pytest.raises(NoRootError):
            bloch_refined_radius(flat, 1.0)


class TestBlochMajorantCheck:
    def test_affine_function_at_majorant_radius(self):
        # f(z) = 1/2 + z/2 has ||Df|| = 1/2 <= (1 - 1/2) lambda(z)^nu
        coeffs = CoeffSeries((0.5, 0.5))
        radius = bloch_radius(DISK, 1.0).value
        report = bloch_majorant_check(coeffs, 1.0, DISK, 1.0, radius)
        assert report.satisfied

    def test_unimodular_constant(self):
        report = bloch_majorant_check(CoeffSeries((1.0,)), 1.0, DISK, 0.5, 0.4)
        assert report.satisfied and report.value == 1.0

    def test_zero_function(self):
        report = bloch_majorant_check(CoeffSeries((0.0,)), 1.0, DISK, 0.5, 0.4)
        assert report.satisfied and report.value == 0.0

    def test_refined_variant_at_refined_radius(self):
        coeffs = CoeffSeries((0.5, 0.5))
        radius = bloch_refined_radius(DISK, 0.5).value
        report = bloch_majorant_check(coeffs, 1.0, DISK, 0.5, radius,
                                      mu=1.0, refined=True)
        assert report.satisfied

    def test_derivative_bound_failure(self):
        too_steep = CoeffSeries((0.5, 5.0))
        with pytest.raises(InvalidTestFunctionError):
            bloch_majorant_check(too_steep, 1.0, DISK, 1.0, 0.3)

    def test_budget_validation(self):
        with pytest.raises(DomainError):
            bloch_majorant_check(CoeffSeries((0.5,)), 1.5, DISK, 0.5, 0.3)


class TestBlochParams:
    def test_validation(self):
        with pytest.raises(DomainError):
            BlochParams(nu=0.0)
        with pytest.raises(DomainError):
            BlochParams(nu=0.5, quadrature_nodes=8)
        assert BlochParams(nu=0.5).quadrature_nodes == 64
