"""Hyperbolic densities, circle integrals, and Bloch-type Bohr radii.

The Bloch-space radii are roots of equations in

    M(r) = (r / 2 pi) * integral over |z| = r of lambda^{2 nu}(z) |dz|,

with lambda the hyperbolic density of the domain.  The unit disk has
the closed form M(r) = r^2 / (1 - r^2)^{2 nu}; other densities are
integrated by trapezoidal quadrature with node doubling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (DomainError, InvalidTestFunctionError, NoRootError,
                     NonConvergenceError, SingularIntegrandError)
from .functionals import FunctionalReport, MuFunction, majorant
from .phi import MONOMIAL
from .roots import RootResult, min_positive_root
from .series import CoeffSeries, s_r

# sum of 1/s^2 enters the Cauchy-Schwarz step; its reciprocal is the
# threshold in the majorant equation
MAJORANT_THRESHOLD = 6.0 / math.pi**2
REFINED_THRESHOLD = 3.0 / math.pi

# proxy position for "the limit as r -> 1^-" precondition checks
LIMIT_PROBE = 1.0 - 1e-6


@dataclass(frozen=True)
class HyperbolicDensity:
    """Hyperbolic density of a simply connected domain containing the disk.

    unit_disk: lambda(z) = 1/(1 - |z|^2).
    omega_gamma: lambda(z) = (1-g)/(1 - |(1-g) z + g|^2) on the enlarged
    disk; g = 0 reduces to the unit disk.
    custom: any positive callable z -> lambda(z).
    """

    kind: str
    gamma: float = 0.0
    fn: Callable[[complex], float] | None = None

    def __post_init__(self):
        if self.kind not in ("unit_disk", "omega_gamma", "custom"):
            raise DomainError(f"unknown density kind {self.kind!r}")
        if self.kind == "omega_gamma" and not 0.0 <= self.gamma < 1.0:
            raise DomainError("gamma must lie in [0, 1)")
        if self.kind == "custom" and self.fn is None:
            raise DomainError("custom density requires a callable")

    @classmethod
    def unit_disk(cls):
        return cls("unit_disk")

    @classmethod
    def omega_gamma(cls, gamma: float):
        return cls("omega_gamma", gamma=float(gamma))

    @classmethod
    def custom(cls, fn):
        return cls("custom", fn=fn)

    def on_circle(self, r: float, thetas: np.ndarray) -> np.ndarray:
        if self.kind == "unit_disk":
            return np.full_like(thetas, 1.0 / (1.0 - r * r))
        if self.kind == "omega_gamma":
            g = self.gamma
            w_sq = (1 - g) ** 2 * r * r + g * g + 2 * g * (1 - g) * r * np.cos(thetas)
            return (1.0 - g) / (1.0 - w_sq)
        z = r * np.exp(1j * thetas)
        return np.array([float(self.fn(zz)) for zz in z])

    def min_on_circle(self, r: float, nodes: int = 256) -> float:
        thetas = np.linspace(0.0, 2.0 * math.pi, nodes, endpoint=False)
        return float(np.min(self.on_circle(r, thetas)))


@dataclass(frozen=True)
class BlochParams:
    """Exponent and quadrature resolution for Bloch-radius computations."""

    nu: float
    quadrature_nodes: int = 64

    def __post_init__(self):
        if not 0.0 < self.nu <= 1.0:
            raise DomainError("nu must lie in (0, 1]")
        if self.quadrature_nodes < 64:
            raise DomainError("quadrature needs at least 64 nodes")


def m_integral(density: HyperbolicDensity, nu: float, r: float,
               force_quadrature: bool = False, tol: float = 1e-10,
               start_nodes: int = 64) -> float:
    """M(r) = (r / 2 pi) * circle integral of lambda^{2 nu}.

    Uses the closed form for the unit disk and periodic trapezoidal
    quadrature otherwise, doubling nodes until two successive values
    differ by at most tol (relative for large values).
    """
    if not 0.0 <= r < 1.0:
        raise DomainError("r must lie in [0, 1)")
    if not 0.0 < nu <= 1.0:
        raise DomainError("nu must lie in (0, 1]")
    if r == 0.0:
        return 0.0
    if density.kind == "unit_disk" and not force_quadrature:
        return r * r / (1.0 - r * r) ** (2.0 * nu)
    nodes = max(64, start_nodes)
    prev = None
    while nodes <= 2**20:
        thetas = np.linspace(0.0, 2.0 * math.pi, nodes, endpoint=False)
        lam = density.on_circle(r, thetas)
        if not np.all(np.isfinite(lam)) or np.any(lam <= 0.0):
            raise SingularIntegrandError(
                f"density is singular or non-positive on |z| = {r}")
        value = r * r * float(np.mean(lam ** (2.0 * nu)))
        if prev is not None and abs(value - prev) <= tol * max(1.0, abs(value)):
            return value
        prev = value
        nodes *= 2
    raise NonConvergenceError(f"circle quadrature did not settle at r = {r}")


def _require_limit(value: float, threshold: float, label: str):
    if not value > threshold:
        raise NoRootError(
            f"{label}: boundary value {value:.6g} does not exceed {threshold:.6g}; "
            "the radius equation has no root in (0, 1)", all_negative=True)


def bloch_radius(density: HyperbolicDensity, nu: float, tol: float = 1e-12,
                 scan_step: float = 1e-3) -> RootResult:
    """Smallest root of M(r) = 6/pi^2, the Bloch majorant radius.

    The boundary condition lim_{r -> 1} M(r) > 6/pi^2 is checked at the
    proxy point 1 - 1e-6 before solving.
    """
    _require_limit(m_integral(density, nu, LIMIT_PROBE), MAJORANT_THRESHOLD,
                   "majorant radius")
    return min_positive_root(lambda r: m_integral(density, nu, r) - MAJORANT_THRESHOLD,
                             tol, scan_step)


def gamma_equation_value(gamma: float, nu: float, r: float) -> float:
    """Closed-form equation for the enlarged disk.

    N(r) = (1-g)^{2 nu} r^2 pi^2 - 6 (1 - ((1-g) r + g)^2)^{2 nu}; its
    root bounds the circle-integral radius from below because the
    density is majorized on |z| = r by its value at (1-g) r + g.
    """
    if not 0.0 <= gamma < 1.0:
        raise DomainError("gamma must lie in [0, 1)")
    if not 0.0 < nu <= 1.0:
        raise DomainError("nu must lie in (0, 1]")
    outer = (1.0 - gamma) * r + gamma
    return (1.0 - gamma) ** (2.0 * nu) * r * r * math.pi**2 \
        - 6.0 * (1.0 - outer * outer) ** (2.0 * nu)


def bloch_radius_gamma(gamma: float, nu: float, tol: float = 1e-12,
                       scan_step: float = 1e-3) -> RootResult:
    """Minimal root in (0, 1) of the closed-form enlarged-disk equation.

    Endpoint signs are verified first: N(0) = -6 (1 - g^2)^{2 nu} < 0
    and N(1) = (1-g)^{2 nu} pi^2 > 0, so a root exists.
    """
    n0 = gamma_equation_value(gamma, nu, 0.0)
    n1 = gamma_equation_value(gamma, nu, 1.0)
    if not (n0 < 0.0 < n1):
        raise NoRootError(f"endpoint signs N(0) = {n0:.6g}, N(1) = {n1:.6g} "
                          "do not bracket a root")
    return min_positive_root(lambda r: gamma_equation_value(gamma, nu, r),
                             tol, scan_step)


def bloch_refined_radius(density: HyperbolicDensity, nu: float,
                         tol: float = 1e-12, scan_step: float = 1e-3) -> RootResult:
    """Smallest root of H(r) = r * (circle integral) - 3/pi = 0.

    The circle integral here is un-normalized, so H(r) = 2 pi M(r) - 3/pi
    and H(0) = -3/pi.  The boundary condition lim_{r->1} H(r) > 0 is
    checked at the proxy point first.
    """
    def H(r):
        return 2.0 * math.pi * m_integral(density, nu, r) - REFINED_THRESHOLD

    _require_limit(H(LIMIT_PROBE), 0.0, "refined radius")
    return min_positive_root(H, tol, scan_step)


def derivative_majorant(coeffs: CoeffSeries, t: float) -> float:
    """Upper bound sum_s s ||A_s|| t^{s-1} on ||Df(z)|| for |z| = t."""
    total = 0.0
    n = max(1, coeffs.start_index)
    while True:
        x = coeffs.norm(n)
        if x:
            total += n * x * t ** (n - 1)
        if n >= coeffs.last_index:
            if coeffs.is_finite() or n * x * t ** (n - 1) < 1e-18 * (1.0 + total):
                break
            if n - coeffs.last_index > 16384:
                break
        n += 1
    return total


def bloch_majorant_check(coeffs: CoeffSeries, bloch_norm_budget: float,
                         density: HyperbolicDensity, nu: float, r: float,
                         mu=None, refined: bool = False,
                         grid_radii: int = 64) -> FunctionalReport:
    """Majorant check for a Bloch-normalized test function.

    First verifies on a radial grid of |z| <= 0.999 that the derivative
    majorant stays below (budget - ||A_0||) * lambda^nu (the hypothesis
    the radii rely on); raises InvalidTestFunctionError otherwise.  The
    plain check compares sum ||A_s|| r^s with 1; the refined variant
    adds the tail majorant and mu(r) times the planar Dirichlet integral
    pi * sum s ||A_s||^2 r^{2s}, with the full majorant standing in for
    ||f(z)||.
    """
    if bloch_norm_budget > 1.0 + 1e-12:
        raise DomainError("the Bloch norm budget must be <= 1")
    a0 = coeffs.norm(coeffs.start_index)
    slack = bloch_norm_budget - a0
    if slack < -1e-12:
        raise InvalidTestFunctionError("||A_0|| already exceeds the norm budget")
    for k in range(1, grid_radii + 1):
        t = 0.999 * k / grid_radii
        lam_min = density.min_on_circle(t)
        if derivative_majorant(coeffs, t) > slack * lam_min**nu + 1e-12:
            raise InvalidTestFunctionError(
                f"derivative bound fails at |z| = {t:.4f}")
    base = majorant(coeffs, MONOMIAL, r)
    if not refined:
        return FunctionalReport.compare(base, 1.0)
    mu = MuFunction.of(0.0 if mu is None else mu)
    tail = base - a0 * r**coeffs.start_index
    value = base + tail + mu(r) * s_r(coeffs, r, include_pi=True)
    return FunctionalReport.compare(value, 1.0)
