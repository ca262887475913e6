"""Left-hand sides of the Bohr-type inequalities, plus sharpness probes.

Every functional returns a ``FunctionalReport`` comparing its value with
the right-hand side of the inequality it belongs to.  Probes evaluate a
functional along the extremal Mobius family and hunt for a violation
just beyond a claimed radius.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable

from .errors import ConfigurationError, DomainError
from .phi import DEFAULT_CONFIG, MONOMIAL, PhiSequence, phi_tail, phi_term, refined_sum
from .polynomials import area_poly_coeffs
from .series import (CoeffSeries, _check_radius, mobius_gamma_coeffs,
                     point_eval_bound, s_r, schwarz_composed_bound)

if TYPE_CHECKING:  # pragma: no cover
    from .radii import RadiusProblem

# violations smaller than this are indistinguishable from round-off
VIOLATION_TOL = 1e-12

# reflects the a -> 1^- limits used by every sharpness argument
DEFAULT_A_GRID = tuple(1.0 - 10.0**-k for k in range(1, 7))


@dataclass(frozen=True)
class MuFunction:
    """A continuous weight mu(r) >= 0 on [0, 1]: a constant or a callable."""

    value: float | None = None
    fn: Callable[[float], float] | None = None

    def __post_init__(self):
        if (self.value is None) == (self.fn is None):
            raise ConfigurationError("provide exactly one of value / fn")
        if self.value is not None and (not math.isfinite(self.value) or self.value < 0):
            raise ConfigurationError("a constant mu must be finite and >= 0")
        if self.fn is not None:
            for k in range(65):  # coarse admissibility screen
                v = float(self.fn(k / 64.0))
                if not math.isfinite(v) or v < 0:
                    raise ConfigurationError(
                        f"mu({k / 64.0}) = {v} is not finite and non-negative")

    @classmethod
    def constant(cls, value: float) -> "MuFunction":
        return cls(value=float(value))

    @classmethod
    def zero(cls) -> "MuFunction":
        return cls(value=0.0)

    @classmethod
    def of(cls, mu) -> "MuFunction":
        """Coerce a float, callable or MuFunction."""
        if isinstance(mu, MuFunction):
            return mu
        if callable(mu):
            return cls(fn=mu)
        return cls(value=float(mu))

    def __call__(self, r: float) -> float:
        if self.value is not None:
            return self.value
        v = float(self.fn(r))
        if not math.isfinite(v) or v < 0:
            raise DomainError(f"mu({r}) = {v} is not finite and non-negative")
        return v

    def oscillation(self, nodes: int = 1024) -> float:
        """Largest neighboring jump on a uniform grid of [0, 1]."""
        vals = [self(k / nodes) for k in range(nodes + 1)]
        return max(abs(vals[k + 1] - vals[k]) for k in range(nodes))


@dataclass(frozen=True)
class FunctionalReport:
    """Value vs right-hand side of one inequality at one radius."""

    value: float
    rhs: float
    satisfied: bool
    margin: float

    @classmethod
    def compare(cls, value: float, rhs: float) -> "FunctionalReport":
        margin = rhs - value
        return cls(value, rhs, margin >= -VIOLATION_TOL, margin)


def majorant(coeffs: CoeffSeries, phi: PhiSequence, r: float,
             config=DEFAULT_CONFIG) -> float:
    """Weighted majorant sum_n ||A_n|| phi_n(r), truncation certified.

    For a geometric continuation the remainder after index n is at most
    ||A_n|| Phi_{n+1}(r), which is driven below config.abs_tol.
    """
    _check_radius(r)
    terms = []
    n = coeffs.start_index
    while True:
        x = coeffs.norm(n)
        if x:
            terms.append(x * phi_term(phi, n, r))
        if n >= coeffs.last_index:
            if coeffs.is_finite():
                break
            if x * phi_tail(phi, n + 1, r, config) <= config.abs_tol:
                break
            if n - coeffs.last_index > 16384:
                break
        n += 1
    return math.fsum(terms)


def bohr_area_functional(coeffs: CoeffSeries, r: float, lambda_h: float = 1.0,
                         degree: int = 2) -> FunctionalReport:
    """Bohr sum plus the closed-form polynomial of the Dirichlet sum.

    value = sum ||A_n|| r^n + P(S_r) with P = area_poly_coeffs(lambda_h,
    degree); holds against rhs 1 for r <= 1/(1 + 2 lambda_h).
    """
    P = area_poly_coeffs(lambda_h, degree)
    value = majorant(coeffs, MONOMIAL, r) + P(s_r(coeffs, r))
    return FunctionalReport.compare(value, 1.0)


def bohr_beta_functional(coeffs: CoeffSeries, r: float, beta: float) -> FunctionalReport:
    """Bohr sum with beta-weighted squared coefficients.

    value = ||A_0|| + sum_{n>=1} (||A_n|| + beta ||A_n||^2) r^n; the
    guarantee needs beta <= 1/(4 lambda_h).
    """
    if beta < 0:
        raise DomainError("beta must be non-negative")
    _check_radius(r)
    sq = CoeffSeries(tuple(x * x for x in coeffs.norms), coeffs.start_index,
                     None if coeffs.tail_geometric_ratio is None
                     else coeffs.tail_geometric_ratio**2)
    a0 = coeffs.norm(coeffs.start_index)
    linear = majorant(coeffs, MONOMIAL, r) - a0 * r**coeffs.start_index
    square = majorant(sq, MONOMIAL, r) - a0 * a0 * r**coeffs.start_index
    value = a0 + linear + beta * square
    return FunctionalReport.compare(value, 1.0)


def bohr_energy_functional(coeffs: CoeffSeries, r: float,
                           lambda_h: float = 1.0) -> FunctionalReport:
    """Bohr sum plus the weighted coefficient-energy series.

    value = sum ||A_n|| r^n
          + ( (1+L)/(2L(1+||A_0||)) + 2(1+L) r/(3(1-r)) ) sum_{n>=1} ||A_n||^2 r^{2n}.
    """
    if lambda_h <= 0:
        raise DomainError("lambda_h must be positive")
    _check_radius(r)
    a0 = coeffs.norm(coeffs.start_index)
    weight = (1.0 + lambda_h) / (2.0 * lambda_h * (1.0 + a0)) \
        + 2.0 * (1.0 + lambda_h) * r / (3.0 * (1.0 - r))
    energy = math.fsum(_energy_terms(coeffs, r))
    value = majorant(coeffs, MONOMIAL, r) + weight * energy
    return FunctionalReport.compare(value, 1.0)


def _energy_terms(coeffs, r):
    rr = r * r
    n = max(1, coeffs.start_index)
    acc = 0.0
    while True:
        x = coeffs.norm(n)
        if x:
            t = x * x * rr**n
            acc += t
            yield t
        if n >= coeffs.last_index:
            if coeffs.is_finite() or x * x * rr**n <= 1e-18 * (1.0 + acc):
                break
            if n - coeffs.last_index > 16384:
                break
        n += 1


def refined_functional(coeffs: CoeffSeries, phi: PhiSequence, p: float, m: int,
                       mu, r: float, exponent_mode: str = "square") -> FunctionalReport:
    """Weighted Bohr functional with the refinement term.

    value = phi_m(r) ||A_m||^p + sum_{n>m} ||A_n|| phi_n(r)
          + mu(r) * refined_sum(...), against rhs phi_m(r).  The series
    must vanish below index m.
    """
    if not 0.0 < p <= 2.0:
        raise DomainError(f"p must lie in (0, 2], got {p}")
    if coeffs.start_index < m:
        for n in range(coeffs.start_index, m):
            if coeffs.norm(n) != 0.0:
                raise DomainError("coefficients must vanish below index m")
    mu = MuFunction.of(mu)
    _check_radius(r)
    am = coeffs.norm(m)
    head = phi_term(phi, m, r) * am**p
    tail_part = majorant(coeffs, phi, r) - am * phi_term(phi, m, r)
    value = head + tail_part + mu(r) * refined_sum(coeffs, phi, m, r, exponent_mode)
    return FunctionalReport.compare(value, phi_term(phi, m, r))


def rogosinski_functional(coeffs: CoeffSeries, phi: PhiSequence, p: float,
                          N: int, omega_order: int, mu, r: float) -> FunctionalReport:
    """Bohr-Rogosinski functional with a Schwarz-composed point bound.

    value = sup||f(w(z))||^p phi_0(r) + mu(r) sum_{n>=N} ||A_n|| phi_n(r)
    against rhs phi_0(r), where the sup over admissible Schwarz mappings
    of order omega_order and |z| = r is the sharp point bound
    (a + r^k)/(1 + a r^k); the extremal family attains it.
    """
    if not 0.0 < p <= 2.0:
        raise DomainError(f"p must lie in (0, 2], got {p}")
    if N < 1:
        raise DomainError("N must be at least 1")
    mu = MuFunction.of(mu)
    _check_radius(r)
    head = schwarz_composed_bound(coeffs, omega_order, r) ** p * phi_term(phi, 0, r)
    value = head + mu(r) * majorant(coeffs.truncated_from(N), phi, r)
    return FunctionalReport.compare(value, phi_term(phi, 0, r))


CLASSICAL_VARIANTS = ("bohr", "paulsen", "kayumov_ponnusamy", "refined_square",
                      "rogosinski_partial", "bohr_rogosinski")


def classical_functional(coeffs: CoeffSeries, r: float, variant: str,
                         N: int | None = None) -> FunctionalReport:
    """Scalar-era inequality left-hand sides (norms read as |a_n|).

    Variants: "bohr" (plain majorant), "paulsen" (|a_0|^2 head),
    "kayumov_ponnusamy" (the printed (1/3)^n-damped refinement),
    "refined_square" (majorant plus weighted squares), and the partial
    sums "rogosinski_partial" / "bohr_rogosinski", which need N.  The
    Rogosinski partial sum uses the worst-case majorant surrogate; the
    Bohr-Rogosinski head uses the sharp point bound.
    """
    _check_radius(r)
    if variant not in CLASSICAL_VARIANTS:
        raise ConfigurationError(f"unknown classical variant {variant!r}")
    if variant in ("rogosinski_partial", "bohr_rogosinski") and N is None:
        raise ConfigurationError(f"variant {variant!r} requires N")
    a0 = coeffs.norm(0)
    if variant == "bohr":
        return FunctionalReport.compare(majorant(coeffs, MONOMIAL, r), 1.0)
    if variant == "paulsen":
        value = a0 * a0 + majorant(coeffs, MONOMIAL, r) - a0
        return FunctionalReport.compare(value, 1.0)
    if variant == "kayumov_ponnusamy":
        terms = [a0]
        n, streak = 1, 0
        while streak < 8 and n <= coeffs.last_index + 4096:
            x = coeffs.norm(n)
            t = (x * r**n + 0.5 * x * x) * (1.0 / 3.0) ** n
            terms.append(t)
            streak = streak + 1 if (n > coeffs.last_index and t < 1e-18) else 0
            if n >= coeffs.last_index and coeffs.is_finite():
                break
            n += 1
        return FunctionalReport.compare(math.fsum(terms), 1.0)
    if variant == "refined_square":
        weight = 1.0 / (1.0 + a0) + r / (1.0 - r)
        value = majorant(coeffs, MONOMIAL, r) + weight * math.fsum(_energy_terms(coeffs, r))
        return FunctionalReport.compare(value, 1.0)
    if variant == "rogosinski_partial":
        value = math.fsum(coeffs.norm(n) * r**n for n in range(N))
        return FunctionalReport.compare(value, 1.0)
    # bohr_rogosinski: point bound head plus the tail majorant from N
    value = point_eval_bound(coeffs, r) + majorant(coeffs.truncated_from(N), MONOMIAL, r)
    return FunctionalReport.compare(value, 1.0)


def mobius_partial_modulus(a: float, gamma: float, N: int, r: float,
                           nodes: int = 512) -> float:
    """Exact max of |sum_{n<N} c_n z^n| over |z| = r for the extremal family.

    The Mobius-type map has real Taylor coefficients c_0 = (a-g)/(1-ag)
    and c_n = -(1-g)(1-a^2) q^{n-1}/(1-ag)^2; the circle is scanned at
    ``nodes`` angles.
    """
    if N < 1:
        raise DomainError("N must be at least 1")
    _check_radius(r)
    if not 0.0 < a < 1.0 or not 0.0 <= gamma < 1.0:
        raise DomainError("need a in (0,1) and gamma in [0,1)")
    q = a * (1.0 - gamma) / (1.0 - a * gamma)
    c = [(a - gamma) / (1.0 - a * gamma)]
    c += [-(1.0 - gamma) * (1.0 - a * a) * q ** (n - 1) / (1.0 - a * gamma) ** 2
          for n in range(1, N)]
    best = 0.0
    for k in range(nodes):
        z = r * cmath.exp(2j * math.pi * k / nodes)
        best = max(best, abs(sum(cn * z**n for n, cn in enumerate(c))))
    return best


def per_function_radius(coeffs: CoeffSeries, phi: PhiSequence, p: float,
                        q: float, m: int = 0, mu=0.0,
                        exponent_mode: str = "square", tol: float = 1e-10) -> float:
    """Numeric radius estimate for the q-powered functional of ONE function.

    Finds sup{ r : phi_m ||A_m||^p + (sum_{n>m} ||A_n|| phi_n + mu * A)^q
    <= phi_m } by bisection on the monotone margin.  Nothing pins a
    class-wide radius for q != 1, so this is a per-function estimate,
    not a certified class radius.
    """
    if q <= 0:
        raise DomainError("q must be positive")
    mu = MuFunction.of(mu)

    def gap(r):
        am = coeffs.norm(m)
        head = phi_term(phi, m, r) * am**p
        inner = (majorant(coeffs, phi, r) - am * phi_term(phi, m, r)
                 + mu(r) * refined_sum(coeffs, phi, m, r, exponent_mode))
        return head + inner**q - phi_term(phi, m, r)

    lo, hi = 0.0, 1.0 - 1e-9
    if gap(hi) <= 0:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if gap(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return lo


def sharpness_probe(problem: "RadiusProblem", r: float, a_grid=DEFAULT_A_GRID,
                    functional: Callable[[float, float], FunctionalReport] | None = None):
    """First extremal parameter in a_grid whose functional beats its rhs at r.

    Evaluates the extremal Mobius family at each a in grid order and
    returns the first a with value > rhs + VIOLATION_TOL, or None.  A
    custom ``functional(a, r)`` overrides the one derived from the
    problem.
    """
    if not 0.0 < r < 1.0:
        raise DomainError("probe radius must lie in (0, 1)")
    evaluate = functional if functional is not None else problem_functional(problem)
    for a in a_grid:
        report = evaluate(a, r)
        if report.margin < -VIOLATION_TOL:
            return a
    return None


def problem_functional(problem: "RadiusProblem") -> Callable[[float, float], FunctionalReport]:
    """Extremal-family functional matching a radius problem.

    Refined problems use the Omega_gamma family shifted by m (gamma
    taken from the problem domain); Rogosinski problems use the disk
    family with the problem's Schwarz order.  Domains given only by a
    general lambda_h have no constructible extremal family unless
    lambda_h == 1 (the disk).
    """
    if problem.equation_kind == "rogosinski":
        def evaluate(a, r):
            coeffs = mobius_gamma_coeffs(a, 0.0)
            return rogosinski_functional(coeffs, problem.phi, problem.p,
                                         problem.N, problem.m, problem.mu, r)
        return evaluate
    domain = problem.domain
    if domain.mode == "gamma":
        gamma = domain.gamma
    elif abs(domain.effective_lambda - 1.0) <= 1e-12:
        gamma = 0.0
    else:
        raise ConfigurationError(
            "no extremal family is constructible for a general lambda_h != 1")

    def evaluate(a, r):
        coeffs = mobius_gamma_coeffs(a, gamma).shifted(problem.m)
        return refined_functional(coeffs, problem.phi, problem.p, problem.m,
                                  problem.mu, r)
    return evaluate
