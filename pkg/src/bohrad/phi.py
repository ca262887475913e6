"""Weight sequences phi = {phi_n(r)} and their tails.

Generalized Bohr sums replace the monomial weights r^n by an admissible
sequence of non-negative continuous functions whose sum converges on
[0, 1).  Built-in kinds carry closed-form tails; custom sequences are
summed by truncation with a geometric tail estimate certified against
the configured tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import ConfigurationError, DomainError, NonConvergenceError
from .series import CoeffSeries, _check_radius

PHI_KINDS = ("monomial", "weighted_linear", "weighted_quadratic",
             "even_only", "odd_only", "custom")


@dataclass(frozen=True)
class SeriesEvalConfig:
    """Truncation policy for sums that lack a closed form."""

    truncation_n: int = 512
    tail_ratio_cap: float = 0.99
    abs_tol: float = 1e-12

    def __post_init__(self):
        if self.truncation_n < 2:
            raise ConfigurationError("truncation_n must be at least 2")
        if not 0.0 < self.tail_ratio_cap < 1.0:
            raise ConfigurationError("tail_ratio_cap must lie in (0, 1)")
        if self.abs_tol <= 0:
            raise ConfigurationError("abs_tol must be positive")


DEFAULT_CONFIG = SeriesEvalConfig()


@dataclass(frozen=True)
class PhiSequence:
    """An admissible weight sequence.

    kind selects one of:
      monomial            phi_n = r^n
      weighted_linear     phi_n = (n+1) r^n
      weighted_quadratic  phi_0 = 1, phi_n = n^2 r^n
      even_only           phi_{2n} = r^{2n}, odd terms vanish
      odd_only            phi_0 = 1, phi_{2n-1} = r^{2n-1}, even terms vanish
      custom              terms from custom_term(n, r) (>= 0), with an
                          optional closed-form custom_tail(N, r)

    start_index marks where the sequence begins; terms below it are 0.
    Instances are immutable and safe to share across threads; custom
    callables must be reentrant themselves.
    """

    kind: str
    start_index: int = 0
    custom_term: Callable[[int, float], float] | None = None
    custom_tail: Callable[[int, float], float] | None = None

    def __post_init__(self):
        if self.kind not in PHI_KINDS:
            raise ConfigurationError(f"unknown phi kind {self.kind!r}")
        if self.start_index < 0:
            raise ConfigurationError("start_index must be non-negative")
        if self.kind == "custom" and self.custom_term is None:
            raise ConfigurationError("custom phi requires a custom_term callable")


MONOMIAL = PhiSequence("monomial")
WEIGHTED_LINEAR = PhiSequence("weighted_linear")
WEIGHTED_QUADRATIC = PhiSequence("weighted_quadratic")
EVEN_ONLY = PhiSequence("even_only")
ODD_ONLY = PhiSequence("odd_only")

BUILTIN_PHI = {
    "monomial": MONOMIAL,
    "weighted_linear": WEIGHTED_LINEAR,
    "weighted_quadratic": WEIGHTED_QUADRATIC,
    "even_only": EVEN_ONLY,
    "odd_only": ODD_ONLY,
}


def phi_term(phi: PhiSequence, n: int, r: float) -> float:
    """Evaluate phi_n(r)."""
    if n < 0:
        raise DomainError("term index must be non-negative")
    _check_radius(r)
    if n < phi.start_index:
        return 0.0
    kind = phi.kind
    if kind == "monomial":
        return r**n
    if kind == "weighted_linear":
        return (n + 1) * r**n
    if kind == "weighted_quadratic":
        return 1.0 if n == 0 else n * n * r**n
    if kind == "even_only":
        return r**n if n % 2 == 0 else 0.0
    if kind == "odd_only":
        if n == 0:
            return 1.0
        return r**n if n % 2 == 1 else 0.0
    value = float(phi.custom_term(n, r))
    if not math.isfinite(value) or value < 0:
        raise DomainError(f"custom term at n={n} must be finite and >= 0")
    return value


def phi_tail(phi: PhiSequence, N: int, r: float,
             config: SeriesEvalConfig = DEFAULT_CONFIG) -> float:
    """Tail sum Phi_N(r) = sum_{n >= N} phi_n(r).

    Built-in kinds use closed forms; custom kinds fall back to a
    truncated sum plus a geometric tail estimate whose certified bound
    must not exceed config.abs_tol.
    """
    if N < 0:
        raise DomainError("tail start index must be non-negative")
    _check_radius(r)
    N = max(N, phi.start_index)
    kind = phi.kind
    if kind == "monomial":
        return r**N / (1.0 - r)
    if kind == "weighted_linear":
        return r**N * ((N + 1) - N * r) / (1.0 - r) ** 2
    if kind == "weighted_quadratic":
        head = 1.0 if N == 0 else 0.0
        M = max(N, 1)
        poly = M * M - (2 * M * M - 2 * M - 1) * r + (M - 1) ** 2 * r * r
        return head + r**M * poly / (1.0 - r) ** 3
    if kind == "even_only":
        if N == 0:
            return 1.0 / (1.0 - r * r)
        E = N if N % 2 == 0 else N + 1
        return r**E / (1.0 - r * r)
    if kind == "odd_only":
        head = 1.0 if N == 0 else 0.0
        O = max(N, 1)
        if O % 2 == 0:
            O += 1
        return head + r**O / (1.0 - r * r)
    if phi.custom_tail is not None:
        return float(phi.custom_tail(N, r))
    return _truncated_tail(phi, N, r, config)


def _truncated_tail(phi, N, r, config):
    terms = [phi_term(phi, n, r) for n in range(N, N + config.truncation_n)]
    nonzero = [t for t in terms if t > 0.0]
    if len(nonzero) < 2:
        return math.fsum(terms)
    ratio = nonzero[-1] / nonzero[-2]
    if ratio >= config.tail_ratio_cap:
        raise NonConvergenceError(
            f"term ratio {ratio:.6g} at truncation exceeds the cap "
            f"{config.tail_ratio_cap:.6g}; cannot certify convergence")
    bound = nonzero[-1] * ratio / (1.0 - ratio)
    if bound > config.abs_tol:
        raise NonConvergenceError(
            f"tail estimate {bound:.3g} exceeds abs_tol {config.abs_tol:.3g} "
            f"after {config.truncation_n} terms")
    return math.fsum(terms) + bound


def refined_sum(coeffs: CoeffSeries, phi: PhiSequence, m: int, r: float,
                exponent_mode: str = "square",
                config: SeriesEvalConfig = DEFAULT_CONFIG) -> float:
    """Refinement term sum_{n > m} ||A_n||^e ( phi_{2n}/(1 + ||A_m||) + Phi_{2n+1} ).

    exponent_mode picks e: "square" uses e = 2 (the convention of the
    refined disk inequality this term generalizes), "two_n" uses e = 2n.
    For norms <= 1 the square mode dominates the two_n mode.
    """
    if exponent_mode not in ("square", "two_n"):
        raise ConfigurationError(f"unknown exponent mode {exponent_mode!r}")
    if m < 0:
        raise DomainError("m must be non-negative")
    _check_radius(r)
    am = coeffs.norm(m)
    terms = []
    n = m + 1
    tiny_streak = 0
    while True:
        x = coeffs.norm(n)
        if x == 0.0 and n > coeffs.last_index:
            break  # geometric continuation underflowed; nothing left
        if x:
            e = 2.0 if exponent_mode == "square" else 2.0 * n
            weight = phi_term(phi, 2 * n, r) / (1.0 + am) + phi_tail(phi, 2 * n + 1, r, config)
            t = x**e * weight
            terms.append(t)
            if n > coeffs.last_index:
                tiny_streak = tiny_streak + 1 if t < 1e-4 * config.abs_tol else 0
        if n >= coeffs.last_index:
            if coeffs.is_finite() or tiny_streak >= 8:
                break
            if n - coeffs.last_index > 16384:
                raise NonConvergenceError("refinement term failed to converge")
        n += 1
    return math.fsum(terms)
