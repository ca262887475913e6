"""Coefficient-norm series of unit-ball holomorphic functions.

A function f(z) = sum_n A_n z^n with operator coefficients enters every
inequality in this package only through the norm sequence ||A_n||.
``CoeffSeries`` stores such a sequence (finitely many entries, with an
optional exact geometric continuation).  Concrete test surfaces are the
Mobius-type extremal family on the enlarged disk Omega_gamma and
diagonal blends of scalar Mobius factors, for which the norms are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# Continuation horizon: a geometric tail is materialized at most this far
# beyond the stored norms before a consumer must have converged.
MAX_EXTENSION = 16384


@dataclass(frozen=True)
class CoeffSeries:
    """Non-negative norms ||A_0||, ||A_1||, ... of a coefficient sequence.

    ``norms[n]`` is the norm at index n.  Entries below ``start_index``
    are zero (the series represents z^m * h(z) when start_index = m).
    If ``tail_geometric_ratio`` is set, the sequence continues exactly
    geometrically beyond the stored range:
    ||A_{L+k}|| = ||A_L|| * ratio^k.
    """

    norms: tuple[float, ...]
    start_index: int = 0
    tail_geometric_ratio: float | None = None

    def __post_init__(self):
        if self.start_index < 0:
            raise DomainError("start_index must be non-negative")
        norms = tuple(float(x) for x in self.norms)
        if not norms:
            norms = (0.0,)
        for n, x in enumerate(norms):
            if not math.isfinite(x) or x < 0:
                raise DomainError(f"norm at index {n} must be finite and >= 0, got {x}")
            if n < self.start_index and x != 0.0:
                raise DomainError(f"norms below start_index must vanish (index {n})")
        ratio = self.tail_geometric_ratio
        if ratio is not None and not 0.0 <= ratio < 1.0:
            raise DomainError("tail_geometric_ratio must lie in [0, 1)")
        object.__setattr__(self, "norms", norms)

    @classmethod
    def from_norms(cls, values, start_index=0, tail_geometric_ratio=None):
        """Build a series whose first stored value sits at ``start_index``."""
        padded = (0.0,) * start_index + tuple(float(v) for v in values)
        return cls(padded, start_index, tail_geometric_ratio)

    @classmethod
    def unit_constant(cls):
        """The equality witness f = cI with |c| = 1: norms (1, 0, 0, ...)."""
        return cls((1.0,))

    @property
    def last_index(self) -> int:
        return len(self.norms) - 1

    def norm(self, n: int) -> float:
        """||A_n||, extending geometrically past the stored range if allowed."""
        if n < self.start_index:
            return 0.0
        if n <= self.last_index:
            return self.norms[n]
        if self.tail_geometric_ratio is None:
            return 0.0
        return self.norms[-1] * self.tail_geometric_ratio ** (n - self.last_index)

    def shifted(self, k: int) -> "CoeffSeries":
        """The series of z^k * f(z): every index moves up by k."""
        if k < 0:
            raise DomainError("shift must be non-negative")
        return CoeffSeries((0.0,) * k + self.norms, self.start_index + k,
                           self.tail_geometric_ratio)

    def is_finite(self) -> bool:
        return self.tail_geometric_ratio is None or self.norms[-1] == 0.0

    def truncated_from(self, N: int) -> "CoeffSeries":
        """The series keeping only indices >= N (lower norms zeroed).

        A geometric continuation survives: when N lies beyond the stored
        range the first kept norm is materialized from it.
        """
        last = max(self.last_index, N)
        norms = tuple(0.0 if n < N else self.norm(n) for n in range(last + 1))
        return CoeffSeries(norms, max(self.start_index, N), self.tail_geometric_ratio)


@dataclass(frozen=True)
class DomainSpec:
    """Domain parameterization: an explicit constant, or gamma for Omega_gamma.

    In gamma mode the effective constant is 1/(1+gamma); gamma = 0
    recovers the unit disk.
    """

    mode: str
    lambda_h: float | None = None
    gamma: float | None = None

    def __post_init__(self):
        if self.mode == "general":
            if self.lambda_h is None or self.gamma is not None:
                raise DomainError("general mode takes lambda_h only")
            if not (math.isfinite(self.lambda_h) and self.lambda_h > 0):
                raise DomainError("lambda_h must be a positive real")
        elif self.mode == "gamma":
            if self.gamma is None or self.lambda_h is not None:
                raise DomainError("gamma mode takes gamma only")
            if not 0.0 <= self.gamma < 1.0:
                raise DomainError("gamma must lie in [0, 1)")
        else:
            raise DomainError(f"unknown domain mode {self.mode!r}")

    @classmethod
    def disk(cls):
        return cls("gamma", gamma=0.0)

    @classmethod
    def general(cls, lambda_h: float):
        return cls("general", lambda_h=float(lambda_h))

    @classmethod
    def omega_gamma(cls, gamma: float):
        return cls("gamma", gamma=float(gamma))

    @property
    def effective_lambda(self) -> float:
        if self.mode == "general":
            return self.lambda_h
        return 1.0 / (1.0 + self.gamma)


def _check_radius(r):
    if not (isinstance(r, (int, float)) and 0.0 <= r < 1.0):
        raise DomainError(f"radius must lie in [0, 1), got {r}")


def mobius_gamma_coeffs(a: float, gamma: float = 0.0, count: int = 64) -> CoeffSeries:
    """Coefficient norms of the Mobius-type extremal map of Omega_gamma.

    h_a composes the disk automorphism (a - w)/(1 - a w) with the affine
    map w = (1-gamma) z + gamma, giving

        ||A_0|| = |a - gamma| / (1 - a gamma),
        ||A_n|| = (1 - a^2)/(a (1 - a gamma)) * q^n,   q = a(1-gamma)/(1 - a gamma),

    for n >= 1.  a = 0 and a = 1 are excluded (the n >= 1 formula has a
    in a denominator and the family is used in the a -> 1^- limit only).
    """
    if not 0.0 < a < 1.0:
        raise DomainError(f"a must lie strictly inside (0, 1), got {a}")
    if not 0.0 <= gamma < 1.0:
        raise DomainError(f"gamma must lie in [0, 1), got {gamma}")
    if count < 1:
        raise DomainError("count must be positive")
    a0 = abs(a - gamma) / (1.0 - a * gamma)
    scale = (1.0 - a * a) / (a * (1.0 - a * gamma))
    q = a * (1.0 - gamma) / (1.0 - a * gamma)
    norms = [a0] + [scale * q**n for n in range(1, count + 1)]
    return CoeffSeries(tuple(norms), 0, q)


def s_r(coeffs: CoeffSeries, r: float, include_pi: bool = False) -> float:
    """Dirichlet-type sum sum_n n ||A_n||^2 r^{2n}.

    The bare coefficient sum is the operator convention used throughout;
    ``include_pi`` multiplies by pi, matching the planar-integral
    normalization of the scalar theory.
    """
    _check_radius(r)
    terms = []
    n = max(1, coeffs.start_index)
    rr = r * r
    while True:
        x = coeffs.norm(n)
        if x:
            terms.append(n * x * x * rr**n)
        if n >= coeffs.last_index:
            if coeffs.is_finite():
                break
            # geometric tail: stop once the remaining mass is negligible
            if x * x * rr**n * (n + 1) < 1e-18 * (1.0 + math.fsum(terms)):
                break
            if n - coeffs.last_index > MAX_EXTENSION:
                break
        n += 1
    total = math.fsum(terms)
    return math.pi * total if include_pi else total


def operator_norm(matrix) -> float:
    """Largest singular value of a finite complex matrix."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2:
        raise DomainError("operator_norm expects a 2-d matrix")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise DomainError("matrix entries must be finite")
    return float(np.linalg.norm(m, 2))


@dataclass(frozen=True)
class MatrixCoeffFn:
    """Diagonal blend of scalar Mobius factors.

    Entry i of the d x d diagonal is phase_i * (a_i + z)/(1 + a_i z), a
    self-map of the disk, so the blend maps into the operator unit ball.
    Coefficient matrices are diagonal and their operator norm is the max
    of the entry magnitudes, which keeps every norm exact.
    """

    params: tuple[float, ...]
    phases: tuple[complex, ...] | None = None

    def __post_init__(self):
        params = tuple(float(a) for a in self.params)
        if not params:
            raise DomainError("at least one diagonal entry is required")
        for a in params:
            if not 0.0 < a < 1.0:
                raise DomainError(f"entry parameter must lie in (0, 1), got {a}")
        phases = self.phases
        if phases is None:
            phases = (1.0 + 0.0j,) * len(params)
        else:
            phases = tuple(complex(p) for p in phases)
            if len(phases) != len(params):
                raise DomainError("one phase per diagonal entry is required")
            for p in phases:
                if abs(abs(p) - 1.0) > 1e-12:
                    raise DomainError("phases must be unimodular")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "phases", phases)

    @property
    def dimension(self) -> int:
        return len(self.params)

    def entry_coefficient(self, i: int, n: int) -> complex:
        """n-th Taylor coefficient of the i-th diagonal entry."""
        a = self.params[i]
        if n == 0:
            c = complex(a)
        else:
            c = (1.0 - a * a) * (-a) ** (n - 1)
        return self.phases[i] * c

    def coefficient_matrix(self, n: int) -> np.ndarray:
        return np.diag([self.entry_coefficient(i, n) for i in range(self.dimension)])


def diag_blend_coeffs(fn: MatrixCoeffFn, count: int = 64) -> CoeffSeries:
    """Coefficient-norm series of a diagonal Mobius blend.

    The norm at index n is max_i |c_n^{(i)}|.  Stored norms are extended
    until the entry with the largest parameter dominates the max, after
    which the continuation ratio max_i a_i is exact.
    """
    if count < 1:
        raise DomainError("count must be positive")
    a_max = max(fn.params)
    n = count
    while n < MAX_EXTENSION:
        mags = [abs(fn.entry_coefficient(i, n)) for i in range(fn.dimension)]
        if mags.index(max(mags)) == fn.params.index(a_max):
            break
        n += 1
    norms = [max(abs(fn.entry_coefficient(i, k)) for i in range(fn.dimension))
             for k in range(n + 1)]
    return CoeffSeries(tuple(norms), 0, a_max)


@dataclass(frozen=True)
class CoeffBoundReport:
    """Outcome of a coefficient-bound check over the stored norms."""

    passed: bool
    first_violation: int | None
    checked: int
    max_ratio: float  # max over n of ||A_n|| / bound; 1.0 means equality


def check_coeff_bound(coeffs: CoeffSeries, domain: DomainSpec,
                      tol: float = 1e-12) -> CoeffBoundReport:
    """Check ||A_n|| <= lambda_H (1 - ||A_m||^2) for all stored n > m.

    m is the series start index and A_m its first coefficient; a
    violation is reported, not raised.
    """
    m = coeffs.start_index
    a0 = coeffs.norm(m)
    if a0 > 1.0 + tol:
        raise DomainError("leading coefficient norm must be <= 1")
    bound = domain.effective_lambda * (1.0 - a0 * a0)
    first = None
    max_ratio = 0.0
    checked = 0
    for n in range(m + 1, coeffs.last_index + 1):
        x = coeffs.norm(n)
        checked += 1
        if bound > 0:
            max_ratio = max(max_ratio, x / bound)
        if x > bound + tol and first is None:
            first = n
    return CoeffBoundReport(first is None, first, checked, max_ratio)


def point_eval_bound(coeffs: CoeffSeries, r: float) -> float:
    """Sharp point bound (||A_0|| + r)/(1 + ||A_0|| r) on ||f(z)||, |z| = r."""
    _check_radius(r)
    a0 = coeffs.norm(coeffs.start_index)
    if a0 > 1.0 + 1e-12:
        raise DomainError("point bound requires a unit-ball function")
    a0 = min(a0, 1.0)
    return (a0 + r) / (1.0 + a0 * r)


def schwarz_composed_bound(coeffs: CoeffSeries, omega_order: int, r: float) -> float:
    """Point bound on ||f(w(z))|| for a Schwarz mapping w with a zero of order k.

    |w(z)| <= |z|^k, and t -> (a + t)/(1 + a t) is increasing, so the
    bound is the point bound evaluated at r^k.
    """
    if omega_order < 1:
        raise DomainError("the Schwarz mapping order must be >= 1")
    _check_radius(r)
    return point_eval_bound(coeffs, r**omega_order)
