"""Closed-form ground-state quantities for two coupled harmonic oscillators.

Two unit-mass oscillators joined by a spring are fully characterized by the
dimensionless coupling alpha = 2K/(m omega^2). The ground-state wavefunction
is a correlated Gaussian exp(-q^T L q); everything downstream (reduced
density kernel, characteristic length, exact entanglement of formation,
small-region limits, classical widths) follows from alpha in closed form.

Units are m = omega = hbar = 1 by default, which makes the uncoupled
single-particle width sigma(alpha=0) = 1 the unit of length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergentWidth, DomainError
from .linalg import binary_entropy


@dataclass(frozen=True)
class OscillatorModel:
    """Pair of coupled oscillators: dimensionless coupling plus units."""

    alpha: float
    m: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        if self.alpha < 0.0:
            raise DomainError(f"coupling alpha must be >= 0, got {self.alpha}")
        if self.m <= 0.0 or self.omega <= 0.0:
            raise DomainError("mass and frequency must be positive")

    @property
    def stiffness_root(self) -> float:
        """sqrt(1 + 4 alpha), the normal-mode frequency ratio squared."""
        return math.sqrt(1.0 + 4.0 * self.alpha)


@dataclass(frozen=True)
class GroundStateConstants:
    """Derived ground-state constants.

    l_matrix is the 2x2 quadratic form of the wavefunction exponent;
    c1/c2 are the diagonal/cross exponent coefficients of the reduced
    one-particle kernel; sigma is the single-particle characteristic
    length; w is the geometric weight of the reduced-state spectrum
    (lam_k proportional to w^k) and eof the resulting entanglement.
    """

    l_matrix: np.ndarray
    c1: float
    c2: float
    sigma: float
    w: float
    eof: float


@dataclass(frozen=True)
class ClassicalWidths:
    """Widths of the classical probability surfaces.

    sigma_plus/sigma_minus: standard deviations of the joint position
    density along the (q_a + q_b) and (q_a - q_b) axes. sigma_1, sigma_2,
    sigma_12: quadratic-form widths of the conditional density of Bob's
    position given Alice's.
    """

    sigma_plus: float
    sigma_minus: float
    sigma_1: float
    sigma_2: float
    sigma_12: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.sigma_plus, self.sigma_minus,
                self.sigma_1, self.sigma_2, self.sigma_12)


def spectral_weight(model: OscillatorModel) -> float:
    """Geometric ratio w of the reduced-state eigenvalues lam_k = (1-w) w^k.

    Evaluated through the cancellation-free form w = ((t-1)/(t+1))^2 with
    t = (1+4 alpha)^(1/4); the textbook rational expression loses all
    significance below alpha ~ 1e-4.
    """
    t = (1.0 + 4.0 * model.alpha) ** 0.25
    r = (t - 1.0) / (t + 1.0)
    return r * r


def gaussian_eof(model: OscillatorModel) -> float:
    """Exact ground-state entanglement of formation in ebits.

    Zero at alpha = 0 (uncoupled product state) and strictly increasing
    with the coupling.
    """
    w = spectral_weight(model)
    if w == 0.0:
        return 0.0
    return float(-np.log2(1.0 - w) - w * np.log2(w) / (1.0 - w))


def ground_state_constants(model: OscillatorModel) -> GroundStateConstants:
    """All closed-form ground-state constants for the given coupling."""
    m_om = model.m * model.omega
    s = model.stiffness_root
    l_matrix = (m_om / 8.0) * np.array([[1.0 + s, 1.0 - s],
                                        [1.0 - s, 1.0 + s]])
    c1 = (1.0 + 2.0 * model.alpha + 3.0 * s) / (8.0 + 8.0 * s) * m_om
    c2 = model.alpha * (s - 1.0) / (8.0 * (1.0 + 2.0 * model.alpha + s)) * m_om
    sigma = (2.0 * m_om * s / (1.0 + s)) ** -0.5
    w = spectral_weight(model)
    return GroundStateConstants(l_matrix=l_matrix, c1=c1, c2=c2,
                                sigma=sigma, w=w, eof=gaussian_eof(model))


def two_particle_wavefunction(model: OscillatorModel, qa, qb):
    """Unnormalized ground-state amplitude exp(-q^T L q); vectorized.

    The symmetric mode is spring-free: psi(q, q) = exp(-(m omega/2) q^2)
    for every coupling, while psi(q, -q) narrows with the stiff mode.
    """
    qa = np.asarray(qa, dtype=np.float64)
    qb = np.asarray(qb, dtype=np.float64)
    m_om = model.m * model.omega
    s = model.stiffness_root
    l_diag = m_om / 8.0 * (1.0 + s)
    l_off = m_om / 8.0 * (1.0 - s)
    exponent = l_diag * (qa * qa + qb * qb) + 2.0 * l_off * qa * qb
    return np.exp(-exponent)


def reduced_density_value(model: OscillatorModel, qa, qa_prime):
    """Normalized one-particle reduced kernel rho^(A)(q_a; q_a'); vectorized.

    sqrt((2 c1 - 2 c2)/pi) exp(-c1 (q^2 + q'^2) + 2 c2 q q'); its diagonal
    is the single-particle Gaussian of width sigma and integrates to one.
    """
    qa = np.asarray(qa, dtype=np.float64)
    qa_prime = np.asarray(qa_prime, dtype=np.float64)
    gs = ground_state_constants(model)
    norm = math.sqrt((2.0 * gs.c1 - 2.0 * gs.c2) / math.pi)
    return norm * np.exp(-gs.c1 * (qa * qa + qa_prime * qa_prime)
                         + 2.0 * gs.c2 * qa * qa_prime)


def marginal_position_density(model: OscillatorModel, q):
    """Single-particle position density rho^(A)(q; q); vectorized."""
    return reduced_density_value(model, q, q)


def joint_position_density(model: OscillatorModel, qa, qb):
    """Normalized two-particle position density |psi(q_a, q_b)|^2; vectorized."""
    qa = np.asarray(qa, dtype=np.float64)
    qb = np.asarray(qb, dtype=np.float64)
    m_om = model.m * model.omega
    s = model.stiffness_root
    # |psi|^2 factorizes over the normal modes (q_a + q_b) and (q_a - q_b).
    c_plus = m_om / 4.0
    c_minus = m_om * s / 4.0
    norm = 2.0 * math.sqrt(c_plus * c_minus) / math.pi
    u = qa + qb
    v = qa - qb
    return norm * np.exp(-c_plus * u * u - c_minus * v * v)


def small_a_epsilon_one(model: OscillatorModel, a: float) -> float:
    """Schmidt weight eps when only Alice restricts to a width-2a region.

    Valid in the small-region limit; the surviving entanglement is
    binary_entropy(eps), independent of where the region sits.
    """
    if a <= 0.0:
        raise DomainError(f"half width must be positive, got {a}")
    s = model.stiffness_root
    m_om = model.m * model.omega
    return a * a * m_om * model.alpha * (s - 1.0) / (
        12.0 * (1.0 + 2.0 * model.alpha + s))


def small_a_epsilon_both(model: OscillatorModel, a: float, b: float) -> float:
    """Schmidt weight eps when both parties restrict (widths 2a and 2b)."""
    if a <= 0.0 or b <= 0.0:
        raise DomainError("half widths must be positive")
    s = model.stiffness_root
    m_om = model.m * model.omega
    return a * a * b * b * m_om * m_om / 72.0 * (1.0 + 2.0 * model.alpha - s)


def concurrence_density(model: OscillatorModel) -> float:
    """Concurrence per region area in the doubly-restricted small limit.

    Related to the small-region Schmidt weight by
    eps_both = (density * a * b / 2)^2.
    """
    s = model.stiffness_root
    m_om = model.m * model.omega
    return math.sqrt(2.0) * m_om / 6.0 * math.sqrt(1.0 + 2.0 * model.alpha - s)


def small_a_entanglement_one(model: OscillatorModel, a: float) -> float:
    """Small-region entanglement h(eps) for a single restricted party."""
    return binary_entropy(small_a_epsilon_one(model, a))


def small_a_entanglement_both(model: OscillatorModel, a: float, b: float) -> float:
    """Small-region entanglement h(eps) when both parties restrict."""
    return binary_entropy(small_a_epsilon_both(model, a, b))


def classical_widths(model: OscillatorModel) -> ClassicalWidths:
    """Analytic widths of the classical joint and conditional densities.

    sigma_plus is coupling-independent; sigma_1 and sigma_12 diverge for
    uncoupled oscillators (conditioning carries no information there).
    """
    if model.alpha == 0.0:
        raise DivergentWidth("sigma_1 and sigma_12 diverge at alpha = 0")
    s = model.stiffness_root
    unit = (model.m * model.omega) ** -0.5
    sigma_plus = math.sqrt(2.0) * unit
    sigma_minus = math.sqrt(2.0 / s) * unit
    sigma_1 = math.sqrt(2.0 * (1.0 + s)) / (s - 1.0) * unit
    sigma_2 = math.sqrt(2.0 / (1.0 + s)) * unit
    sigma_12 = math.sqrt(1.0 / (s - 1.0)) * unit
    return ClassicalWidths(sigma_plus, sigma_minus, sigma_1, sigma_2, sigma_12)
