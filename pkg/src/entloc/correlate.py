"""Classical probability surfaces and Gaussian-surface fitting.

The classical counterpart of the entanglement maps: joint and conditional
probabilities of finding the two particles in their measurement regions,
tabulated over region centers, plus log-space least-squares fits that
extract the characteristic widths of any such surface. Comparing the
fitted widths of the entanglement surface against the classical ones
quantifies how much further the entanglement extends in configuration
space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distribution import Distribution2D
from .errors import (
    ConditioningOnNullEvent,
    DomainError,
    InsufficientSupport,
    NonPositiveCurvature,
)
from .oscillator import (
    ClassicalWidths,
    OscillatorModel,
    classical_widths,
)
from .restrict import (
    DiscretizationSpec,
    Region,
    _run_cells,
    entanglement_map,
    joint_survival_probability,
    region_survival_probability,
)

NULL_EVENT = 1e-14
DEFAULT_THRESHOLD = 1e-3
MIN_SAMPLES = 12


def joint_probability(model: OscillatorModel, region_a: Region,
                      region_b: Region) -> float:
    """P(q_a in A and q_b in B) from the normalized position density."""
    return joint_survival_probability(model, region_a, region_b)


def conditional_probability(model: OscillatorModel, region_b: Region,
                            region_a: Region) -> float:
    """P(q_b in B | q_a in A) = joint probability / Alice's marginal."""
    marginal = region_survival_probability(model, region_a)
    if marginal < NULL_EVENT:
        raise ConditioningOnNullEvent(
            f"conditioning region carries mass {marginal:.3e}")
    return joint_probability(model, region_a, region_b) / marginal


def _probability_cell(args):
    model, ca, cb, a, b, kind = args
    region_a = Region(ca, a)
    region_b = Region(cb, b)
    if kind == "joint_probability":
        return joint_probability(model, region_a, region_b), 0.0
    try:
        return conditional_probability(model, region_b, region_a), 0.0
    except ConditioningOnNullEvent:
        return np.nan, 1.0


def probability_map(model: OscillatorModel, centers_a, centers_b,
                    half_width_a: float, half_width_b: float | None = None,
                    kind: str = "joint_probability",
                    workers: int = 1) -> Distribution2D:
    """Joint or conditional probability surface over region centers.

    Conditional cells whose conditioning event has no mass are masked.
    """
    if kind not in ("joint_probability", "conditional_probability"):
        raise DomainError(f"unknown probability kind {kind!r}")
    centers_a = np.asarray(centers_a, dtype=np.float64)
    centers_b = np.asarray(centers_b, dtype=np.float64)
    b = half_width_b if half_width_b is not None else half_width_a
    jobs = [(model, ca, cb, half_width_a, b, kind)
            for ca in centers_a for cb in centers_b]
    rows = np.asarray(_run_cells(_probability_cell, jobs, workers))
    shape = (centers_a.size, centers_b.size)
    values = rows[:, 0].reshape(shape)
    mask = rows[:, 1].reshape(shape) > 0.5
    return Distribution2D(axis_a=centers_a, axis_b=centers_b, values=values,
                          kind=kind, mask=mask)


# -- Gaussian-surface fitting -------------------------------------------------

@dataclass(frozen=True)
class FitParams:
    """Widths of a log-quadratic surface fit.

    form "symmetric_pm" fits amplitude * exp(-(x+y)^2 / 2 sigma_plus^2
    - (x-y)^2 / 2 sigma_minus^2); form "conditional" fits
    amplitude * exp(-x^2 / 2 sigma_1^2 + x y / 2 sigma_12^2
    - y^2 / 2 sigma_2^2). residual is the rms misfit of log values over
    the included samples.
    """

    form: str
    amplitude: float
    residual: float
    sigma_plus: float | None = None
    sigma_minus: float | None = None
    sigma_1: float | None = None
    sigma_2: float | None = None
    sigma_12: float | None = None

    def surface(self, x, y):
        """Evaluate the fitted model surface; vectorized."""
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        if self.form == "symmetric_pm":
            expo = ((x + y) ** 2 / (2.0 * self.sigma_plus ** 2)
                    + (x - y) ** 2 / (2.0 * self.sigma_minus ** 2))
        else:
            expo = (x ** 2 / (2.0 * self.sigma_1 ** 2)
                    - x * y / (2.0 * self.sigma_12 ** 2)
                    + y ** 2 / (2.0 * self.sigma_2 ** 2))
        return self.amplitude * np.exp(-expo)


def _design_matrix(form: str, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if form == "symmetric_pm":
        return np.column_stack([np.ones_like(x), -(x + y) ** 2, -(x - y) ** 2])
    return np.column_stack([np.ones_like(x), -x ** 2, x * y, -y ** 2])


def fit_surface(dist: Distribution2D, form: str = "symmetric_pm", *,
                threshold: float = DEFAULT_THRESHOLD,
                window: float | None = None,
                value_weighted: bool = True) -> FitParams:
    """Least-squares widths of a tabulated surface.

    Samples below threshold * max (or masked, or outside |center| <= window)
    are excluded; the remaining log values are fit by weighted linear least
    squares with weights proportional to the sample value, which keeps the
    high signal region in charge of the curvature.
    """
    if form not in ("symmetric_pm", "conditional"):
        raise DomainError(f"unknown fit form {form!r}")
    xg, yg = dist.meshgrid()
    values = dist.values
    keep = ~dist.mask & np.isfinite(values) & (values > 0.0)
    if window is not None:
        keep &= (np.abs(xg) <= window) & (np.abs(yg) <= window)
    if not keep.any():
        raise InsufficientSupport("no usable samples")
    keep &= values >= threshold * values[keep].max()
    x, y, v = xg[keep], yg[keep], values[keep]
    if v.size < MIN_SAMPLES:
        raise InsufficientSupport(f"only {v.size} samples above threshold")

    design = _design_matrix(form, x, y)
    target = np.log(v)
    sqrt_w = np.sqrt(v) if value_weighted else np.ones_like(v)
    coef, *_ = np.linalg.lstsq(design * sqrt_w[:, None], target * sqrt_w,
                               rcond=None)
    curvatures = coef[1:]
    if np.any(curvatures <= 0.0):
        raise NonPositiveCurvature(f"fitted curvatures {curvatures}")
    residual = float(np.sqrt(np.mean((design @ coef - target) ** 2)))
    amplitude = float(np.exp(coef[0]))
    sigmas = 1.0 / np.sqrt(2.0 * curvatures)
    if form == "symmetric_pm":
        return FitParams(form=form, amplitude=amplitude, residual=residual,
                         sigma_plus=float(sigmas[0]), sigma_minus=float(sigmas[1]))
    return FitParams(form=form, amplitude=amplitude, residual=residual,
                     sigma_1=float(sigmas[0]), sigma_12=float(sigmas[1]),
                     sigma_2=float(sigmas[2]))


# -- widths versus coupling -----------------------------------------------------

@dataclass(frozen=True)
class SigmaRow:
    """Fitted or analytic widths at one coupling strength."""

    alpha: float
    sigma_plus: float | None = None
    sigma_minus: float | None = None
    sigma_1: float | None = None
    sigma_2: float | None = None
    sigma_12: float | None = None


def _scan_axes(model: OscillatorModel, extent: float, steps: int):
    return np.linspace(-extent, extent, steps)


def sigma_vs_alpha_scan(alphas, *, which: str = "classical",
                        half_width: float = 0.25, extent: float = 4.0,
                        steps: int = 33, n_bins: int | None = None,
                        workers: int = 1) -> list[SigmaRow]:
    """Widths of the chosen surfaces tabulated against the coupling.

    which selects the branch: "small_a_analytic" evaluates the closed-form
    classical widths; "classical" fits the numeric joint and conditional
    probability maps at the given region half width; "quantum" fits the
    numeric entanglement map. Fit failures propagate.
    """
    rows = []
    for alpha in alphas:
        model = OscillatorModel(alpha=alpha)
        if which == "small_a_analytic":
            analytic: ClassicalWidths = classical_widths(model)
            rows.append(SigmaRow(alpha=alpha, sigma_plus=analytic.sigma_plus,
                                 sigma_minus=analytic.sigma_minus,
                                 sigma_1=analytic.sigma_1,
                                 sigma_2=analytic.sigma_2,
                                 sigma_12=analytic.sigma_12))
            continue
        centers = _scan_axes(model, extent, steps)
        if which == "classical":
            joint = probability_map(model, centers, centers, half_width,
                                    kind="joint_probability", workers=workers)
            pm_fit = fit_surface(joint, "symmetric_pm")
            conditional = probability_map(model, centers, centers, half_width,
                                          kind="conditional_probability",
                                          workers=workers)
            cond_fit = fit_surface(conditional, "conditional")
            rows.append(SigmaRow(alpha=alpha, sigma_plus=pm_fit.sigma_plus,
                                 sigma_minus=pm_fit.sigma_minus,
                                 sigma_1=cond_fit.sigma_1,
                                 sigma_2=cond_fit.sigma_2,
                                 sigma_12=cond_fit.sigma_12))
        elif which == "quantum":
            spec = DiscretizationSpec(n_bins=n_bins) if n_bins else None
            surface = entanglement_map(model, centers, centers_b=centers,
                                       half_width=half_width, spec=spec,
                                       workers=workers)
            pm_fit = fit_surface(surface, "symmetric_pm")
            rows.append(SigmaRow(alpha=alpha, sigma_plus=pm_fit.sigma_plus,
                                 sigma_minus=pm_fit.sigma_minus))
        else:
            raise DomainError(f"unknown scan branch {which!r}")
    return rows
