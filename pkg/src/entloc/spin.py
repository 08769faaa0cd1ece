"""Four-qubit model: two entangled pairs shared between Alice and Bob.

Alice holds qubits (A1, A2), Bob holds (B1, B2); pair k is
cos(theta_k)|up up> + sin(theta_k)|down down> across the parties. The
spin analogue of a position-region filter is the projection of each
party's two spins onto the zero-total-z-component subspace
(span of |up down>, |down up>).

Basis convention: |up> = 0, |down> = 1, row index = 8 a1 + 4 a2 + 2 b1 + b2,
i.e. Alice's index is the most significant pair, so the A|B cut is the
(4, 4) split used by the partial transpose and partial trace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distribution import Distribution2D
from .errors import DomainError, ZeroNormSubspace
from .linalg import (
    DensityMatrix,
    negativity,
    reduce_to_party,
    von_neumann_entropy,
)

DIM = 16
SINGULAR_TRACE = 1e-12


@dataclass(frozen=True)
class SpinModel:
    """Pair angles plus the purity parameter of the isotropic admixture."""

    theta1: float
    theta2: float
    F: float = 1.0

    def __post_init__(self):
        if not 1.0 / 16.0 <= self.F <= 1.0:
            raise DomainError(f"F must lie in [1/16, 1], got {self.F}")

    def pure_state(self) -> np.ndarray:
        return build_pure_state(self.theta1, self.theta2)

    def mixed_state(self) -> "DensityMatrix":
        return build_mixed_state(self.theta1, self.theta2, self.F)


def _bits(index: int) -> tuple[int, int, int, int]:
    return (index >> 3) & 1, (index >> 2) & 1, (index >> 1) & 1, index & 1


def _ms0_diagonal(party: str) -> np.ndarray:
    keep = np.zeros(DIM)
    for i in range(DIM):
        a1, a2, b1, b2 = _bits(i)
        if party == "A":
            keep[i] = 1.0 if a1 != a2 else 0.0
        elif party == "B":
            keep[i] = 1.0 if b1 != b2 else 0.0
        else:
            raise ValueError(f"party must be 'A' or 'B', got {party!r}")
    return keep


@dataclass(frozen=True)
class MsProjector:
    """Projector restricting one party's two spins to total z-component zero."""

    party: str
    matrix: np.ndarray

    @staticmethod
    def build(party: str) -> "MsProjector":
        return MsProjector(party, np.diag(_ms0_diagonal(party)))


def build_pure_state(theta1: float, theta2: float) -> np.ndarray:
    """Unit-norm 16-component product of the two entangled pairs."""
    psi = np.zeros(DIM)
    for x, amp1 in ((0, math.cos(theta1)), (1, math.sin(theta1))):
        for y, amp2 in ((0, math.cos(theta2)), (1, math.sin(theta2))):
            psi[8 * x + 4 * y + 2 * x + y] = amp1 * amp2
    return psi


def build_mixed_state(theta1: float, theta2: float, F: float) -> DensityMatrix:
    """Pure projector blended with the maximally mixed state.

    rho = (16F - 1)/15 |psi><psi| + (1 - F)/15 * identity; F = 1 is pure,
    F = 1/16 is maximally mixed.
    """
    if not 1.0 / 16.0 <= F <= 1.0:
        raise DomainError(f"F must lie in [1/16, 1], got {F}")
    psi = build_pure_state(theta1, theta2)
    rho = (16.0 * F - 1.0) / 15.0 * np.outer(psi, psi) \
        + (1.0 - F) / 15.0 * np.eye(DIM)
    return DensityMatrix(rho)


def _joint_mask() -> np.ndarray:
    return _ms0_diagonal("A") * _ms0_diagonal("B")


def restrict_ms0(state):
    """Project both parties onto their zero-moment subspaces and renormalize.

    Accepts a pure state vector or a DensityMatrix. Returns the renormalized
    survivor together with the survival probability (squared norm or trace
    before renormalization). Raises ZeroNormSubspace when nothing survives,
    which for the pure state happens exactly at cos(2 theta1) cos(2 theta2) = 1.
    """
    mask = _joint_mask()
    if isinstance(state, DensityMatrix):
        projected = state.elements * np.outer(mask, mask)
        p = float(np.trace(projected).real)
        if p < SINGULAR_TRACE:
            raise ZeroNormSubspace(f"restricted trace {p:.3e} is numerically zero")
        return DensityMatrix(projected / p), p
    psi = np.asarray(state, dtype=np.float64)
    survivor = psi * mask
    p = float(survivor @ survivor)
    if p < SINGULAR_TRACE:
        raise ZeroNormSubspace(f"surviving norm^2 {p:.3e} is numerically zero")
    return survivor / math.sqrt(p), p


def ms0_outcome_branches(state: np.ndarray):
    """All four joint measurement branches of a pure state.

    Each party's measurement distinguishes zero total moment from the rest;
    the branches are labelled ((A in M_s=0?), (B in M_s=0?)). Returns a list
    of (label, probability, normalized branch state or None when the branch
    carries no weight).
    """
    psi = np.asarray(state, dtype=np.float64)
    mask_a = _ms0_diagonal("A")
    mask_b = _ms0_diagonal("B")
    branches = []
    for in_a in (True, False):
        sel_a = mask_a if in_a else 1.0 - mask_a
        for in_b in (True, False):
            sel_b = mask_b if in_b else 1.0 - mask_b
            branch = psi * sel_a * sel_b
            p = float(branch @ branch)
            if p < SINGULAR_TRACE:
                branches.append(((in_a, in_b), p, None))
            else:
                branches.append(((in_a, in_b), p, branch / math.sqrt(p)))
    return branches


def _pure_entropy(psi: np.ndarray) -> float:
    rho_a = reduce_to_party(DensityMatrix.from_state(psi), (4, 4), "A")
    return von_neumann_entropy(rho_a)


def spin_entropy(theta1: float, theta2: float, restricted: bool = False) -> float:
    """Entanglement entropy of Alice's pair, optionally after the moment filter."""
    psi = build_pure_state(theta1, theta2)
    if restricted:
        psi, _ = restrict_ms0(psi)
    return _pure_entropy(psi)


def spin_negativity(theta1: float, theta2: float, F: float,
                    restricted: bool = False) -> float:
    """Negativity of the (optionally filtered) mixed state across the A|B cut."""
    rho = build_mixed_state(theta1, theta2, F)
    if restricted:
        rho, _ = restrict_ms0(rho)
    return negativity(rho, (4, 4))


def survival_probability(theta1: float, theta2: float) -> float:
    """Probability that the pure state survives both moment filters.

    Equals (1 - cos 2 theta1 cos 2 theta2)/2.
    """
    return 0.5 * (1.0 - math.cos(2.0 * theta1) * math.cos(2.0 * theta2))


def negativity_vanish_point(theta1: float, theta2: float,
                            restricted: bool = False,
                            tol: float = 1e-6) -> float:
    """Purity parameter F below which the negativity vanishes.

    Located by bisection of negativity(F) against a 1e-9 floor; the
    negativity is non-decreasing in F.
    """
    threshold = 1e-9
    lo, hi = 1.0 / 16.0, 1.0
    if spin_negativity(theta1, theta2, hi, restricted) <= threshold:
        return hi
    if spin_negativity(theta1, theta2, lo, restricted) > threshold:
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if spin_negativity(theta1, theta2, mid, restricted) > threshold:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def negativity_vs_purity(theta1: float, theta2: float, f_values, *,
                         restricted: bool = False) -> Distribution2D:
    """Negativity swept over the purity parameter at fixed angles.

    Returns a single-column surface whose first axis is F; singular
    restricted points are masked.
    """
    f_values = np.asarray(f_values, dtype=np.float64)
    values = np.full((f_values.size, 1), np.nan)
    prob = np.ones((f_values.size, 1))
    mask = np.zeros((f_values.size, 1), dtype=bool)
    for i, f in enumerate(f_values):
        try:
            values[i, 0] = spin_negativity(theta1, theta2, f,
                                           restricted=restricted)
            if restricted:
                _, prob[i, 0] = restrict_ms0(build_mixed_state(theta1, theta2, f))
        except ZeroNormSubspace:
            mask[i, 0] = True
            prob[i, 0] = 0.0
    return Distribution2D(axis_a=f_values, axis_b=np.array([theta1]),
                          values=values, kind="entanglement", mask=mask,
                          axis_names=("F", "theta1"), extra={"prob": prob})


def spin_scan(theta1_values, theta2_values, *, measure: str = "entropy",
              restricted: bool = False, F: float = 1.0) -> Distribution2D:
    """Tabulate an entanglement surface over a (theta1, theta2) grid.

    measure is "entropy" (pure state) or "negativity" (mixed state at F).
    Restricted scans also carry the difference to the unrestricted surface
    as extra layer "delta" and the survival probability as "prob";
    singular grid points become NaN cells flagged in the mask.
    """
    t1 = np.asarray(theta1_values, dtype=np.float64)
    t2 = np.asarray(theta2_values, dtype=np.float64)
    if t1.size < 2 or t2.size < 2:
        raise DomainError("scan grid needs at least 2 steps per axis")
    if measure not in ("entropy", "negativity"):
        raise DomainError(f"unknown measure {measure!r}")

    shape = (t1.size, t2.size)
    values = np.full(shape, np.nan)
    base = np.full(shape, np.nan)
    prob = np.ones(shape)
    mask = np.zeros(shape, dtype=bool)

    for i, a in enumerate(t1):
        for j, b in enumerate(t2):
            if measure == "entropy":
                base[i, j] = spin_entropy(a, b, restricted=False)
            else:
                base[i, j] = spin_negativity(a, b, F, restricted=False)
            if not restricted:
                values[i, j] = base[i, j]
                continue
            try:
                if measure == "entropy":
                    psi, p = restrict_ms0(build_pure_state(a, b))
                    values[i, j] = _pure_entropy(psi)
                else:
                    rho, p = restrict_ms0(build_mixed_state(a, b, F))
                    values[i, j] = negativity(rho, (4, 4))
                prob[i, j] = p
            except ZeroNormSubspace:
                mask[i, j] = True
                prob[i, j] = 0.0

    extra = {"prob": prob}
    if restricted:
        extra["delta"] = values - base
    return Distribution2D(axis_a=t1, axis_b=t2, values=values,
                          kind="entanglement", mask=mask,
                          axis_names=("theta1", "theta2"), extra=extra)
