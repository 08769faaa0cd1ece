import math

import numpy as np
import pytest

from entloc.errors import DomainError, ZeroNormSubspace
from entloc.linalg import DensityMatrix, eigen_symmetric, von_neumann_entropy
from entloc.spin import (
    MsProjector,
    build_mixed_state,
    build_pure_state,
    ms0_outcome_branches,
    negativity_vanish_point,
    restrict_ms0,
    spin_entropy,
    spin_negativity,
    spin_scan,
    survival_probability,
)

QUARTER = math.pi / 4.0


def analytic_restricted(theta1, theta2):
    """Independent construction of the filtered state.

    Only the cross terms (pair one up-up with pair two down-down and vice
    versa) put each party in the zero-moment subspace; basis indices 5 and
    10 in the (A1, A2, B1, B2) ordering.
    """
    amp_a = math.cos(theta1) * math.sin(theta2)
    amp_b = math.sin(theta1) * math.cos(theta2)
    vec = np.zeros(16)
    vec[0b0101] = amp_a
    vec[0b1010] = amp_b
    norm = math.hypot(amp_a, amp_b)
    return vec / norm, norm**2


class TestSpinModel:
    def test_state_builders(self):
        from entloc.spin import SpinModel
        model = SpinModel(theta1=0.3, theta2=1.1, F=0.7)
        assert np.allclose(model.pure_state(), build_pure_state(0.3, 1.1))
        assert np.allclose(model.mixed_state().elements,
                           build_mixed_state(0.3, 1.1, 0.7).elements)

    def test_purity_domain(self):
        from entloc.spin import SpinModel
        with pytest.raises(DomainError):
            SpinModel(theta1=0.0, theta2=0.0, F=0.01)


class TestPureState:
    def test_aligned_angles_give_basis_state(self):
        psi = build_pure_state(0.0, 0.0)
        expected = np.zeros(16)
        expected[0] = 1.0
        assert np.allclose(psi, expected)

    def test_double_bell_amplitudes(self):
        psi = build_pure_state(QUARTER, QUARTER)
        nonzero = np.nonzero(psi)[0]
        assert list(nonzero) == [0, 5, 10, 15]
        assert np.allclose(psi[nonzero], 0.5)

    def test_unit_norm(self):
        rng = np.random.default_rng(123)
        for theta1, theta2 in rng.uniform(0, 2 * math.pi, size=(10, 2)):
            psi = build_pure_state(theta1, theta2)
            assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)

    def test_double_bell_marginal_maximally_mixed(self):
        # brute-force partial trace of the 16-component vector
        psi = build_pure_state(QUARTER, QUARTER)
        rho = np.outer(psi, psi)
        marginal = np.zeros((4, 4))
        for i_a in range(4):
            for j_a in range(4):
                marginal[i_a, j_a] = sum(rho[4 * i_a + k, 4 * j_a + k]
                                         for k in range(4))
        assert np.allclose(marginal, np.eye(4) / 4.0, atol=1e-12)
        from entloc.linalg import reduce_to_party
        reduced = reduce_to_party(DensityMatrix.from_state(psi), (4, 4), "A")
        assert np.allclose(reduced.elements, marginal, atol=1e-14)


class TestProjectors:
    def test_idempotent(self):
        for party in ("A", "B"):
            p = MsProjector.build(party).matrix
            assert np.array_equal(p @ p, p)

    def test_ranks(self):
        p_a = MsProjector.build("A").matrix
        p_b = MsProjector.build("B").matrix
        assert np.linalg.matrix_rank(p_a) == 8
        assert np.linalg.matrix_rank(p_b) == 8
        assert np.linalg.matrix_rank(p_a @ p_b) == 4


class TestMixedState:
    def test_pure_limit(self):
        psi = build_pure_state(0.3, 1.1)
        rho = build_mixed_state(0.3, 1.1, 1.0)
        assert np.allclose(rho.elements, np.outer(psi, psi), atol=1e-14)

    def test_maximally_mixed_limit(self):
        rho = build_mixed_state(0.3, 1.1, 1.0 / 16.0)
        assert np.allclose(rho.elements, np.eye(16) / 16.0, atol=1e-14)
        assert spin_negativity(0.3, 1.1, 1.0 / 16.0) <= 1e-12

    def test_trace_and_positivity(self):
        for f in (1.0 / 16.0, 0.25, 0.6, 1.0):
            rho = build_mixed_state(QUARTER, 0.2, f)
            assert rho.trace == pytest.approx(1.0, abs=1e-12)
            lam = eigen_symmetric(rho).eigenvalues
            assert lam[-1] >= -1e-12

    def test_domain_error(self):
        with pytest.raises(DomainError):
            build_mixed_state(0.1, 0.1, 0.02)
        with pytest.raises(DomainError):
            build_mixed_state(0.1, 0.1, 1.01)


class TestRestriction:
    def test_double_bell_projection(self):
        psi, p = restrict_ms0(build_pure_state(QUARTER, QUARTER))
        assert p == pytest.approx(0.5, abs=1e-12)
        expected = np.zeros(16)
        expected[0b0101] = expected[0b1010] = 1.0 / math.sqrt(2.0)
        assert np.allclose(psi, expected, atol=1e-12)

    def test_single_survivor_is_product(self):
        psi, _ = restrict_ms0(build_pure_state(QUARTER, 0.0))
        assert spin_entropy(QUARTER, 0.0, restricted=True) == \
            pytest.approx(0.0, abs=1e-12)
        assert np.count_nonzero(np.abs(psi) > 1e-14) == 1

    def test_singularity(self):
        with pytest.raises(ZeroNormSubspace):
            restrict_ms0(build_pure_state(0.0, 0.0))

    def test_matches_analytic_form(self):
        rng = np.random.default_rng(7)
        count = 0
        while count < 100:
            theta1, theta2 = rng.uniform(0, 2 * math.pi, size=2)
            if 1.0 - math.cos(2 * theta1) * math.cos(2 * theta2) <= 1e-3:
                continue
            count += 1
            psi, p = restrict_ms0(build_pure_state(theta1, theta2))
            expected, expected_p = analytic_restricted(theta1, theta2)
            # global sign is irrelevant
            sign = 1.0 if np.dot(psi, expected) >= 0 else -1.0
            assert np.allclose(psi, sign * expected, atol=1e-12)
            assert p == pytest.approx(expected_p, abs=1e-12)

    def test_survival_probability_analytic(self):
        rng = np.random.default_rng(11)
        for theta1, theta2 in rng.uniform(0, 2 * math.pi, size=(50, 2)):
            p_analytic = survival_probability(theta1, theta2)
            if p_analytic < 1e-9:
                continue
            _, p = restrict_ms0(build_pure_state(theta1, theta2))
            assert p == pytest.approx(p_analytic, abs=1e-12)

    def test_mixed_state_restriction(self):
        rho, p = restrict_ms0(build_mixed_state(QUARTER, QUARTER, 0.5))
        assert rho.trace == pytest.approx(1.0, abs=1e-12)
        assert 0.0 < p < 1.0


class TestEntropy:
    def test_double_bell_two_ebits(self):
        assert spin_entropy(QUARTER, QUARTER) == pytest.approx(2.0, abs=1e-12)

    def test_one_bell_pair(self):
        assert spin_entropy(QUARTER, 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_restricted_single_ebit(self):
        assert spin_entropy(QUARTER, QUARTER, restricted=True) == \
            pytest.approx(1.0, abs=1e-12)

    def test_restricted_maximum_on_equal_angles(self):
        for theta in (0.3, 0.8, 1.2, 2.0):
            assert spin_entropy(theta, theta, restricted=True) == \
                pytest.approx(1.0, abs=1e-9)
            assert spin_entropy(theta + math.pi, theta, restricted=True) == \
                pytest.approx(1.0, abs=1e-9)


class TestNegativity:
    def test_pure_unrestricted(self):
        assert spin_negativity(QUARTER, QUARTER, 1.0) == \
            pytest.approx(1.5, abs=1e-12)

    def test_pure_restricted(self):
        assert spin_negativity(QUARTER, QUARTER, 1.0, restricted=True) == \
            pytest.approx(0.5, abs=1e-12)

    def test_boundary_value(self):
        assert spin_negativity(QUARTER, QUARTER, 0.25) <= 1e-6
        assert spin_negativity(QUARTER, QUARTER, 0.25, restricted=True) <= 1e-6

    def test_monotone_in_purity(self):
        values = [spin_negativity(QUARTER, QUARTER, f)
                  for f in np.arange(1.0 / 16.0, 1.0 + 1e-9, 0.01)]
        assert np.all(np.diff(values) >= -1e-12)

    def test_vanish_point(self):
        assert negativity_vanish_point(QUARTER, QUARTER) == \
            pytest.approx(0.25, abs=1e-4)
        assert negativity_vanish_point(QUARTER, QUARTER, restricted=True) == \
            pytest.approx(0.25, abs=1e-4)


class TestOutcomeBranches:
    def test_probabilities_sum_to_one(self):
        branches = ms0_outcome_branches(build_pure_state(0.7, 1.9))
        assert sum(p for _, p, _ in branches) == pytest.approx(1.0, abs=1e-12)

    def test_cross_outcomes_empty(self):
        # each superposition term puts both parties in the same moment class
        branches = dict(((label, (p, state)) for label, p, state in
                         ms0_outcome_branches(build_pure_state(0.7, 1.9))))
        assert branches[(True, False)][0] <= 1e-12
        assert branches[(False, True)][0] <= 1e-12

    def test_concentration_inequality_on_grid(self):
        # averaging the conditional entanglement over all measurement
        # branches can never beat the unrestricted entanglement
        thetas = np.linspace(0.05, math.pi - 0.05, 12)
        for theta1 in thetas:
            for theta2 in thetas:
                psi = build_pure_state(theta1, theta2)
                total = spin_entropy(theta1, theta2)
                average = 0.0
                for _, p, state in ms0_outcome_branches(psi):
                    if state is None:
                        continue
                    rho = DensityMatrix.from_state(state)
                    from entloc.linalg import reduce_to_party
                    average += p * von_neumann_entropy(
                        reduce_to_party(rho, (4, 4), "A"))
                assert average <= total + 1e-9


class TestScan:
    def test_unrestricted_period_half_pi(self):
        thetas = np.linspace(0, 2 * math.pi, 32, endpoint=False)
        surface = spin_scan(thetas, thetas).values
        shift = 8  # pi/2 in grid steps
        assert np.abs(surface - np.roll(surface, shift, axis=0)).max() <= 1e-9
        assert np.abs(surface - np.roll(surface, shift, axis=1)).max() <= 1e-9

    def test_restricted_period_pi(self):
        thetas = np.linspace(0, 2 * math.pi, 32, endpoint=False)
        dist = spin_scan(thetas, thetas, restricted=True)
        surface = np.where(dist.mask, np.nan, dist.values)
        shift = 16  # pi in grid steps
        rolled = np.roll(surface, shift, axis=0)
        both = np.isfinite(surface) & np.isfinite(rolled)
        assert np.abs(surface[both] - rolled[both]).max() <= 1e-9
        # mask pattern itself must be pi-periodic
        assert np.array_equal(dist.mask, np.roll(dist.mask, shift, axis=0))
        # but the surface is NOT pi/2-periodic
        quarter = np.roll(surface, 8, axis=0)
        overlap = np.isfinite(surface) & np.isfinite(quarter)
        assert np.abs(surface[overlap] - quarter[overlap]).max() > 0.1

    def test_delta_positive_somewhere(self):
        thetas = np.linspace(0, 2 * math.pi, 32, endpoint=False)
        dist = spin_scan(thetas, thetas, restricted=True)
        assert np.nanmax(dist.extra["delta"]) > 0.0

    def test_singular_points_masked(self):
        thetas = np.linspace(0, math.pi, 8)  # includes 0 and pi
        dist = spin_scan(thetas, thetas, restricted=True)
        assert dist.mask[0, 0]
        assert np.isnan(dist.values[0, 0])
        assert not dist.mask[3, 3]

    def test_negativity_scan(self):
        thetas = np.linspace(0, math.pi, 8)
        dist = spin_scan(thetas, thetas, measure="negativity", F=0.65)
        assert dist.values.max() > 0.0
        assert dist.values.min() >= 0.0

    def test_grid_too_small(self):
        with pytest.raises(DomainError):
            spin_scan([0.1], [0.1, 0.2])

    def test_negativity_vs_purity_sweep(self):
        from entloc.spin import negativity_vs_purity
        f_values = np.linspace(1.0 / 16.0, 1.0, 16)
        for restricted in (False, True):
            dist = negativity_vs_purity(QUARTER, QUARTER, f_values,
                                        restricted=restricted)
            values = dist.values[:, 0]
            assert values[0] <= 1e-9            # maximally mixed
            assert values[-1] > 0.4             # pure
            assert np.all(np.diff(values) >= -1e-12)
            below = f_values <= 0.25
            assert np.all(values[below] <= 1e-9)
