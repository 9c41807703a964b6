import numpy as np
import pytest

from discordlim import koashi_winter as kw
from discordlim import linalg as la
from discordlim.correlations import classical_correlation

SY = np.array([[0, -1j], [1j, 0]])


def pure_concurrence_reference(vec):
    """Spin-flip overlap |<psi| sy x sy |psi*>| for a pure two-qubit state."""
    return abs(np.vdot(vec, np.kron(SY, SY) @ vec.conj()))


class TestExampleState:
    def test_theta_zero_is_classical_pair(self):
        rho = kw.example_state(0.0)
        expected = np.zeros((4, 4))
        expected[0, 0] = expected[3, 3] = 0.5
        assert np.allclose(rho.mat, expected, atol=1e-12)

    def test_theta_quarter_pi_is_product(self):
        rho = kw.example_state(np.pi / 4)
        plus = np.full((2, 2), 0.5)
        assert np.allclose(rho.mat, la.tensor(np.eye(2) / 2, plus), atol=1e-12)

    def test_branch_overlap_is_sin_two_theta(self):
        for theta in np.linspace(0, np.pi / 4, 50):
            psi, phi = kw.example_branches(theta)
            assert np.vdot(psi.vec, phi.vec).real == pytest.approx(np.sin(2 * theta), abs=1e-12)

    def test_rank_at_most_two(self):
        vals = np.linalg.eigvalsh(kw.example_state(0.2).mat)
        assert np.sum(vals > 1e-10) <= 2

    def test_range_enforced(self):
        with pytest.raises(ValueError):
            kw.example_state(-0.1)
        with pytest.raises(ValueError):
            kw.example_state(np.pi / 2)


class TestConcurrence:
    def test_bell_state(self):
        bell = la.StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2), (2, 2)).to_density()
        assert kw.concurrence(bell) == pytest.approx(1.0, abs=1e-9)

    def test_product_pure_state(self):
        a = la.random_pure_state(2, 1).vec
        b = la.random_pure_state(2, 2).vec
        rho = la.StateVector(np.kron(a, b), (2, 2)).to_density()
        assert kw.concurrence(rho) == pytest.approx(0.0, abs=1e-8)

    def test_schmidt_form_pure_states(self):
        for seed in range(20):
            rng = np.random.default_rng(seed)
            a = rng.uniform(0, 1)
            b = np.sqrt(1 - a * a)
            vec = np.array([a, 0, 0, b])
            rho = la.StateVector(vec, (2, 2)).to_density()
            assert kw.concurrence(rho) == pytest.approx(2 * a * b, abs=1e-9)
            assert kw.concurrence(rho) == pytest.approx(pure_concurrence_reference(vec), abs=1e-9)

    def test_random_pure_matches_spin_flip_overlap(self):
        for seed in range(50):
            psi = la.random_pure_state(4, seed)
            rho = la.DensityMatrix(psi.to_density().mat, (2, 2))
            assert kw.concurrence(rho) == pytest.approx(
                pure_concurrence_reference(psi.vec), abs=1e-8
            )

    def test_local_unitary_invariance(self):
        for seed in range(50):
            rho = la.DensityMatrix(la.random_density_matrix(4, seed), (2, 2))
            u = la.tensor(la.random_unitary(2, seed + 1), la.random_unitary(2, seed + 2))
            rot = la.DensityMatrix(la.hermitianize(u @ rho.mat @ u.conj().T), (2, 2))
            assert abs(kw.concurrence(rho) - kw.concurrence(rot)) < 1e-8

    def test_wrong_dimension(self):
        with pytest.raises(ValueError):
            kw.concurrence(la.DensityMatrix(np.eye(2) / 2, (2,)))


class TestEntanglementOfFormation:
    def test_separable_and_maximal(self):
        a = la.random_pure_state(2, 5).vec
        b = la.random_pure_state(2, 6).vec
        prod = la.StateVector(np.kron(a, b), (2, 2)).to_density()
        assert kw.entanglement_of_formation(prod) == pytest.approx(0.0, abs=1e-6)
        bell = la.StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2), (2, 2)).to_density()
        assert kw.entanglement_of_formation(bell) == pytest.approx(1.0, abs=1e-9)

    def test_concurrence_06_maps_to_h_09(self):
        # C=0.6: h((1+0.8)/2) = h(0.9).
        vec = np.zeros(4)
        # alpha|00> + beta|11> with 2 alpha beta = 0.6
        alpha = np.sqrt((1 + np.sqrt(1 - 0.36)) / 2)
        beta = 0.3 / alpha
        vec[0], vec[3] = alpha, beta
        rho = la.StateVector(vec, (2, 2)).to_density()
        assert kw.entanglement_of_formation(rho) == pytest.approx(
            la.binary_entropy(0.9), abs=1e-9
        )

    def test_pure_state_equals_reduction_entropy(self):
        for seed in range(50):
            psi = la.random_pure_state(4, seed + 100)
            rho = la.DensityMatrix(psi.to_density().mat, (2, 2))
            s_red = la.von_neumann_entropy(la.partial_trace(rho, [0]))
            assert kw.entanglement_of_formation(rho) == pytest.approx(s_red, abs=1e-8)

    def test_monotone_in_concurrence(self):
        cs = np.linspace(0, 1, 50)
        efs = [la.binary_entropy((1 + np.sqrt(1 - c * c)) / 2) for c in cs]
        assert all(efs[i + 1] >= efs[i] - 1e-12 for i in range(len(efs) - 1))


class TestClassicalCorrelationKw:
    def test_endpoints(self):
        assert kw.classical_correlation_kw(kw.example_state(0.0)) == pytest.approx(1.0, abs=1e-9)
        assert kw.classical_correlation_kw(kw.example_state(np.pi / 4)) == pytest.approx(
            0.0, abs=1e-9
        )

    def test_agrees_with_optimizer_at_pi_over_8(self):
        rho = kw.example_state(np.pi / 8)
        assert kw.classical_correlation_kw(rho) == pytest.approx(
            classical_correlation(rho).classical_info, abs=1e-4
        )

    def test_dual_route_agreement_on_coarse_grid(self):
        for theta in np.linspace(0, np.pi / 4, 26):
            rho = kw.example_state(theta)
            v_kw = kw.classical_correlation_kw(rho)
            v_opt = classical_correlation(rho).classical_info
            assert abs(v_kw - v_opt) < 1e-4
            assert -1e-9 <= v_kw <= la.von_neumann_entropy(la.partial_trace(rho, [0])) + 1e-9

    def test_monotone_nonincreasing(self):
        grid = np.linspace(0, np.pi / 4, 101)
        vals = [kw.classical_correlation_kw(kw.example_state(t)) for t in grid]
        assert all(vals[i + 1] <= vals[i] + 1e-9 for i in range(len(vals) - 1))
        assert vals[0] == pytest.approx(1.0, abs=1e-9)
        assert vals[-1] == pytest.approx(0.0, abs=1e-9)

    def test_rejects_high_rank(self):
        rho = la.DensityMatrix(la.random_density_matrix(4, 9), (2, 2))
        with pytest.raises(ValueError):
            kw.classical_correlation_kw(rho)

    def test_rejects_non_qubit_system(self):
        rho = la.DensityMatrix(la.random_density_matrix(6, 9, rank=2), (3, 2))
        with pytest.raises(ValueError):
            kw.classical_correlation_kw(rho)

    def test_pure_input_gives_reduction_entropy(self):
        psi = la.random_pure_state(4, 77)
        rho = la.DensityMatrix(psi.to_density().mat, (2, 2))
        s_red = la.von_neumann_entropy(la.partial_trace(rho, [0]))
        assert kw.classical_correlation_kw(rho) == pytest.approx(s_red, abs=1e-9)
