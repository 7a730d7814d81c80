import math

import numpy as np
import pytest

from meesgen import (
    DegenerateGround,
    DensePureState,
    EmptySpectrum,
    NonMonotone,
    OutOfRange,
    SchmidtState,
    Spectrum,
    build_system,
    embed,
    energy_expectation,
    entanglement_entropy,
    load_system,
    mees_from_beta,
    partition_function,
    schmidt_entropy,
    solve_beta_g,
)
from meesgen.system import gibbs_entropy

from support import random_schmidt


class TestBuildSystem:
    def test_reference_system_diagonal_energies(self, reference_system):
        assert np.allclose(reference_system.diag_energies, [0.0, 3.0, 10.0])
        assert reference_system.n_s == 12

    def test_two_identical_qubits(self):
        sys = build_system(Spectrum((0, 1)), Spectrum((0, 1)))
        assert np.allclose(sys.diag_energies, [0.0, 2.0])

    def test_degenerate_ground_rejected(self):
        with pytest.raises(DegenerateGround):
            build_system(Spectrum((0, 0, 1)), Spectrum((0, 1)))

    def test_short_spectrum_rejected(self):
        with pytest.raises(EmptySpectrum):
            Spectrum((0,))

    def test_argument_swap_recorded(self):
        sys = build_system(Spectrum((0, 1, 6, 9)), Spectrum((0, 2, 4)))
        assert sys.swapped
        assert sys.n_a == 3
        assert np.allclose(sys.diag_energies, [0.0, 3.0, 10.0])


class TestEntropies:
    def test_product_state_zero(self, reference_system):
        amp = np.zeros(12, dtype=complex)
        amp[0] = 1.0
        assert entanglement_entropy(DensePureState(amp), reference_system) == pytest.approx(0.0, abs=1e-12)

    def test_bell_state(self, reference_system):
        amp = np.zeros(12, dtype=complex)
        amp[reference_system.diag_index(0)] = 1 / np.sqrt(2)
        amp[reference_system.diag_index(1)] = 1 / np.sqrt(2)
        assert entanglement_entropy(DensePureState(amp), reference_system) == pytest.approx(math.log(2), abs=1e-12)

    def test_against_reduced_density_matrix_oracle(self, reference_system):
        rng = np.random.default_rng(11)
        for _ in range(20):
            z = rng.standard_normal(12) + 1j * rng.standard_normal(12)
            state = DensePureState(z / np.linalg.norm(z))
            # oracle: build rho_A explicitly and diagonalize
            mat = state.amplitudes.reshape(3, 4)
            rho_a = mat @ mat.conj().T
            p = np.linalg.eigvalsh(rho_a)
            p = p[p > 1e-14]
            oracle = -(p * np.log(p)).sum()
            assert entanglement_entropy(state, reference_system) == pytest.approx(oracle, abs=1e-10)

    def test_schmidt_entropy_values(self):
        assert schmidt_entropy(SchmidtState((1.0, 0.0, 0.0))) == 0.0
        assert schmidt_entropy(SchmidtState((1 / 3, 1 / 3, 1 / 3))) == pytest.approx(math.log(3), abs=1e-12)
        assert schmidt_entropy(SchmidtState((0.7, 0.3))) == pytest.approx(0.6108643020548935, abs=1e-12)

    def test_schmidt_matches_embedded_entropy(self, reference_system):
        rng = np.random.default_rng(5)
        for _ in range(20):
            s = random_schmidt(3, rng)
            emb = embed(s, reference_system)
            assert entanglement_entropy(emb, reference_system) == pytest.approx(schmidt_entropy(s), abs=1e-10)


class TestPartitionFunction:
    def test_beta_zero_counts_levels(self, reference_system):
        assert partition_function(reference_system, 0.0) == pytest.approx(3.0)

    def test_large_beta_ground_term(self, reference_system):
        assert partition_function(reference_system, 1e4) == pytest.approx(1.0)

    def test_direct_sum(self, reference_system):
        expect = 1.0 + math.exp(-1.5) + math.exp(-5.0)
        assert partition_function(reference_system, 0.5) == pytest.approx(expect, rel=1e-14)


class TestMeesSolver:
    def test_near_maximal_entanglement(self, reference_system):
        sol = solve_beta_g(reference_system, math.log(3) - 1e-9)
        assert sol.beta_g < 1e-4
        assert np.allclose(sol.state.weights, 1 / 3, atol=1e-4)

    def test_near_zero_entanglement(self, reference_system):
        sol = solve_beta_g(reference_system, 1e-8)
        assert sol.state.weights[0] > 1 - 1e-6
        assert sol.e_g == pytest.approx(0.0, abs=1e-6)

    def test_grid_scan_oracle(self, reference_system):
        target = 0.5 * math.log(3)
        sol = solve_beta_g(reference_system, target)
        betas = np.arange(0.0, 5.0, 1e-5)
        e = reference_system.diag_energies
        w = np.exp(-np.outer(betas, e))
        w /= w.sum(axis=1, keepdims=True)
        s = -(w * np.log(np.clip(w, 1e-300, None))).sum(axis=1)
        beta_oracle = betas[np.argmin(np.abs(s - target))]
        assert sol.beta_g == pytest.approx(beta_oracle, abs=1e-4)

    def test_entropy_tolerance(self, reference_system):
        for frac in np.linspace(0.01, 0.99, 100):
            target = frac * math.log(3)
            sol = solve_beta_g(reference_system, target)
            assert schmidt_entropy(sol.state) == pytest.approx(target, abs=1e-8)

    def test_weights_are_thermal(self, reference_system):
        sol = solve_beta_g(reference_system, 0.7)
        e = reference_system.diag_energies
        expect = np.exp(-sol.beta_g * e) / sol.z_g
        assert np.allclose(sol.state.weights, expect, atol=1e-10)

    def test_out_of_range(self, reference_system):
        with pytest.raises(OutOfRange):
            solve_beta_g(reference_system, 0.0)
        with pytest.raises(OutOfRange):
            solve_beta_g(reference_system, math.log(3))

    def test_degenerate_diagonal_rejected(self):
        from meesgen.system import solve_beta_for_entropy

        with pytest.raises(NonMonotone):
            solve_beta_for_entropy(np.array([1.0, 1.0, 1.0]), 0.5)

    def test_entropy_monotone_in_beta(self, reference_system):
        e = reference_system.diag_energies
        betas = np.linspace(0.0, 10.0, 400)
        s = np.array([gibbs_entropy(e, b) for b in betas])
        assert np.all(np.diff(s) < 0)

    def test_mees_from_beta_inverse(self, reference_system):
        sol = mees_from_beta(reference_system, 0.7)
        round_trip = solve_beta_g(reference_system, sol.entanglement)
        assert round_trip.beta_g == pytest.approx(0.7, abs=1e-8)


class TestEmbedAndEnergy:
    def test_single_component(self, reference_system):
        s = SchmidtState((1.0, 0.0, 0.0), (0.3, 0.0, 0.0))
        emb = embed(s, reference_system)
        assert emb.amplitudes[0] == pytest.approx(np.exp(0.3j))
        assert energy_expectation(emb, reference_system) == pytest.approx(0.0)

    def test_bell_embedding(self, two_qubit_system):
        s = SchmidtState((0.5, 0.5))
        emb = embed(s, two_qubit_system)
        assert emb.amplitudes[0] == pytest.approx(1 / np.sqrt(2))
        assert emb.amplitudes[3] == pytest.approx(1 / np.sqrt(2))

    def test_mees_energy_consistency(self, reference_system):
        # Two formulas for the same energy: -d(ln Z)/d(beta) vs direct sum
        for target in np.linspace(0.05, 0.95, 25) * math.log(3):
            sol = solve_beta_g(reference_system, target)
            direct = energy_expectation(embed(sol.state, reference_system), reference_system)
            assert direct == pytest.approx(sol.e_g, abs=1e-10)

    def test_uniform_superposition_mean_energy(self, reference_system):
        amp = np.full(12, 1 / np.sqrt(12), dtype=complex)
        expect = reference_system.h0_diagonal.mean()
        assert energy_expectation(DensePureState(amp), reference_system) == pytest.approx(expect)

    def test_round_trip_entanglement(self, reference_system):
        target = 0.5 * math.log(3)
        sol = solve_beta_g(reference_system, target)
        assert entanglement_entropy(embed(sol.state, reference_system), reference_system) == pytest.approx(
            target, abs=1e-8
        )


def test_json_load(tmp_path):
    path = tmp_path / "system.json"
    path.write_text('{"spectrum_a": [0, 2, 4], "spectrum_b": [0, 1, 6, 9]}')
    sys = load_system(str(path))
    assert sys.n_a == 3 and sys.n_b == 4
    assert np.allclose(sys.diag_energies, [0, 3, 10])
