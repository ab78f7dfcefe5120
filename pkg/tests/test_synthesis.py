"""Tests for gate diagonalization and controller synthesis."""

from __future__ import annotations

import numpy as np
import pytest

from hologate.errors import StructuralInputError, SynthesisError
from hologate.extremal import analytic_length
from hologate.gates import UnitaryGate, gate_catalog
from hologate.synthesis import (
    GateSpectrum,
    analytic_holonomy,
    build_controller,
    diagonalize_gate,
    mode_parameters,
    synthesize,
)
from randmat import random_unitary

TWO_PI = 2.0 * np.pi


class TestDiagonalizeGate:
    def test_identity(self):
        spectrum = diagonalize_gate(gate_catalog("identity", 3))
        assert np.array_equal(spectrum.gammas, np.zeros(3))
        u = gate_catalog("identity", 3).u
        residual = spectrum.r.conj().T @ u @ spectrum.r - np.eye(3)
        assert np.linalg.norm(residual) < 1e-12

    def test_already_diagonal(self):
        spectrum = diagonalize_gate(UnitaryGate(np.diag([1.0, -1.0]).astype(complex)))
        assert spectrum.gammas == pytest.approx([0.0, np.pi], abs=1e-12)
        # columns may be permuted or rephased, but each must stay an eigenvector
        assert np.abs(np.abs(spectrum.r) - np.eye(2)).max() < 1e-12

    def test_cnot_spectrum(self):
        # independent oracle: CNOT is a reflection, eigenvalues {1, 1, 1, -1}
        gate = gate_catalog("cnot")
        oracle = np.sort(np.angle(np.linalg.eigvals(gate.u)) % TWO_PI)
        spectrum = diagonalize_gate(gate)
        assert spectrum.gammas == pytest.approx(oracle, abs=1e-9)
        assert spectrum.gammas == pytest.approx([0.0, 0.0, 0.0, np.pi], abs=1e-9)

    def test_random_gates_reconstruct(self):
        rng = np.random.default_rng(300)
        for k in (1, 2, 3, 5):
            for _ in range(5):
                gate = UnitaryGate(random_unitary(rng, k))
                spectrum = diagonalize_gate(gate)
                d = np.diag(np.exp(1j * spectrum.gammas))
                residual = spectrum.r.conj().T @ gate.u @ spectrum.r - d
                assert np.linalg.norm(residual) <= 1e-9
                assert np.all(np.diff(spectrum.gammas) >= 0)
                assert np.all((spectrum.gammas >= 0) & (spectrum.gammas < TWO_PI))

    def test_conjugate_eigenphase_pair(self):
        # gamma and 2*pi - gamma share a cosine, so the Hermitian-part solver
        # sees a double eigenvalue; the sine-part refinement must split it
        gate = UnitaryGate(np.diag([np.exp(1j * np.pi / 2), np.exp(-1j * np.pi / 2)]))
        spectrum = diagonalize_gate(gate)
        assert spectrum.gammas == pytest.approx([np.pi / 2, 3 * np.pi / 2], abs=1e-12)

    def test_nearly_degenerate_cluster(self):
        gate = UnitaryGate(np.diag([1.0, np.exp(1e-8j), np.exp(0.5j)]))
        spectrum = diagonalize_gate(gate)
        d = np.diag(np.exp(1j * spectrum.gammas))
        assert np.linalg.norm(spectrum.r.conj().T @ gate.u @ spectrum.r - d) <= 1e-9

    def test_spectrum_type_enforces_branch(self):
        with pytest.raises(StructuralInputError):
            GateSpectrum(np.eye(2), np.array([0.0, TWO_PI]))
        with pytest.raises(StructuralInputError):
            GateSpectrum(np.eye(2), np.array([-0.1, 0.0]))


class TestModeParameters:
    def test_frequency_identity_random_gates(self):
        rng = np.random.default_rng(310)
        for k in (1, 2, 3, 4):
            spectrum = diagonalize_gate(UnitaryGate(random_unitary(rng, k)))
            omega, tau = mode_parameters(spectrum)
            assert np.abs(omega**2 / 4 + np.abs(tau) ** 2 - np.pi**2).max() <= 1e-12

    def test_phase_arity(self):
        spectrum = diagonalize_gate(gate_catalog("identity", 2))
        with pytest.raises(StructuralInputError):
            mode_parameters(spectrum, phases=[0.1])


class TestBuildController:
    def test_gamma_zero(self):
        controller = build_controller(GateSpectrum(np.eye(1), np.array([0.0])))
        assert np.linalg.norm(controller.omega - np.array([[2j * np.pi]])) < 1e-15
        assert np.linalg.norm(controller.w) == 0.0
        expected_x = np.diag([2j * np.pi, 0.0])
        assert np.linalg.norm(controller.x() - expected_x) < 1e-15

    def test_gamma_pi(self):
        controller = build_controller(GateSpectrum(np.eye(1), np.array([np.pi])))
        assert np.linalg.norm(controller.omega) == 0.0
        assert controller.w[0, 0] == pytest.approx(1j * np.pi, abs=1e-15)
        expected_x = np.array([[0.0, 1j * np.pi], [1j * np.pi, 0.0]])
        assert np.linalg.norm(controller.x() - expected_x) < 1e-15

    def test_gamma_half_pi(self):
        spectrum = GateSpectrum(np.eye(1), np.array([np.pi / 2]))
        omega, tau = mode_parameters(spectrum)
        assert omega[0] == pytest.approx(np.pi, abs=1e-15)
        assert tau[0] == pytest.approx((np.pi / 2) * np.sqrt(3.0), abs=1e-14)
        controller = build_controller(spectrum)
        assert controller.omega[0, 0] == pytest.approx(1j * np.pi, abs=1e-15)
        assert controller.w[0, 0] == pytest.approx(1j * (np.pi / 2) * np.sqrt(3.0), abs=1e-14)


class TestSynthesize:
    def test_identity_gate(self):
        report = synthesize(gate_catalog("identity", 2))
        assert report.closure_error <= 1e-12
        assert report.holonomy_error <= 1e-12
        assert report.length == 0.0

    def test_minus_one_phase_gate(self):
        report = synthesize(gate_catalog("phase", np.pi))
        assert report.length == pytest.approx(np.pi, abs=1e-12)
        gamma = analytic_holonomy(report.controller)
        assert abs(gamma[0, 0] + 1.0) <= 1e-11

    def test_cnot(self):
        report = synthesize(gate_catalog("cnot"))
        assert report.length == pytest.approx(np.pi, abs=1e-10)
        assert report.holonomy_error <= 1e-10

    def test_random_gates_verify(self):
        rng = np.random.default_rng(320)
        for k in (1, 2, 3, 4):
            for _ in range(10):
                report = synthesize(UnitaryGate(random_unitary(rng, k)))
                assert report.closure_error <= 1e-9
                assert report.holonomy_error <= 1e-9

    def test_phase_freedom_changes_nothing_observable(self):
        rng = np.random.default_rng(330)
        gate = UnitaryGate(random_unitary(rng, 3))
        base = synthesize(gate)
        for _ in range(3):
            phased = synthesize(gate, phases=rng.uniform(0, TWO_PI, size=3))
            assert abs(phased.length - base.length) <= 1e-11
            assert phased.holonomy_error <= 1e-9

    def test_length_formula(self):
        rng = np.random.default_rng(340)
        for k in (1, 2, 4):
            report = synthesize(UnitaryGate(random_unitary(rng, k)))
            g = report.spectrum.gammas
            formula = np.sqrt(np.sum(np.pi**2 - (np.pi - g) ** 2))
            assert report.length == pytest.approx(formula, abs=1e-12)
            assert analytic_length(report.controller) == pytest.approx(formula, abs=1e-12)

    def test_gauge_conjugation_preserves_length(self):
        rng = np.random.default_rng(350)
        gate = UnitaryGate(random_unitary(rng, 3))
        q = random_unitary(rng, 3)
        conjugated = UnitaryGate(q @ gate.u @ q.conj().T)
        assert synthesize(conjugated).length == pytest.approx(
            synthesize(gate).length, abs=1e-10
        )

    def test_degenerate_spectra_synthesize_cleanly(self):
        for gate in (gate_catalog("identity", 4), gate_catalog("cnot"),
                     UnitaryGate(np.diag([1.0, 1.0, np.exp(0.9j)]))):
            report = synthesize(gate)
            r = report.spectrum.r
            assert np.linalg.norm(r.conj().T @ r - np.eye(gate.k)) <= 1e-10
            assert report.holonomy_error <= 1e-9

    def test_branch_endpoints_give_short_loops(self):
        # gamma -> 0+ and gamma -> 2*pi- are different loops (omega = +-2*pi)
        # but both lengths vanish continuously
        eps = 1e-4
        low = synthesize(gate_catalog("phase", eps))
        high = synthesize(gate_catalog("phase", TWO_PI - eps))
        assert low.length == pytest.approx(high.length, rel=1e-6)
        assert low.length == pytest.approx(np.sqrt(np.pi**2 - (np.pi - eps) ** 2), rel=1e-9)
        omega_low, _ = mode_parameters(low.spectrum)
        omega_high, _ = mode_parameters(high.spectrum)
        assert omega_low[0] == pytest.approx(TWO_PI, abs=1e-3)
        assert omega_high[0] == pytest.approx(-TWO_PI, abs=1e-3)

    def test_failure_carries_report(self):
        with pytest.raises(SynthesisError) as excinfo:
            synthesize(gate_catalog("cnot"), tol=0.0)
        report = excinfo.value.report
        assert report is not None
        assert report.closure_error > 0.0
