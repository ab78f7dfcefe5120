"""Tests for controllers and the closed-form extremal curves."""

from __future__ import annotations

import numpy as np
import pytest

from hologate.errors import SamplingError, StructuralInputError
from hologate.extremal import (
    Controller,
    ExtremalCurve,
    analytic_length,
    canonical_frame,
    constraint_residual,
    omega_drift,
)
from hologate.gates import UnitaryGate, gate_catalog
from hologate.linalg import expm_antihermitian
from hologate.manifold import is_horizontal, stiefel_path_length
from hologate.synthesis import analytic_holonomy, build_controller, diagonalize_gate, synthesize
from randmat import random_unitary


def phase_controller(gamma: float) -> Controller:
    spectrum = diagonalize_gate(gate_catalog("phase", gamma))
    return build_controller(spectrum)


class TestController:
    def test_block_assembly(self):
        omega = np.array([[1j]])
        w = np.array([[2.0 + 1j]])
        x = Controller(omega, w).x()
        expected = np.array([[1j, 2.0 + 1j], [-2.0 + 1j, 0.0]])
        assert np.linalg.norm(x - expected) == 0.0

    def test_x_is_antihermitian_with_zero_corner(self):
        rng = np.random.default_rng(83)
        for k in (1, 2, 3):
            controller = build_controller(diagonalize_gate(UnitaryGate(random_unitary(rng, k))))
            x = controller.x()
            assert np.linalg.norm(x + x.conj().T) < 1e-14 * max(1.0, np.linalg.norm(x))
            assert np.linalg.norm(x[k:, k:]) == 0.0

    def test_omega_equals_pulled_back_x(self):
        controller = synthesize(gate_catalog("cnot")).controller
        v0 = canonical_frame(controller.n, controller.k).v
        pulled = v0.conj().T @ controller.x() @ v0
        assert np.linalg.norm(pulled - controller.omega) == 0.0

    def test_rejects_non_antihermitian_omega(self):
        with pytest.raises(StructuralInputError):
            Controller(np.array([[1.0]]), np.array([[1.0]]))

    def test_rejects_bad_shapes(self):
        with pytest.raises(StructuralInputError):
            Controller(np.zeros((2, 2)), np.zeros((3, 1)))
        with pytest.raises(StructuralInputError):
            Controller(np.zeros((2, 2)), np.zeros((2, 0)))


class TestEvaluate:
    def test_starts_at_base_point(self):
        curve = ExtremalCurve(phase_controller(np.pi))
        assert np.linalg.norm(curve.frame_at(0.0).v - canonical_frame(2, 1).v) < 1e-14

    def test_identity_controller_is_stationary(self):
        # gamma = 0 gives omega = 2*pi, tau = 0: the fiber rotation exactly
        # cancels the ambient one
        curve = ExtremalCurve(phase_controller(0.0))
        v0 = canonical_frame(2, 1).v
        for t in (0.1, 0.5, 0.9, 1.0):
            assert np.linalg.norm(curve.frame_at(t).v - v0) < 1e-12

    def test_phase_pi_endpoint(self):
        curve = ExtremalCurve(phase_controller(np.pi))
        v1 = curve.frame_at(1.0).v
        assert np.linalg.norm(v1 - np.array([[-1.0], [0.0]])) < 1e-13

    def test_out_of_range_rejected(self):
        curve = ExtremalCurve(phase_controller(np.pi))
        with pytest.raises(StructuralInputError):
            curve.frame_at(1.5)
        with pytest.raises(StructuralInputError):
            curve.frame_at(-0.1)

    def test_split_evaluation_matches_direct(self):
        # V(s+u) must equal e^{uX}·V(s)·e^{-uOmega}: the X and Omega
        # exponentials have to interleave correctly across the split
        rng = np.random.default_rng(89)
        controller = synthesize(gate_catalog("dft", 3)).controller
        curve = ExtremalCurve(controller)
        x, om = controller.x(), controller.omega
        for _ in range(5):
            s, u = rng.uniform(0.0, 0.5, size=2)
            direct = curve.frame_at(s + u).v
            stitched = expm_antihermitian(u * x) @ curve.frame_at(s).v \
                @ expm_antihermitian(-u * om)
            assert np.linalg.norm(stitched - direct) < 1e-11


class TestSample:
    def test_grid_and_invariants(self):
        curve = ExtremalCurve(synthesize(gate_catalog("hadamard")).controller)
        path = curve.sample(11)
        assert path.n_samples == 11
        assert path.times[0] == 0.0 and path.times[-1] == 1.0
        # FramePath construction has already enforced orthonormality

    def test_too_few_samples(self):
        curve = ExtremalCurve(phase_controller(np.pi))
        with pytest.raises(SamplingError):
            curve.sample(1)


class TestConstraintResidual:
    def test_synthesized_controllers_satisfy_constraint(self):
        rng = np.random.default_rng(97)
        for k in (1, 2, 3):
            gate = gate_catalog("phase", 1.2) if k == 1 else \
                UnitaryGate(random_unitary(rng, k))
            controller = synthesize(gate).controller
            assert constraint_residual(controller) <= 1e-12

    def test_injected_corner_block_is_measured_exactly(self):
        controller = synthesize(gate_catalog("cnot")).controller
        k, n = controller.k, controller.n
        x = controller.x()
        x[k:, k:] = 1j * np.eye(n - k)
        assert constraint_residual(x, k=k) == pytest.approx(np.sqrt(n - k), abs=1e-10)

    def test_zero_generator(self):
        assert constraint_residual(np.zeros((4, 4)), k=2) == 0.0

    def test_raw_generator_needs_split_hint(self):
        with pytest.raises(StructuralInputError):
            constraint_residual(np.zeros((4, 4)))


class TestOmegaDrift:
    def test_synthesized_drift_is_roundoff(self):
        rng = np.random.default_rng(101)
        gate = UnitaryGate(random_unitary(rng, 3))
        curve = ExtremalCurve(synthesize(gate).controller)
        assert omega_drift(curve, 100) <= 1e-10

    def test_zero_generator(self):
        controller = Controller(np.zeros((2, 2)), np.zeros((2, 2)))
        assert omega_drift(ExtremalCurve(controller), 10) == 0.0

    def test_phase_pi_has_zero_omega(self):
        curve = ExtremalCurve(phase_controller(np.pi))
        assert omega_drift(curve, 50) <= 1e-12


class TestAnalyticLength:
    def test_identity_gate_is_stationary(self):
        assert analytic_length(phase_controller(0.0)) == 0.0

    def test_phase_pi(self):
        assert analytic_length(phase_controller(np.pi)) == pytest.approx(np.pi, abs=1e-12)

    def test_cnot(self):
        controller = synthesize(gate_catalog("cnot")).controller
        assert analytic_length(controller) == pytest.approx(np.pi, abs=1e-10)

    def test_polygonal_length_converges_at_second_order(self):
        curve = ExtremalCurve(phase_controller(np.pi / 2))
        target = analytic_length(curve.controller)
        gaps = {n: target - stiefel_path_length(curve.sample(n + 1)) for n in (400, 800)}
        assert gaps[400] > gaps[800] > 0
        assert gaps[400] / gaps[800] == pytest.approx(4.0, abs=0.1)

    def test_rescaled_controller_keeps_length_and_holonomy(self):
        report = synthesize(gate_catalog("dft", 2))
        controller = report.controller
        for duration in (0.25, 3.0):
            slow = controller.rescaled(duration)
            assert analytic_length(slow, duration) == pytest.approx(report.length, abs=1e-11)
            k = slow.k
            ex = expm_antihermitian(duration * slow.x())
            gamma = ex[:k, :k] @ expm_antihermitian(-duration * slow.omega)
            assert np.linalg.norm(gamma - analytic_holonomy(controller)) < 1e-11


class TestConstantSpeed:
    def test_finite_difference_speed_matches_trace(self):
        report = synthesize(gate_catalog("dft", 4))
        curve = ExtremalCurve(report.controller)
        path = curve.sample(2001)
        dt = path.times[1] - path.times[0]
        vdot = (path.frames[2:] - path.frames[:-2]) / (2.0 * dt)
        speed_sq = np.einsum("mia,mia->m", vdot.conj(), vdot).real
        w = report.controller.w
        expected = np.trace(w @ w.conj().T).real
        assert np.abs(speed_sq - expected).max() < 1e-4 * expected


class TestHorizontalityProperty:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_sampled_violation_scales_inverse_square(self, k):
        rng = np.random.default_rng(200 + k)
        gate = UnitaryGate(random_unitary(rng, k))
        curve = ExtremalCurve(synthesize(gate).controller)
        for n in (500, 1000):
            _, violation = is_horizontal(curve.sample(n), tol=np.inf)
            assert violation <= 100.0 / n**2
