"""Tests for the gate type and catalog."""

from __future__ import annotations

import numpy as np
import pytest

from hologate.errors import StructuralInputError
from hologate.gates import CNOT, HADAMARD, UnitaryGate, dft_matrix, gate_catalog


def test_unitary_gate_validation():
    with pytest.raises(StructuralInputError):
        UnitaryGate(np.array([[1.0, 0.0], [0.0, 2.0]]))
    with pytest.raises(StructuralInputError):
        UnitaryGate(np.ones((2, 3)))
    gate = UnitaryGate(np.eye(3), label="eye")
    assert gate.k == 3 and gate.label == "eye"


def test_identity_and_phase():
    assert np.array_equal(gate_catalog("identity", 3).u, np.eye(3))
    gamma = 0.7
    gate = gate_catalog("phase", gamma)
    assert gate.k == 1
    assert gate.u[0, 0] == pytest.approx(np.exp(1j * gamma), abs=1e-15)


def test_dft2_is_hadamard():
    assert np.linalg.norm(gate_catalog("dft", 2).u - HADAMARD) < 1e-12


def test_dft4_unitary_with_fourth_root_spectrum():
    u = gate_catalog("dft", 4).u
    assert np.linalg.norm(u.conj().T @ u - np.eye(4)) < 1e-12
    # classical fact: DFT eigenvalues are fourth roots of unity; with the
    # e^{+2 pi i/k} kernel the size-4 multiset is {1, 1, -1, +i}
    eigenvalues = np.sort_complex(np.linalg.eigvals(u))
    expected = np.sort_complex(np.array([1.0, 1.0, -1.0, 1j]))
    assert np.linalg.norm(eigenvalues - expected) < 1e-9


def test_cnot_is_controlled_swap_of_last_two_states():
    assert np.array_equal(gate_catalog("cnot").u, CNOT)
    permutation = np.argmax(np.abs(CNOT), axis=0)
    assert list(permutation) == [0, 1, 3, 2]


def test_dft_closure_fourth_power():
    u = dft_matrix(4)
    # DFT^4 = I for the unitary normalization
    assert np.linalg.norm(np.linalg.matrix_power(u, 4) - np.eye(4)) < 1e-12


def test_unknown_name_rejected():
    with pytest.raises(StructuralInputError):
        gate_catalog("toffoli")


def test_parameter_arity_enforced():
    with pytest.raises(StructuralInputError):
        gate_catalog("identity")
    with pytest.raises(StructuralInputError):
        gate_catalog("cnot", 4)
    with pytest.raises(StructuralInputError):
        gate_catalog("dft", 0)
    with pytest.raises(StructuralInputError):
        gate_catalog("dft", 2.5)
    with pytest.raises(StructuralInputError):
        gate_catalog("phase", float("nan"))
