"""Tests for gate-spec parsing and its position-annotated errors."""

from __future__ import annotations

import json

import numpy as np
import pytest

from hologate.errors import GateSpecError
from hologate.gates import gate_catalog
from hologate.gatespec import parse_gate_spec


def parse(payload):
    return parse_gate_spec(json.dumps(payload))


def error_of(payload):
    with pytest.raises(GateSpecError) as excinfo:
        parse(payload)
    return str(excinfo.value)


def test_catalog_request():
    request = parse({"gate": "dft", "parameter": 3})
    assert np.array_equal(request.gate.u, gate_catalog("dft", 3).u)
    assert request.phases is None and request.tol is None


def test_matrix_request_with_knobs():
    request = parse({
        "matrix": [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]],
        "label": "swap-levels",
        "phases": [0.1, 0.2],
        "tol": 1e-8,
    })
    assert request.gate.label == "swap-levels"
    assert request.phases == pytest.approx([0.1, 0.2])
    assert request.tol == 1e-8


def test_top_level_must_be_object():
    assert error_of([1, 2]).startswith("$:")


def test_unknown_key_named():
    assert "$.extra" in error_of({"gate": "cnot", "extra": 1})


def test_gate_and_matrix_mutually_exclusive():
    message = error_of({"gate": "cnot", "matrix": [[[1.0, 0.0]]]})
    assert "exactly one" in message
    assert "exactly one" in error_of({"tol": 1e-9})


def test_label_only_for_matrix_input():
    assert "$.label" in error_of({"gate": "cnot", "label": "x"})


def test_parameter_only_for_catalog_input():
    assert "$.parameter" in error_of({"matrix": [[[1.0, 0.0]]], "parameter": 2})


def test_unknown_gate_name():
    assert "$.gate" in error_of({"gate": "toffoli"})


def test_bad_matrix_entry_carries_path():
    message = error_of({"matrix": [[[1.0, 0.0], [0.0, 0.0]],
                                   [[0.0, 0.0], "oops"]]})
    assert "$.matrix[1][1]" in message


def test_ragged_matrix_row_carries_path():
    assert "$.matrix[1]" in error_of({"matrix": [[[1.0, 0.0], [0.0, 0.0]],
                                                 [[0.0, 0.0]]]})


def test_non_unitary_matrix_reports_defect():
    message = error_of({"matrix": [[[1.0, 0.0], [0.0, 0.0]],
                                   [[0.0, 0.0], [0.5, 0.0]]]})
    assert "$.matrix" in message and "unitary" in message


def test_phases_arity_checked():
    assert "$.phases" in error_of({"gate": "cnot", "phases": [0.1]})


def test_phase_entry_type_checked():
    assert "$.phases[1]" in error_of({"gate": "hadamard",
                                      "phases": [0.1, True]})


def test_negative_tolerance_rejected():
    assert "$.tol" in error_of({"gate": "cnot", "tol": -1e-9})


def test_json_syntax_error_has_position():
    with pytest.raises(GateSpecError) as excinfo:
        parse_gate_spec("{", source="broken.json")
    assert str(excinfo.value).startswith("broken.json: line 1 column")
