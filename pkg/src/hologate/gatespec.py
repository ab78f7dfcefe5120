"""Gate-spec documents: the CLI's input format.

A gate spec is a JSON object naming either a catalog gate or an explicit
matrix, with optional per-mode phases and a verification tolerance:

    {"gate": "cnot"}
    {"gate": "dft", "parameter": 4}
    {"gate": "phase", "parameter": 1.5707963267948966, "phases": [0.25]}
    {"matrix": [[[0.0, 1.0]], ...], "label": "my-gate", "tol": 1e-9}

Matrix entries are [re, im] pairs.  Parse errors carry the position: JSON
syntax errors keep the line/column from the decoder, semantic errors name
the offending element by its path (e.g. ``$.matrix[1][2]``).
"""

from __future__ import annotations

from dataclasses import dataclass
import json

import numpy as np

from .errors import GateSpecError, StructuralInputError
from .gates import UnitaryGate, gate_catalog

__all__ = ["GateSpecRequest", "parse_gate_spec", "load_gate_spec"]

_ALLOWED_KEYS = {"gate", "parameter", "matrix", "label", "phases", "tol"}


@dataclass(frozen=True, eq=False)
class GateSpecRequest:
    """Parsed gate spec: the target gate plus optional synthesis knobs."""

    gate: UnitaryGate
    phases: np.ndarray | None
    tol: float | None


def _require(condition: bool, where: str, message: str) -> None:
    if not condition:
        raise GateSpecError(f"{where}: {message}")


def _real_number(value, where: str) -> float:
    _require(isinstance(value, (int, float)) and not isinstance(value, bool),
             where, f"expected a number, got {type(value).__name__}")
    return float(value)


def _parse_matrix(rows, where: str) -> np.ndarray:
    _require(isinstance(rows, list) and len(rows) >= 1, where,
             "expected a non-empty list of rows")
    k = len(rows)
    out = np.empty((k, k), dtype=complex)
    for i, row in enumerate(rows):
        _require(isinstance(row, list) and len(row) == k, f"{where}[{i}]",
                 f"expected a row of {k} entries")
        for j, entry in enumerate(row):
            cell = f"{where}[{i}][{j}]"
            _require(isinstance(entry, list) and len(entry) == 2, cell,
                     "expected an [re, im] pair")
            out[i, j] = complex(_real_number(entry[0], cell),
                                _real_number(entry[1], cell))
    return out


def parse_gate_spec(text: str, source: str = "<string>") -> GateSpecRequest:
    """Parse a gate-spec document from a string."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GateSpecError(
            f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    _require(isinstance(doc, dict), "$", "top level must be a JSON object")
    unknown = sorted(set(doc) - _ALLOWED_KEYS)
    _require(not unknown, f"$.{unknown[0]}" if unknown else "$",
             f"unknown key(s): {', '.join(unknown)}")
    has_gate = "gate" in doc
    has_matrix = "matrix" in doc
    _require(has_gate != has_matrix, "$",
             "exactly one of 'gate' or 'matrix' is required")

    if has_gate:
        _require(isinstance(doc["gate"], str), "$.gate", "expected a gate name string")
        _require("label" not in doc, "$.label", "'label' applies only to 'matrix' input")
        try:
            gate = gate_catalog(doc["gate"], doc.get("parameter"))
        except StructuralInputError as exc:
            raise GateSpecError(f"$.gate: {exc}") from exc
    else:
        _require("parameter" not in doc, "$.parameter",
                 "'parameter' applies only to catalog gates")
        matrix = _parse_matrix(doc["matrix"], "$.matrix")
        label = doc.get("label")
        _require(label is None or isinstance(label, str), "$.label", "expected a string")
        try:
            gate = UnitaryGate(matrix, label=label)
        except StructuralInputError as exc:
            raise GateSpecError(f"$.matrix: {exc}") from exc

    phases = None
    if "phases" in doc:
        raw = doc["phases"]
        _require(isinstance(raw, list), "$.phases", "expected a list of angles")
        _require(len(raw) == gate.k, "$.phases",
                 f"expected {gate.k} phase(s) for a k = {gate.k} gate, got {len(raw)}")
        phases = np.array([_real_number(v, f"$.phases[{i}]") for i, v in enumerate(raw)])

    tol = None
    if "tol" in doc:
        tol = _real_number(doc["tol"], "$.tol")
        _require(tol >= 0, "$.tol", "tolerance must be non-negative")

    return GateSpecRequest(gate=gate, phases=phases, tol=tol)


def load_gate_spec(path) -> GateSpecRequest:
    """Parse a gate-spec document from a file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_gate_spec(fh.read(), source=str(path))
