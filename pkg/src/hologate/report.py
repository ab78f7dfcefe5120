"""Synthesis report files: bit-exact, inspectable serialization.

A report is a JSON document carrying the target gate, the spectrum, the
controller blocks Ω and W, the assembled generator X, the verification
numbers, and provenance (tool version, input hash, timestamp).  Every real
scalar is stored as a two-element array

    [hexadecimal float, decimal float]

where the hexadecimal form (``float.hex``) is authoritative and the
decimal form is for human eyes.  Readers require the two to agree bitwise,
so a report edited in one representation only is rejected instead of
silently drifting.  Complex entries are [re, im] pairs of such scalars.

Canonical bytes exclude the ``created_utc`` timestamp; identical inputs
produce byte-identical reports up to that field, and write→read→write is
the identity on canonical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone
import json

import numpy as np

from . import __version__
from .errors import StructuralInputError
from .extremal import Controller
from .gates import UnitaryGate
from .synthesis import GateSpectrum, SynthesisReport

__all__ = ["write_report", "load_report", "canonical_report_bytes", "LoadedReport"]

FORMAT_NAME = "hologate-report-v1"


def _enc_real(value) -> list:
    v = float(value)
    if not np.isfinite(v):
        raise StructuralInputError(f"cannot serialize non-finite value {value!r}")
    return [v.hex(), v]


def _enc_complex_matrix(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[_enc_real(z.real), _enc_real(z.imag)] for z in row] for row in m]


def _dec_real(pair, where: str) -> float:
    if not (isinstance(pair, list) and len(pair) == 2 and isinstance(pair[0], str)):
        raise StructuralInputError(f"{where}: expected a [hex, decimal] scalar pair")
    try:
        value = float.fromhex(pair[0])
    except ValueError as exc:
        raise StructuralInputError(f"{where}: bad hexadecimal float {pair[0]!r}") from exc
    try:
        decimal = float(pair[1])
    except (TypeError, ValueError) as exc:
        raise StructuralInputError(f"{where}: bad decimal float {pair[1]!r}") from exc
    if value != decimal:
        raise StructuralInputError(
            f"{where}: hexadecimal and decimal renderings disagree "
            f"({pair[0]} vs {pair[1]!r}); report is corrupt"
        )
    return value


def _dec_complex_matrix(rows, where: str) -> np.ndarray:
    if not (isinstance(rows, list) and rows and all(isinstance(r, list) for r in rows)):
        raise StructuralInputError(f"{where}: expected a list of rows")
    out = np.empty((len(rows), len(rows[0])), dtype=complex)
    for i, row in enumerate(rows):
        if len(row) != len(rows[0]):
            raise StructuralInputError(f"{where}[{i}]: ragged matrix")
        for j, entry in enumerate(row):
            if not (isinstance(entry, list) and len(entry) == 2):
                raise StructuralInputError(f"{where}[{i}][{j}]: expected an [re, im] pair")
            out[i, j] = complex(_dec_real(entry[0], f"{where}[{i}][{j}].re"),
                                _dec_real(entry[1], f"{where}[{i}][{j}].im"))
    return out


def report_document(gate: UnitaryGate, report: SynthesisReport, *, phases=None,
                    tolerance: float, input_sha256: str | None = None,
                    input_name: str | None = None, timestamp: str | None = None) -> dict:
    """Assemble the JSON document for a synthesis report."""
    controller = report.controller
    if timestamp is None:
        timestamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    phases_list = (np.zeros(gate.k) if phases is None else np.asarray(phases, float))
    return {
        "format": FORMAT_NAME,
        "created_utc": timestamp,
        "tool": {"name": "hologate", "version": __version__},
        "input": {"sha256": input_sha256, "name": input_name},
        "gate": {
            "k": gate.k,
            "label": gate.label,
            "matrix": _enc_complex_matrix(gate.u),
        },
        "phases": [_enc_real(p) for p in phases_list],
        "tolerance": _enc_real(tolerance),
        "spectrum": {
            "gammas": [_enc_real(g) for g in report.spectrum.gammas],
            "r": _enc_complex_matrix(report.spectrum.r),
        },
        "controller": {
            "k": controller.k,
            "n": controller.n,
            "omega": _enc_complex_matrix(controller.omega),
            "w": _enc_complex_matrix(controller.w),
            "x": _enc_complex_matrix(controller.x()),
        },
        "verification": {
            "closure_error": _enc_real(report.closure_error),
            "holonomy_error": _enc_real(report.holonomy_error),
            "length": _enc_real(report.length),
        },
    }


def canonical_report_bytes(doc: dict) -> bytes:
    """Serialize a report document without its timestamp field."""
    trimmed = {key: value for key, value in doc.items() if key != "created_utc"}
    text = json.dumps(trimmed, sort_keys=True, indent=2, allow_nan=False,
                      ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def _serialize(doc: dict) -> bytes:
    text = json.dumps(doc, sort_keys=True, indent=2, allow_nan=False, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def write_report(path, doc: dict) -> None:
    with open(path, "wb") as fh:
        fh.write(_serialize(doc))


@dataclass(frozen=True, eq=False)
class LoadedReport:
    """A report read back from disk, decoded to live values.

    ``controller`` is rebuilt from the stored Ω and W blocks (bit-exact);
    ``x_stored`` is the X matrix exactly as found in the file, which a
    verifier should compare against ``controller.x()`` and the structural
    constraint rather than trust.
    """

    doc: dict
    gate: UnitaryGate
    phases: np.ndarray
    tolerance: float
    spectrum: GateSpectrum
    controller: Controller
    x_stored: np.ndarray
    closure_error: float
    holonomy_error: float
    length: float


def load_report(path) -> LoadedReport:
    """Read and decode a report file, validating its structure."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StructuralInputError(
                f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from exc
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_NAME:
        raise StructuralInputError(
            f"{path}: not a {FORMAT_NAME} document"
        )
    try:
        gate_section = doc["gate"]
        gate = UnitaryGate(_dec_complex_matrix(gate_section["matrix"], "$.gate.matrix"),
                           label=gate_section.get("label"))
        phases = np.array([_dec_real(p, f"$.phases[{i}]")
                           for i, p in enumerate(doc["phases"])])
        tolerance = _dec_real(doc["tolerance"], "$.tolerance")
        spectrum = GateSpectrum(
            _dec_complex_matrix(doc["spectrum"]["r"], "$.spectrum.r"),
            np.array([_dec_real(g, f"$.spectrum.gammas[{i}]")
                      for i, g in enumerate(doc["spectrum"]["gammas"])]),
        )
        controller_section = doc["controller"]
        controller = Controller(
            _dec_complex_matrix(controller_section["omega"], "$.controller.omega"),
            _dec_complex_matrix(controller_section["w"], "$.controller.w"),
        )
        x_stored = _dec_complex_matrix(controller_section["x"], "$.controller.x")
        verification = doc["verification"]
        closure = _dec_real(verification["closure_error"], "$.verification.closure_error")
        holonomy = _dec_real(verification["holonomy_error"], "$.verification.holonomy_error")
        length = _dec_real(verification["length"], "$.verification.length")
    except KeyError as exc:
        raise StructuralInputError(f"{path}: missing report field {exc}") from exc
    return LoadedReport(
        doc=doc,
        gate=gate,
        phases=phases,
        tolerance=tolerance,
        spectrum=spectrum,
        controller=controller,
        x_stored=x_stored,
        closure_error=closure,
        holonomy_error=holonomy,
        length=length,
    )
