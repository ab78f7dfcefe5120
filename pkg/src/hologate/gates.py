"""Target gate type and a catalog of standard unitaries."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StructuralInputError

__all__ = ["UnitaryGate", "gate_catalog", "CATALOG_NAMES"]

#: unitarity tolerance for target gates
UNITARITY_TOL = 1e-10

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

# basis order |00>, |01>, |10>, |11>; flips the target when the control is set
CNOT = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]],
    dtype=complex,
)


@dataclass(frozen=True, eq=False)
class UnitaryGate:
    """A target gate: a k×k unitary matrix with an optional label."""

    u: np.ndarray
    label: str | None = None

    def __post_init__(self):
        u = np.asarray(self.u, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise StructuralInputError(f"gate must be a square matrix, got shape {u.shape}")
        if not np.all(np.isfinite(u)):
            raise StructuralInputError("gate contains non-finite entries")
        defect = np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]))
        if defect > UNITARITY_TOL:
            raise StructuralInputError(
                f"gate is not unitary: ‖U†U − I‖ = {defect:.3e} > {UNITARITY_TOL:.0e}"
            )
        object.__setattr__(self, "u", u)

    @property
    def k(self) -> int:
        return self.u.shape[0]


def dft_matrix(k: int) -> np.ndarray:
    """Discrete Fourier transform, entries ω^{mn}/√k with ω = e^{2πi/k}."""
    if k < 1:
        raise StructuralInputError(f"dft size must be >= 1, got {k}")
    m = np.arange(k)
    return np.exp(2j * np.pi * np.outer(m, m) / k) / np.sqrt(k)


#: names accepted by gate_catalog, with the parameter each expects
CATALOG_NAMES = {
    "identity": "k (dimension)",
    "phase": "gamma (radians)",
    "hadamard": None,
    "cnot": None,
    "dft": "k (dimension)",
}


def gate_catalog(name: str, parameter=None) -> UnitaryGate:
    """Look up a standard gate by name.

    ``identity`` and ``dft`` take the dimension k, ``phase`` takes the
    angle γ in radians (a 1×1 gate e^{iγ}), ``hadamard`` and ``cnot`` take
    no parameter.
    """
    name = name.strip().lower()
    if name not in CATALOG_NAMES:
        known = ", ".join(sorted(CATALOG_NAMES))
        raise StructuralInputError(f"unknown gate {name!r}; known gates: {known}")
    wants = CATALOG_NAMES[name]
    if wants is None:
        if parameter is not None:
            raise StructuralInputError(f"gate {name!r} takes no parameter")
    elif parameter is None:
        raise StructuralInputError(f"gate {name!r} requires a parameter: {wants}")

    if name == "identity":
        k = _as_dimension(parameter)
        return UnitaryGate(np.eye(k, dtype=complex), label=f"identity({k})")
    if name == "phase":
        gamma = float(parameter)
        if not np.isfinite(gamma):
            raise StructuralInputError(f"phase angle must be finite, got {parameter!r}")
        return UnitaryGate(np.array([[np.exp(1j * gamma)]]), label=f"phase({gamma:g})")
    if name == "hadamard":
        return UnitaryGate(HADAMARD, label="hadamard")
    if name == "cnot":
        return UnitaryGate(CNOT, label="cnot")
    k = _as_dimension(parameter)
    return UnitaryGate(dft_matrix(k), label=f"dft({k})")


def _as_dimension(parameter) -> int:
    try:
        k = int(parameter)
    except (TypeError, ValueError):
        raise StructuralInputError(f"dimension must be an integer, got {parameter!r}") from None
    if k < 1 or k != float(parameter):
        raise StructuralInputError(f"dimension must be a positive integer, got {parameter!r}")
    return k
