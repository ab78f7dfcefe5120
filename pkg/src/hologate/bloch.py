"""Per-mode Bloch geometry of synthesized loops.

In the eigenbasis of the target gate the controller decouples into k
independent 2×2 modes, each living on its own two-sphere inside the
Grassmannian.  Mode j traces a circle of constant latitude around the unit
axis

    ĥ_j = (Re τ_j, −Im τ_j, ω_j/2) / π,

completing one revolution per loop.  The spherical cap bounded by that
circle subtends a solid angle equal in magnitude to twice the mode's
eigenphase γ_j; this module measures that solid angle numerically from
the sampled loop, which pins down the orientation convention left open by
the geometry alone.

Orientation convention (fixed by this implementation): with the Bloch map
P = (I + n·σ)/2 and solid angles accumulated as signed spherical excess
seen from the mode axis ĥ_j, every synthesized mode traverses its circle
clockwise when viewed from +ĥ_j and accumulates −2γ_j.
"""

from __future__ import annotations

import numpy as np

from .errors import StructuralInputError
from .synthesis import GateSpectrum

__all__ = [
    "mode_axis",
    "mode_bloch_vectors",
    "accumulated_solid_angle",
]


def mode_axis(gamma: float, phase: float = 0.0) -> np.ndarray:
    """Unit rotation axis of one mode's Bloch circle."""
    omega = 2.0 * (np.pi - gamma)
    tau = np.exp(1j * phase) * np.sqrt(np.pi**2 - (np.pi - gamma) ** 2)
    return np.array([tau.real, -tau.imag, omega / 2.0]) / np.pi


def mode_bloch_vectors(frames: np.ndarray, spectrum: GateSpectrum,
                       mode_index: int, atol: float = 1e-9) -> np.ndarray:
    """Bloch vectors of one mode along a sampled synthesized loop.

    ``frames`` is the (n_samples, 2k, k) array of a sampled extremal curve
    built from ``spectrum``.  The ambient is rotated into the gate's
    eigenbasis, where the projector is block-diagonal over the k mode
    planes (rows j and k+j); the j-th 2×2 block is a pure state whose
    Bloch vector is returned for each sample, shape (n_samples, 3).

    The block structure is verified: each block must have unit trace and
    the Bloch vector unit length within ``atol``.
    """
    frames = np.asarray(frames, dtype=complex)
    k = spectrum.k
    if frames.ndim != 3 or frames.shape[1] != 2 * k or frames.shape[2] != k:
        raise StructuralInputError(
            f"expected frames of shape (n, {2 * k}, {k}), got {frames.shape}"
        )
    if not 0 <= mode_index < k:
        raise StructuralInputError(f"mode_index {mode_index} out of range [0, {k})")

    # rotate the top ambient block into the eigenbasis; modes then decouple
    rotated = frames.copy()
    rotated[:, :k, :] = np.einsum("ab,mbj->maj", spectrum.r.conj().T, frames[:, :k, :])
    rows = [mode_index, k + mode_index]
    sub = rotated[:, rows, :]
    block = np.einsum("mia,mja->mij", sub, sub.conj())

    p00 = block[:, 0, 0].real
    p11 = block[:, 1, 1].real
    p01 = block[:, 0, 1]
    vectors = np.stack([2 * p01.real, -2 * p01.imag, p00 - p11], axis=1)

    trace_defect = np.abs(p00 + p11 - 1.0).max(initial=0.0)
    length_defect = np.abs(np.linalg.norm(vectors, axis=1) - 1.0).max(initial=0.0)
    if trace_defect > atol or length_defect > atol:
        raise StructuralInputError(
            f"mode {mode_index} is not a pure two-level state along the path: "
            f"trace defect {trace_defect:.3e}, Bloch length defect {length_defect:.3e}"
        )
    return vectors


def accumulated_solid_angle(vectors: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """Running signed solid angle swept by a unit-vector path, seen from a reference.

    Sums the signed spherical excess of the triangles (reference, v_m,
    v_{m+1}) using the van Oosterom–Strackee formula

        tan(E/2) = r·(a×b) / (1 + r·a + a·b + b·r).

    Positive excess means counterclockwise as viewed from outside the
    sphere at the reference point.  Returns the cumulative angle at every
    sample (first entry 0); for a closed loop the last entry is the total
    enclosed solid angle relative to the reference point's cap.
    """
    v = np.asarray(vectors, dtype=float)
    r = np.asarray(reference, dtype=float)
    if v.ndim != 2 or v.shape[1] != 3:
        raise StructuralInputError(f"expected (n, 3) unit vectors, got shape {v.shape}")
    if r.shape != (3,):
        raise StructuralInputError(f"reference must be a 3-vector, got shape {r.shape}")
    norms = np.linalg.norm(v, axis=1)
    if np.abs(norms - 1.0).max(initial=0.0) > 1e-6 or abs(np.linalg.norm(r) - 1.0) > 1e-6:
        raise StructuralInputError("solid angle needs unit vectors on the sphere")

    a, b = v[:-1], v[1:]
    numerator = np.einsum("i,mi->m", r, np.cross(a, b))
    denominator = 1.0 + a @ r + np.einsum("mi,mi->m", a, b) + b @ r
    excess = 2.0 * np.arctan2(numerator, denominator)
    return np.concatenate([[0.0], np.cumsum(excess)])
