"""Dense linear-algebra kernels with structure checks.

Thin, contract-enforcing wrappers around LAPACK (via numpy) for the four
operations everything else is built on: Hermitian eigendecomposition,
exponentials of anti-Hermitian matrices, polar retraction onto orthonormal
frames, and Frobenius distance.  The wrappers exist so the geometric layers
above can assume their inputs have the advertised structure and their
outputs are unitary / orthonormal to tight tolerance.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericalError, StructuralInputError

__all__ = [
    "hermitian_eig",
    "expm_antihermitian",
    "polar_retract",
    "frobenius_distance",
]

#: structural tolerance for "is Hermitian / anti-Hermitian" input checks
SYMMETRY_TOL = 1e-12

#: smallest admissible singular value in polar_retract
RANK_TOL = 1e-12


def _as_square(a, name: str) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise StructuralInputError(f"{name} must be a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise StructuralInputError(f"{name} contains non-finite entries")
    return a


def hermitian_eig(h, tol: float = SYMMETRY_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    h : array_like, shape (n, n)
        Hermitian matrix; ``‖h − h†‖_F ≤ tol·max(1, ‖h‖_F)`` is enforced.
    tol : float
        Hermiticity tolerance.

    Returns
    -------
    (eigenvalues, eigenvectors)
        Real eigenvalues in ascending order and a unitary matrix whose
        columns are the matching eigenvectors.
    """
    h = _as_square(h, "h")
    defect = np.linalg.norm(h - h.conj().T)
    if defect > tol * max(1.0, np.linalg.norm(h)):
        raise StructuralInputError(
            f"matrix is not Hermitian: asymmetry {defect:.3e} exceeds tolerance {tol:.3e}"
        )
    try:
        lam, q = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:  # no iteration count exposed; keep solver text
        raise NumericalError(f"Hermitian eigensolver failed to converge: {exc}") from exc
    return lam, q


def expm_antihermitian(x, tol: float = SYMMETRY_TOL) -> np.ndarray:
    """Matrix exponential of an anti-Hermitian matrix; result is unitary.

    Computed through the Hermitian eigendecomposition of ``−i·x``, which
    keeps the output unitary to roundoff regardless of ``‖x‖``.
    """
    x = _as_square(x, "x")
    defect = np.linalg.norm(x + x.conj().T)
    if defect > tol * max(1.0, np.linalg.norm(x)):
        raise StructuralInputError(
            f"matrix is not anti-Hermitian: defect {defect:.3e} exceeds tolerance {tol:.3e}"
        )
    lam, q = np.linalg.eigh(-1j * x)
    return (q * np.exp(1j * lam)) @ q.conj().T


def polar_retract(m) -> np.ndarray:
    """Nearest orthonormal frame to a full-rank N×k matrix.

    Returns the unitary factor of the polar decomposition ``m = u·p``
    (u with orthonormal columns, p positive), computed from the SVD.
    This is the retraction used to push approximate frames back onto
    the Stiefel manifold.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise StructuralInputError(f"expected a matrix, got shape {m.shape}")
    if m.shape[0] < m.shape[1]:
        raise StructuralInputError(f"frame is wider than tall: shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise StructuralInputError("frame contains non-finite entries")
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    if s[-1] <= RANK_TOL:
        raise NumericalError(
            f"rank-deficient frame: smallest singular value {s[-1]:.3e} <= {RANK_TOL:.0e}"
        )
    return u @ vh


def frobenius_distance(a, b) -> float:
    """Frobenius-norm distance ‖a − b‖_F between two equal-shape matrices."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise StructuralInputError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))
