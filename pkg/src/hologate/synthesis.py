"""Controller synthesis: from a target unitary to a minimum-length loop.

The construction runs in three steps.  Diagonalize the target U = R·D·R†
with eigenphases γ_j ∈ [0, 2π).  For each eigenphase build one mode of the
controller,

    ω_j = 2(π − γ_j),       τ_j = e^{iφ_j}·√(π² − (π−γ_j)²),

and conjugate the diagonal mode data back into the computational basis:
Ω = R·diag(iω_j)·R†, W = R·diag(iτ_j).  The resulting controller generates
a closed horizontal loop of duration 1 whose holonomy is exactly U; each
mode satisfies ω_j²/4 + |τ_j|² = π², which is why every mode closes after
one period regardless of γ_j.

The free phases φ_j affect neither the holonomy nor the length and default
to zero.  The ambient dimension is fixed at N = 2k.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, StructuralInputError, SynthesisError
from .extremal import Controller, analytic_length, canonical_frame
from .gates import UnitaryGate
from .linalg import expm_antihermitian, frobenius_distance, hermitian_eig

__all__ = [
    "GateSpectrum",
    "SynthesisReport",
    "diagonalize_gate",
    "mode_parameters",
    "build_controller",
    "analytic_holonomy",
    "synthesize",
]

#: residual bound for R†UR − diag(e^{iγ})
SPECTRUM_TOL = 1e-9

#: eigenvalue clusters of (U+U†)/2 closer than this are refined jointly
CLUSTER_TOL = 1e-6

#: default verification bound on closure and holonomy errors
VERIFY_TOL = 1e-9

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True, eq=False)
class GateSpectrum:
    """Diagonalization data of a target gate: unitary R and eigenphases γ_j.

    The eigenphases lie in [0, 2π) and are sorted ascending; R's columns
    are the matching eigenvectors.
    """

    r: np.ndarray
    gammas: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.r, dtype=complex)
        g = np.asarray(self.gammas, dtype=float)
        if r.ndim != 2 or r.shape[0] != r.shape[1] or g.shape != (r.shape[0],):
            raise StructuralInputError(
                f"spectrum shapes inconsistent: R {r.shape}, gammas {g.shape}"
            )
        defect = np.linalg.norm(r.conj().T @ r - np.eye(r.shape[0]))
        if defect > 1e-10:
            raise StructuralInputError(f"diagonalizer not unitary: defect {defect:.3e}")
        if np.any(g < 0.0) or np.any(g >= TWO_PI):
            raise StructuralInputError("eigenphases must lie in [0, 2*pi)")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "gammas", g)

    @property
    def k(self) -> int:
        return self.r.shape[0]


@dataclass(frozen=True, eq=False)
class SynthesisReport:
    """Synthesis output: the controller plus its verification numbers."""

    controller: Controller
    spectrum: GateSpectrum
    closure_error: float
    holonomy_error: float
    length: float


def diagonalize_gate(gate: UnitaryGate, tol: float = SPECTRUM_TOL) -> GateSpectrum:
    """Diagonalize a unitary gate: U = R·diag(e^{iγ_j})·R†, γ_j ∈ [0, 2π).

    Works through the Hermitian eigenproblem of (U + U†)/2.  Eigenvalue
    clusters of that Hermitian part (gap below 1e−6) are refined by
    rediagonalizing (U − U†)/(2i) restricted to the cluster, which resolves
    eigenphase pairs γ and 2π−γ that share a cosine.  Output order is
    ascending γ with the underlying solver's order as a deterministic
    tie-break.
    """
    u = gate.u
    k = gate.k
    lam_c, q = hermitian_eig((u + u.conj().T) / 2.0)

    # chain-cluster nearly equal cosines, then split each cluster by the sine part
    s = (u - u.conj().T) / 2j
    boundaries = [0]
    for j in range(1, k):
        if lam_c[j] - lam_c[j - 1] > CLUSTER_TOL:
            boundaries.append(j)
    boundaries.append(k)
    for lo, hi in zip(boundaries[:-1], boundaries[1:]):
        if hi - lo > 1:
            block = q[:, lo:hi]
            _, qs = hermitian_eig(block.conj().T @ s @ block)
            q[:, lo:hi] = block @ qs

    eigenvalues = np.einsum("ij,jk,ki->i", q.conj().T, u, q)
    gammas = np.mod(np.angle(eigenvalues), TWO_PI)
    gammas[gammas >= TWO_PI] = 0.0
    order = np.argsort(gammas, kind="stable")
    r = q[:, order]
    gammas = gammas[order]

    residual = np.linalg.norm(r.conj().T @ u @ r - np.diag(np.exp(1j * gammas)))
    if residual > tol:
        raise NumericalError(
            f"eigenphase refinement failed: off-diagonal residual {residual:.3e} > {tol:.0e}"
        )
    return GateSpectrum(r, gammas)


def mode_parameters(spectrum: GateSpectrum, phases=None) -> tuple[np.ndarray, np.ndarray]:
    """Per-mode frequencies (ω_j, τ_j) for the given eigenphases and φ_j."""
    g = spectrum.gammas
    if phases is None:
        phases = np.zeros(spectrum.k)
    phases = np.asarray(phases, dtype=float)
    if phases.shape != (spectrum.k,):
        raise StructuralInputError(
            f"need one phase per mode ({spectrum.k}), got shape {phases.shape}"
        )
    if not np.all(np.isfinite(phases)):
        raise StructuralInputError("phases contain non-finite entries")
    omega = 2.0 * (np.pi - g)
    tau = np.exp(1j * phases) * np.sqrt(np.pi**2 - (np.pi - g) ** 2)
    return omega, tau


def build_controller(spectrum: GateSpectrum, phases=None) -> Controller:
    """Assemble the controller blocks Ω = R·diag(iω)·R†, W = R·diag(iτ)."""
    omega_freqs, tau = mode_parameters(spectrum, phases)
    r = spectrum.r
    om = (r * (1j * omega_freqs)) @ r.conj().T
    om = (om - om.conj().T) / 2.0  # scrub conjugation roundoff; exact in theory
    w = r * (1j * tau)
    return Controller(om, w)


def analytic_holonomy(controller: Controller) -> np.ndarray:
    """Exact holonomy Γ = V₀†·e^{X}·V₀·e^{−Ω} of the controller's unit loop."""
    k = controller.k
    ex = expm_antihermitian(controller.x())
    return ex[:k, :k] @ expm_antihermitian(-controller.omega)


def synthesize(gate: UnitaryGate, phases=None, tol: float = VERIFY_TOL) -> SynthesisReport:
    """Synthesize and verify a minimum-length controller for a target gate.

    Runs the diagonalize/build steps, then checks the two boundary
    conditions analytically: the loop closes (e^{X}·P₀·e^{−X} = P₀) and the
    holonomy equals the target (V₀†·e^{X}·V₀·e^{−Ω} = U).  Both residuals
    must come in at or below ``tol``; otherwise a SynthesisError carrying
    the full report is raised, so failures always surface their numbers.
    """
    spectrum = diagonalize_gate(gate)
    controller = build_controller(spectrum, phases)

    v0 = canonical_frame(controller.n, controller.k).v
    p0 = v0 @ v0.conj().T
    ex = expm_antihermitian(controller.x())
    closure = frobenius_distance(ex @ p0 @ ex.conj().T, p0)
    holonomy = frobenius_distance(analytic_holonomy(controller), gate.u)

    report = SynthesisReport(
        controller=controller,
        spectrum=spectrum,
        closure_error=closure,
        holonomy_error=holonomy,
        length=analytic_length(controller),
    )
    if closure > tol or holonomy > tol:
        raise SynthesisError(
            f"controller failed verification: closure_error {closure:.3e}, "
            f"holonomy_error {holonomy:.3e}, tolerance {tol:.3e}",
            report=report,
        )
    return report
