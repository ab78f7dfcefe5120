"""Closed-form horizontal extremal curves and their controllers.

A controller is a constant anti-Hermitian generator X with block structure

    X = [[Ω, W], [−W†, 0]],

Ω anti-Hermitian k×k and W a k×(N−k) coupling block.  The lower-right
block is identically zero; that is exactly the condition under which the
curve

    V(t) = e^{tX} V₀ e^{−tΩ},   V₀ = (I_k; 0)

is horizontal and extremal for the constrained length functional.  The
controller stores Ω and W separately and assembles X on demand, so the
zero block cannot be violated by construction.  Ω = V₀† X V₀ holds
exactly.

Evaluation uses raw t as the group parameter: a curve of duration T covers
t ∈ [0, T] with generator X as given.  Reparametrizing onto another
duration is done by scaling the controller (``Controller.rescaled``),
which leaves holonomy and length unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SamplingError, StructuralInputError
from .linalg import SYMMETRY_TOL
from .manifold import FramePath, StiefelFrame

__all__ = [
    "Controller",
    "ExtremalCurve",
    "canonical_frame",
    "constraint_residual",
    "omega_drift",
    "analytic_length",
]


def canonical_frame(n: int, k: int) -> StiefelFrame:
    """The canonical base point V₀ = (I_k; 0) in C^{N×k}."""
    v = np.zeros((n, k), dtype=complex)
    v[:k, :k] = np.eye(k)
    return StiefelFrame(v)


@dataclass(frozen=True, eq=False)
class Controller:
    """Constant generator of an extremal curve, stored as blocks (Ω, W)."""

    omega: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        om = np.asarray(self.omega, dtype=complex)
        w = np.asarray(self.w, dtype=complex)
        if om.ndim != 2 or om.shape[0] != om.shape[1]:
            raise StructuralInputError(f"omega must be square, got shape {om.shape}")
        if w.ndim != 2 or w.shape[0] != om.shape[0]:
            raise StructuralInputError(
                f"w must be k×(N−k) with k = {om.shape[0]}, got shape {w.shape}"
            )
        if w.shape[1] < 1:
            raise StructuralInputError("w needs at least one column (N > k)")
        if not (np.all(np.isfinite(om)) and np.all(np.isfinite(w))):
            raise StructuralInputError("controller blocks contain non-finite entries")
        defect = np.linalg.norm(om + om.conj().T)
        if defect > SYMMETRY_TOL * max(1.0, np.linalg.norm(om)):
            raise StructuralInputError(f"omega is not anti-Hermitian: defect {defect:.3e}")
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "w", w)

    @property
    def k(self) -> int:
        return self.omega.shape[0]

    @property
    def n(self) -> int:
        return self.omega.shape[0] + self.w.shape[1]

    def x(self) -> np.ndarray:
        """Assemble the full N×N generator [[Ω, W], [−W†, 0]]."""
        k, n = self.k, self.n
        x = np.zeros((n, n), dtype=complex)
        x[:k, :k] = self.omega
        x[:k, k:] = self.w
        x[k:, :k] = -self.w.conj().T
        return x

    def rescaled(self, duration: float) -> "Controller":
        """Controller generating the same loop over [0, duration] instead of [0, 1]."""
        if duration <= 0:
            raise StructuralInputError(f"duration must be positive, got {duration!r}")
        return Controller(self.omega / duration, self.w / duration)


class ExtremalCurve:
    """The curve V(t) = e^{tX}·V₀·e^{−tΩ} for a fixed controller.

    Immutable; the two eigendecompositions are precomputed once so that
    dense sampling stays cheap.
    """

    def __init__(self, controller: Controller, v0: StiefelFrame | None = None,
                 duration: float = 1.0):
        if duration <= 0:
            raise StructuralInputError(f"duration must be positive, got {duration!r}")
        if v0 is None:
            v0 = canonical_frame(controller.n, controller.k)
        if v0.n != controller.n or v0.k != controller.k:
            raise StructuralInputError(
                f"base frame shape {(v0.n, v0.k)} does not match controller "
                f"{(controller.n, controller.k)}"
            )
        self.controller = controller
        self.v0 = v0
        self.duration = float(duration)
        self._lam_x, self._q_x = np.linalg.eigh(-1j * controller.x())
        self._lam_o, self._q_o = np.linalg.eigh(-1j * controller.omega)

    @property
    def k(self) -> int:
        return self.controller.k

    @property
    def n(self) -> int:
        return self.controller.n

    def frames_at(self, times) -> np.ndarray:
        """Frames at an array of parameter values, shape (len(times), N, k)."""
        t = np.atleast_1d(np.asarray(times, dtype=float))
        if t.size and (t.min() < -1e-12 or t.max() > self.duration + 1e-12):
            raise StructuralInputError(
                f"parameter out of range [0, {self.duration}]: [{t.min()}, {t.max()}]"
            )
        # e^{tX} V0 e^{-tΩ} through the cached eigenbases
        left = np.exp(1j * np.outer(t, self._lam_x))
        right = np.exp(-1j * np.outer(t, self._lam_o))
        qxv = self._q_x.conj().T @ self.v0.v @ self._q_o
        return np.einsum("ia,ma,ab,mb,jb->mij", self._q_x, left, qxv, right,
                         self._q_o.conj(), optimize=True)

    def frame_at(self, t: float) -> StiefelFrame:
        """The frame V(t) for a single parameter value 0 ≤ t ≤ duration."""
        return StiefelFrame(self.frames_at([float(t)])[0])

    def sample(self, n_samples: int) -> FramePath:
        """Uniform sampling of the curve on [0, duration]."""
        if n_samples < 2:
            raise SamplingError(f"need at least 2 samples, got {n_samples}")
        times = np.linspace(0.0, self.duration, n_samples)
        return FramePath(times, self.frames_at(times))


def _generator_matrix(controller_or_x) -> np.ndarray:
    if isinstance(controller_or_x, Controller):
        return controller_or_x.x()
    x = np.asarray(controller_or_x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise StructuralInputError(f"generator must be square, got shape {x.shape}")
    return x


def constraint_residual(controller_or_x, v0: StiefelFrame | None = None,
                        k: int | None = None) -> float:
    """Residual of the extremality constraint X − (PX + XP − PXP) at P = V₀V₀†.

    Accepts either a Controller or a raw square generator matrix (any
    anti-Hermitian candidate, e.g. one read back from a report file).  The
    residual equals the Frobenius norm of the lower-right block of X in the
    splitting defined by V₀, which is the unique obstruction; it vanishes
    for every assembled Controller.
    """
    x = _generator_matrix(controller_or_x)
    if v0 is None:
        if k is None:
            if isinstance(controller_or_x, Controller):
                k = controller_or_x.k
            else:
                raise StructuralInputError("raw generator needs v0 or k to fix the splitting")
        v0 = canonical_frame(x.shape[0], k)
    p = v0.v @ v0.v.conj().T
    px = p @ x
    xp = x @ p
    return float(np.linalg.norm(x - (px + xp - p @ xp)))


def omega_drift(curve: ExtremalCurve, n_samples: int) -> float:
    """Max deviation of V(t)†·X·V(t) from Ω over a uniform sample grid.

    Along an extremal curve this gauge-part projection is constant; the
    returned drift is zero up to roundoff and serves as a solution check.
    """
    if n_samples < 2:
        raise SamplingError(f"need at least 2 samples, got {n_samples}")
    x = curve.controller.x()
    frames = curve.frames_at(np.linspace(0.0, curve.duration, n_samples))
    pulled = np.einsum("mia,ij,mjb->mab", frames.conj(), x, frames)
    return float(np.linalg.norm(pulled - curve.controller.omega, axis=(1, 2)).max())


def analytic_length(controller: Controller, duration: float = 1.0) -> float:
    """Exact frame-metric length √tr(WW†)·T of the extremal curve.

    The curve has constant speed: tr(V̇†V̇) = tr(WW†) at every t, so the
    length is the speed times the duration.  Sampled polygonal lengths
    converge to this value as the grid refines.
    """
    if duration <= 0:
        raise StructuralInputError(f"duration must be positive, got {duration!r}")
    return float(np.linalg.norm(controller.w) * duration)
