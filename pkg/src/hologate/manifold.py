"""Frames, projectors, and the geometry of the frame bundle.

The complex Stiefel manifold (orthonormal k-frames V in C^N) sits over the
Grassmann manifold (rank-k orthogonal projectors P = V V†) as a principal
U(k)-bundle.  This module provides the value types for points and sampled
paths on both spaces, the bundle projection, the canonical connection
A = V† dV sampled from tangent data, a horizontality test, the constrained
action functional, and polygonal path lengths in both metrics.

Notes
-----
All values are treated as immutable once constructed; operations are pure
functions, so everything here is safe to share across threads.

Two metrics appear.  The frame metric is ‖dV‖² = tr(dV† dV); the projector
metric is ‖dP‖² = tr(dP dP).  Along horizontal lifts the projector length
is √2 times the frame length.  Both lengths are reported as measured and
never converted into one another.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SamplingError, StructuralInputError

__all__ = [
    "StiefelFrame",
    "GrassmannPoint",
    "FramePath",
    "ProjectorPath",
    "project",
    "projector_path",
    "connection_sample",
    "is_horizontal",
    "action_functional",
    "grassmann_path_length",
    "stiefel_path_length",
]

#: orthonormality tolerance for frames
STIEFEL_TOL = 1e-10

#: idempotency / Hermiticity tolerance for projectors
GRASSMANN_TOL = 1e-10

#: tolerance on tr P = k
TRACE_TOL = 1e-8


def _check_finite(a: np.ndarray, name: str) -> None:
    if not np.all(np.isfinite(a)):
        raise StructuralInputError(f"{name} contains non-finite entries")


@dataclass(frozen=True, eq=False)
class StiefelFrame:
    """An orthonormal k-frame: an N×k matrix V with V†V = I_k."""

    v: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, dtype=complex)
        if v.ndim != 2:
            raise StructuralInputError(f"frame must be a 2-d array, got shape {v.shape}")
        n, k = v.shape
        if not 1 <= k <= n:
            raise StructuralInputError(f"frame shape {v.shape} violates 1 <= k <= N")
        _check_finite(v, "frame")
        defect = np.linalg.norm(v.conj().T @ v - np.eye(k))
        if defect > STIEFEL_TOL:
            raise StructuralInputError(
                f"columns not orthonormal: ‖V†V − I‖ = {defect:.3e} > {STIEFEL_TOL:.0e}"
            )
        object.__setattr__(self, "v", v)

    @property
    def n(self) -> int:
        return self.v.shape[0]

    @property
    def k(self) -> int:
        return self.v.shape[1]


@dataclass(frozen=True, eq=False)
class GrassmannPoint:
    """A rank-k orthogonal projector: P† = P, P² = P, tr P = k."""

    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=complex)
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise StructuralInputError(f"projector must be square, got shape {p.shape}")
        _check_finite(p, "projector")
        herm = np.linalg.norm(p - p.conj().T)
        if herm > GRASSMANN_TOL:
            raise StructuralInputError(f"projector not Hermitian: defect {herm:.3e}")
        idem = np.linalg.norm(p @ p - p)
        if idem > GRASSMANN_TOL:
            raise StructuralInputError(f"projector not idempotent: ‖P²−P‖ = {idem:.3e}")
        tr = p.trace().real
        if abs(tr - round(tr)) > TRACE_TOL or round(tr) < 1:
            raise StructuralInputError(f"projector trace {tr!r} is not a positive integer")
        object.__setattr__(self, "p", p)

    @property
    def n(self) -> int:
        return self.p.shape[0]

    @property
    def k(self) -> int:
        return int(round(self.p.trace().real))


@dataclass(frozen=True, eq=False)
class FramePath:
    """A sampled frame curve: times (strictly increasing) and frames (n, N, k).

    Supports uniform and non-uniform grids.  Every sample must satisfy the
    StiefelFrame orthonormality invariant.
    """

    times: np.ndarray
    frames: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        f = np.asarray(self.frames, dtype=complex)
        if t.ndim != 1 or len(t) < 2:
            raise SamplingError("a path needs at least 2 samples")
        if f.ndim != 3 or f.shape[0] != len(t):
            raise StructuralInputError(
                f"frames must have shape (n_samples, N, k); got {f.shape} for {len(t)} times"
            )
        if np.any(np.diff(t) <= 0):
            raise StructuralInputError("times must be strictly increasing")
        _check_finite(f, "frames")
        gram = np.einsum("mia,mib->mab", f.conj(), f)
        defect = np.abs(gram - np.eye(f.shape[2])).max(initial=0.0)
        if defect > STIEFEL_TOL:
            raise StructuralInputError(
                f"path leaves the Stiefel manifold: worst ‖V†V − I‖ entry {defect:.3e}"
            )
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "frames", f)

    @property
    def n_samples(self) -> int:
        return len(self.times)

    @property
    def n(self) -> int:
        return self.frames.shape[1]

    @property
    def k(self) -> int:
        return self.frames.shape[2]

    def frame(self, i: int) -> StiefelFrame:
        return StiefelFrame(self.frames[i])


@dataclass(frozen=True, eq=False)
class ProjectorPath:
    """A sampled projector curve: times and projectors (n, N, N)."""

    times: np.ndarray
    projectors: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        p = np.asarray(self.projectors, dtype=complex)
        if t.ndim != 1 or len(t) < 2:
            raise SamplingError("a path needs at least 2 samples")
        if p.ndim != 3 or p.shape[0] != len(t) or p.shape[1] != p.shape[2]:
            raise StructuralInputError(
                f"projectors must have shape (n_samples, N, N); got {p.shape}"
            )
        if np.any(np.diff(t) <= 0):
            raise StructuralInputError("times must be strictly increasing")
        _check_finite(p, "projectors")
        herm = np.abs(p - p.conj().transpose(0, 2, 1)).max(initial=0.0)
        idem = np.abs(np.einsum("mij,mjk->mik", p, p) - p).max(initial=0.0)
        if herm > GRASSMANN_TOL or idem > GRASSMANN_TOL:
            raise StructuralInputError(
                f"path leaves the projector manifold: Hermiticity {herm:.3e}, "
                f"idempotency {idem:.3e}"
            )
        traces = np.einsum("mii->m", p).real
        if np.abs(traces - np.round(traces[0])).max() > TRACE_TOL:
            raise StructuralInputError("projector rank is not constant along the path")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "projectors", p)

    @property
    def n_samples(self) -> int:
        return len(self.times)

    @property
    def n(self) -> int:
        return self.projectors.shape[1]

    @property
    def k(self) -> int:
        return int(round(self.projectors[0].trace().real))


def project(frame: StiefelFrame) -> GrassmannPoint:
    """Bundle projection V ↦ P = V V†."""
    v = frame.v
    return GrassmannPoint(v @ v.conj().T)


def projector_path(path: FramePath) -> ProjectorPath:
    """Apply the bundle projection samplewise: V(t) ↦ P(t) = V(t)V(t)†."""
    p = np.einsum("mia,mja->mij", path.frames, path.frames.conj())
    return ProjectorPath(path.times, p)


def connection_sample(frame: StiefelFrame, vdot) -> np.ndarray:
    """Canonical connection A = V†·Vdot evaluated on one tangent sample.

    For a genuine Stiefel tangent at V the result is anti-Hermitian; for
    finite-difference tangents it is anti-Hermitian up to truncation error.
    The raw product is returned without symmetrization.
    """
    vdot = np.asarray(vdot, dtype=complex)
    if vdot.shape != frame.v.shape:
        raise StructuralInputError(
            f"tangent shape {vdot.shape} does not match frame shape {frame.v.shape}"
        )
    _check_finite(vdot, "tangent")
    return frame.v.conj().T @ vdot


def _sampled_derivatives(times: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Centered differences at interior samples, one-sided at the endpoints."""
    d = np.empty_like(values)
    dt = times[2:] - times[:-2]
    d[1:-1] = (values[2:] - values[:-2]) / dt[:, None, None]
    d[0] = (values[1] - values[0]) / (times[1] - times[0])
    d[-1] = (values[-1] - values[-2]) / (times[-1] - times[-2])
    return d


def is_horizontal(path: FramePath, tol: float) -> tuple[bool, float]:
    """Test V†(dV/dt) = 0 along a sampled path.

    Uses centered finite differences at the interior samples (endpoints are
    excluded: one-sided differences would contaminate the measurement with a
    first-order error).  Returns the verdict together with the measured
    maximum violation max_i ‖V_i†·V̇_i‖_F.
    """
    if path.n_samples < 3:
        raise SamplingError("horizontality test needs at least 3 samples")
    f = path.frames
    dt = (path.times[2:] - path.times[:-2])[:, None, None]
    vdot = (f[2:] - f[:-2]) / dt
    a = np.einsum("mia,mib->mab", f[1:-1].conj(), vdot)
    violation = float(np.linalg.norm(a, axis=(1, 2)).max())
    return violation <= tol, violation


def action_functional(path: FramePath, omega_path=None) -> float:
    """Constrained action S = ∫ [tr(V̇†V̇) − tr(Ω·V†V̇)] dt on a sampled path.

    ``omega_path`` supplies the u(k)-valued Lagrange multiplier Ω(t) at each
    sample; ``None`` (or an empty sequence) means Ω ≡ 0.  Derivatives use
    centered differences (one-sided at the endpoints) and the integral uses
    the trapezoidal rule, so the result carries O(Δt²) truncation error.
    For horizontal paths the multiplier term vanishes up to that error and
    S is independent of the supplied Ω.
    """
    f = path.frames
    vdot = _sampled_derivatives(path.times, f)
    integrand = np.einsum("mia,mia->m", vdot.conj(), vdot).real
    if omega_path is not None and len(omega_path) > 0:
        om = np.asarray(omega_path, dtype=complex)
        if om.shape != (path.n_samples, path.k, path.k):
            raise StructuralInputError(
                f"omega_path shape {om.shape} is not aligned with the path "
                f"(expected {(path.n_samples, path.k, path.k)})"
            )
        a = np.einsum("mia,mib->mab", f.conj(), vdot)
        integrand = integrand - np.einsum("mab,mba->m", om, a).real
    return float(np.trapezoid(integrand, path.times))


def grassmann_path_length(path: ProjectorPath) -> float:
    """Polygonal length Σ √tr(ΔP·ΔP) of a sampled projector path.

    ΔP is Hermitian, so √tr(ΔP·ΔP) is the Frobenius norm of each chord.
    Converges to the Riemannian length in the ‖dP‖² = tr(dP dP) metric as
    the sampling refines.
    """
    chords = np.diff(path.projectors, axis=0)
    return float(np.linalg.norm(chords, axis=(1, 2)).sum())


def stiefel_path_length(path: FramePath) -> float:
    """Polygonal length Σ ‖ΔV‖_F of a sampled frame path (frame metric)."""
    chords = np.diff(path.frames, axis=0)
    return float(np.linalg.norm(chords, axis=(1, 2)).sum())
