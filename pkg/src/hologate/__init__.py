"""hologate: minimum-length holonomic gate controllers.

Synthesizes constant-generator controllers whose horizontal loops realize
a requested unitary as their non-Abelian geometric phase, then verifies
them three independent ways: closed-form boundary conditions, discretized
holonomy transport, and full Schrödinger evolution in the adiabatic limit.
"""

__version__ = "0.1.0"

from .adiabatic import (
    AdiabaticResult,
    HamiltonianSchedule,
    StateVector,
    evolve,
    extract_holonomy,
    reduced_evolution,
    simulated_holonomy,
)
from .errors import (
    AdiabaticityError,
    GateSpecError,
    HologateError,
    NotALoopError,
    NumericalError,
    SamplingError,
    StructuralInputError,
    SynthesisError,
)
from .extremal import (
    Controller,
    ExtremalCurve,
    analytic_length,
    canonical_frame,
    constraint_residual,
    omega_drift,
)
from .gates import UnitaryGate, gate_catalog
from .holonomy import (
    HolonomyReport,
    closure_error,
    holonomy_of_horizontal_loop,
    horizontal_lift,
    lifted_ode_holonomy,
    ordered_product_holonomy,
)
from .linalg import (
    expm_antihermitian,
    frobenius_distance,
    hermitian_eig,
    polar_retract,
)
from .manifold import (
    FramePath,
    GrassmannPoint,
    ProjectorPath,
    StiefelFrame,
    action_functional,
    connection_sample,
    grassmann_path_length,
    is_horizontal,
    project,
    projector_path,
    stiefel_path_length,
)
from .synthesis import (
    GateSpectrum,
    SynthesisReport,
    analytic_holonomy,
    build_controller,
    diagonalize_gate,
    mode_parameters,
    synthesize,
)

__all__ = [
    "__version__",
    "AdiabaticResult",
    "AdiabaticityError",
    "Controller",
    "ExtremalCurve",
    "FramePath",
    "GateSpecError",
    "GateSpectrum",
    "GrassmannPoint",
    "HamiltonianSchedule",
    "HolonomyReport",
    "HologateError",
    "NotALoopError",
    "NumericalError",
    "ProjectorPath",
    "SamplingError",
    "StateVector",
    "StiefelFrame",
    "StructuralInputError",
    "SynthesisError",
    "SynthesisReport",
    "UnitaryGate",
    "action_functional",
    "analytic_holonomy",
    "analytic_length",
    "build_controller",
    "canonical_frame",
    "closure_error",
    "connection_sample",
    "constraint_residual",
    "diagonalize_gate",
    "evolve",
    "expm_antihermitian",
    "extract_holonomy",
    "frobenius_distance",
    "gate_catalog",
    "grassmann_path_length",
    "hermitian_eig",
    "holonomy_of_horizontal_loop",
    "horizontal_lift",
    "is_horizontal",
    "lifted_ode_holonomy",
    "mode_parameters",
    "omega_drift",
    "ordered_product_holonomy",
    "polar_retract",
    "project",
    "projector_path",
    "reduced_evolution",
    "simulated_holonomy",
    "stiefel_path_length",
    "synthesize",
]
