"""Quantum Hamilton-Jacobi tools for 1-D Schrodinger problems.

Build a real basis pair, choose a microstate (a, b, c), and evaluate the
conjugate momentum, the characteristic function and the time of transit.
Checks for the underlying identities live in :mod:`qhjtraj.verify`.
"""

from .errors import (
    BracketError,
    ConvergenceError,
    DomainError,
    PrecisionWarning,
    QHJError,
    ResolutionError,
    StepSizeError,
    ValidationError,
)
from .model import (
    FiniteWell,
    Grid,
    Harmonic,
    InfiniteWell,
    LinearRamp,
    PhysicalConstants,
    Potential,
    StepBarrier,
    make_grid,
    parse_potential,
    potential_eval,
    turning_points,
)
from .qhj import (
    CharacteristicFunction,
    DegenerateFamily,
    Microstate,
    MomentumField,
    SuperpositionCoeffs,
    canonical_microstate,
    characteristic_function,
    conjugate_momentum,
    is_admissible,
    microstate_from_initial_conditions,
    microstate_to_superposition,
    random_microstates,
    reconstruct_polar,
    reconstruct_trig,
    superposition_from_initial_conditions,
)
from .schrodinger import (
    BasisPair,
    EigenSolution,
    closed_form_pair,
    decaying_solution,
    eigen_pair,
    find_eigenvalue,
    integrate_pair,
    pair_from_solution,
    scale_wronskian,
)
from .trajectory import TrajectoryCurve, sample_trajectory, time_of_transit
from .verify import (
    action_increment,
    action_tail_bound,
    boundary_node_check,
    microstate_invariance_check,
    qshje_residual,
    substitution_residuals,
)

__version__ = "0.1.0"
