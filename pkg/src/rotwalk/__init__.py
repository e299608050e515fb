"""Coined discrete-time quantum walks on regular graphs via rotation maps.

The pipeline: build or load a d-regular graph, give it a rotation map
(greedy extraction, a hand-written file, or a solver), turn the map into
a shift operator, measure the operator's unitarity defect exactly, and
evolve walk states under coin+shift steps.  The central fact the package
operationalizes: the shift operator is unitary exactly when every
rotation-map column is a permutation of the vertices.
"""

from .errors import (
    ConfigError,
    FormatError,
    GenerationError,
    GraphStructureError,
    RegularityError,
    RotwalkError,
    ValidationError,
)
from .graphs import (
    FAMILIES,
    FamilySpec,
    RegularGraph,
    check_regularity,
    circulant_graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    generate_graph,
    hypercube_graph,
    parse_graph,
    random_regular_graph,
    serialize_graph,
    torus_graph,
)
from .operators import (
    COIN_KINDS,
    PRODUCT_DIM_LIMIT,
    UNITARY_TOL,
    CoinOperator,
    ShiftOperator,
    UnitarityReport,
    adjoint,
    build_coin,
    build_shift,
    unitarity_defect,
)
from .rotmap import (
    ConsistencyReport,
    RotationMap,
    Violation,
    check_involution_consistent,
    check_permutation_consistent,
    cycle_rotation,
    greedy_rotation,
    parse_rotation,
    serialize_rotation,
    validate_against_graph,
)
from .solvers import (
    CRITERIA,
    METHODS,
    STATUSES,
    EdgeColoring,
    SolverConfig,
    SolverOutcome,
    SolverStats,
    exhaustive_search,
    greedy_coloring,
    rotation_from_coloring,
    solve,
    solve_edge_coloring,
    solve_permutation,
    stress_run,
    vizing_color,
)
from .version import REPORT_VERSION, __version__
from .walk import (
    TrajectoryRecord,
    WalkState,
    WalkTrajectory,
    apply,
    distribution,
    init_state,
    inverse_step,
    run,
    step,
    uniform_state,
)

__all__ = [
    "__version__",
    "REPORT_VERSION",
    "RotwalkError",
    "FormatError",
    "GraphStructureError",
    "RegularityError",
    "ValidationError",
    "GenerationError",
    "ConfigError",
    "RegularGraph",
    "FamilySpec",
    "FAMILIES",
    "generate_graph",
    "parse_graph",
    "serialize_graph",
    "check_regularity",
    "cycle_graph",
    "complete_graph",
    "complete_bipartite_graph",
    "hypercube_graph",
    "torus_graph",
    "circulant_graph",
    "random_regular_graph",
    "RotationMap",
    "ConsistencyReport",
    "Violation",
    "greedy_rotation",
    "cycle_rotation",
    "check_permutation_consistent",
    "check_involution_consistent",
    "validate_against_graph",
    "parse_rotation",
    "serialize_rotation",
    "ShiftOperator",
    "CoinOperator",
    "UnitarityReport",
    "build_shift",
    "build_coin",
    "adjoint",
    "unitarity_defect",
    "UNITARY_TOL",
    "PRODUCT_DIM_LIMIT",
    "COIN_KINDS",
    "WalkState",
    "WalkTrajectory",
    "TrajectoryRecord",
    "init_state",
    "uniform_state",
    "apply",
    "step",
    "inverse_step",
    "run",
    "distribution",
    "SolverConfig",
    "SolverStats",
    "SolverOutcome",
    "EdgeColoring",
    "CRITERIA",
    "METHODS",
    "STATUSES",
    "solve",
    "solve_permutation",
    "solve_edge_coloring",
    "greedy_coloring",
    "vizing_color",
    "rotation_from_coloring",
    "exhaustive_search",
    "stress_run",
]
