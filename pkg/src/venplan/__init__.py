"""Planning toolkit for moving energy over road networks with EVs as carriers.

The library models a road network whose vehicle routes can ferry small
energy packets between junctions equipped for wireless charge and
discharge. It enumerates the energy paths connecting a source junction to a
target, prices each path's deliverable energy and conversion loss, and
solves two linear programs: maximize delivered energy under a loss budget,
or meet a delivery floor at minimum loss. A scenario format, a seeded
generator, and a sweep harness support repeatable experiments.
"""

from ._version import __version__
from .errors import (
    ScenarioFormatError,
    SolverError,
    ValidationError,
    VenplanError,
)
from .network import (
    Arc,
    RoadNetwork,
    SubRoute,
    VehicularRoute,
    build_network,
    route_delay,
    route_junctions,
    sub_route,
    validate_route,
)
from .paths import (
    FULL_ROUTE,
    PER_HOP,
    EnergyPath,
    EnumerationConfig,
    PathViolation,
    enumerate_paths,
    validate_path,
)
from .energetics import (
    EnergyParams,
    PathEconomics,
    loss_factor,
    max_rate,
    max_transferable,
    path_delay,
    path_economics,
    path_loss,
    source_injection,
)
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, LPResult, solve_lp
from .planner import (
    GREEDY,
    MAX_ENERGY,
    MIN_LOSS,
    SIMPLEX,
    MultiSourceResult,
    PairPlan,
    PathAssignment,
    PlanRequest,
    ScenarioSolution,
    TradeoffReport,
    TransferPlan,
    check_tradeoff_properties,
    knapsack_assign,
    lp_assign,
    solve,
    solve_max_energy,
    solve_min_loss,
    solve_multi_source,
    solve_scenario,
)
from .scenario import (
    GeneratorConfig,
    Scenario,
    generate_scenario,
    parse_scenario,
    scenario_hash,
    serialize_scenario,
)
from .sweep import (
    SWEEP_PARAMETERS,
    SweepPoint,
    SweepResult,
    SweepSpec,
    find_crossover,
    read_sweep_csv,
    run_sweep,
    sweep_metadata,
    sweep_to_csv,
)

__all__ = [
    "__version__",
    "VenplanError",
    "ValidationError",
    "ScenarioFormatError",
    "SolverError",
    "Arc",
    "RoadNetwork",
    "SubRoute",
    "VehicularRoute",
    "build_network",
    "route_delay",
    "route_junctions",
    "sub_route",
    "validate_route",
    "FULL_ROUTE",
    "PER_HOP",
    "EnergyPath",
    "EnumerationConfig",
    "PathViolation",
    "enumerate_paths",
    "validate_path",
    "EnergyParams",
    "PathEconomics",
    "loss_factor",
    "max_rate",
    "max_transferable",
    "path_delay",
    "path_economics",
    "path_loss",
    "source_injection",
    "LPResult",
    "solve_lp",
    "OPTIMAL",
    "INFEASIBLE",
    "UNBOUNDED",
    "GREEDY",
    "SIMPLEX",
    "MAX_ENERGY",
    "MIN_LOSS",
    "MultiSourceResult",
    "PairPlan",
    "PathAssignment",
    "PlanRequest",
    "ScenarioSolution",
    "TradeoffReport",
    "TransferPlan",
    "check_tradeoff_properties",
    "knapsack_assign",
    "lp_assign",
    "solve",
    "solve_max_energy",
    "solve_min_loss",
    "solve_multi_source",
    "solve_scenario",
    "GeneratorConfig",
    "Scenario",
    "generate_scenario",
    "parse_scenario",
    "scenario_hash",
    "serialize_scenario",
    "SWEEP_PARAMETERS",
    "SweepPoint",
    "SweepResult",
    "SweepSpec",
    "find_crossover",
    "read_sweep_csv",
    "run_sweep",
    "sweep_metadata",
    "sweep_to_csv",
]
