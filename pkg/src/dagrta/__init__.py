"""Worst-case response-time analysis and optimization for parallel DAG tasks.

The toolkit bounds the response time of a DAG task under any
work-conserving scheduler on m identical cores, shrinks that bound by
adding precedence edges that construct longer generalized paths,
minimizes per-task core allocations under deadlines, decides federated
schedulability of task sets, simulates schedules to validate the bounds
empirically, and reproduces the accompanying experiments at desk scale.
"""
from .bounds import (
    BoundReport,
    analyze,
    extract_path_list,
    graham_bound,
    multipath_bound,
)
from .experiments import (
    ExperimentConfig,
    experiment_one_task,
    experiment_task_sets,
    run_experiment,
)
from .federated import (
    INFEASIBLE,
    AllocationResult,
    SporadicTask,
    TaskSet,
    allocate,
    allocate_detail,
    classify,
    edge_cores,
    fed_cores,
    path_cores,
    schedule_task_set,
)
from .graph import (
    CycleError,
    DagTask,
    GeneralizedPath,
    GeneralizedPathList,
    LengthTable,
    ReachabilityIndex,
    RedundantEdgeError,
    ResidueGraph,
    add_edge,
    build_dag,
    is_generalized_path,
    length_tables,
    longest_path,
    para,
    reachability,
    residue,
    validate_dag,
    volume,
)
from .optimizer import (
    InsertionRecord,
    OptimizationResult,
    add_edge_pass,
    check_principle2,
    check_principle3,
    optimize,
    optimize_for_bound,
)
from .sim import (
    BoundViolationError,
    SimTrace,
    ValidationReport,
    check_trace,
    simulate,
    validate_bound,
)
from .taskgen import GenConfig, gen_dag, gen_task, gen_task_set

__version__ = "0.1.0"

__all__ = [
    "AllocationResult",
    "BoundReport",
    "BoundViolationError",
    "CycleError",
    "DagTask",
    "ExperimentConfig",
    "GenConfig",
    "GeneralizedPath",
    "GeneralizedPathList",
    "INFEASIBLE",
    "InsertionRecord",
    "LengthTable",
    "OptimizationResult",
    "ReachabilityIndex",
    "RedundantEdgeError",
    "ResidueGraph",
    "SimTrace",
    "SporadicTask",
    "TaskSet",
    "ValidationReport",
    "add_edge",
    "add_edge_pass",
    "allocate",
    "allocate_detail",
    "analyze",
    "build_dag",
    "check_principle2",
    "check_principle3",
    "check_trace",
    "classify",
    "edge_cores",
    "experiment_one_task",
    "experiment_task_sets",
    "extract_path_list",
    "fed_cores",
    "gen_dag",
    "gen_task",
    "gen_task_set",
    "graham_bound",
    "is_generalized_path",
    "length_tables",
    "longest_path",
    "multipath_bound",
    "optimize",
    "optimize_for_bound",
    "para",
    "path_cores",
    "reachability",
    "residue",
    "run_experiment",
    "schedule_task_set",
    "simulate",
    "validate_bound",
    "validate_dag",
    "volume",
]
