"""Deterministic shortest-path toolkit built on hub-set hierarchies.

Exposes the graph container and oracles, the snapshot Bellman-Ford engines,
hub-set construction and negative-cycle detection, the depth-tunable
all-pairs pipeline, cycle-ratio optimization, and the work/depth meter.
"""

from .graph import (
    INF,
    Digraph,
    NegativeCycleDetected,
    Path,
    build_graph,
    enumerate_simple_cycles,
    floyd_warshall_oracle,
    has_cycle,
    hop_limited_oracle,
    negative_cycle_hops_oracle,
)
from .bellman_ford import (
    HopLabels,
    NumberOps,
    bf_run,
    bf_run_augmented,
    bf_run_multi,
    bf_step,
    extract_minimal_path,
)
from .hubs import (
    HubHierarchy,
    NegativeCycle,
    build_hub_hierarchy,
    collect_minimal_paths,
    extend_hubs,
    greedy_hitting_set,
    sample_hubs,
    shortest_negative_cycle,
    verify_hub_property,
)
from .minplus import (
    ApspResult,
    DistMatrix,
    LevelDistances,
    NegativeDiagonal,
    apsp,
    build_hub_graph,
    lift_level,
    minplus_closure,
    minplus_product,
)
from .parametric import (
    AcyclicGraphError,
    Feasible,
    Infeasible,
    LinearValue,
    RatioAnswer,
    TimedDigraph,
    build_timed_graph,
    evaluate_lambda,
    min_mean_cycle_karp,
    min_ratio_binary_search,
    min_ratio_parametric,
)
from .meter import CostMeter, PhaseEntry, WorkDepthReport
from .fileio import ParseError, parse_graph, parse_graph_text, serialize_graph

__all__ = [
    "INF",
    "Digraph",
    "Path",
    "NegativeCycleDetected",
    "build_graph",
    "has_cycle",
    "hop_limited_oracle",
    "floyd_warshall_oracle",
    "negative_cycle_hops_oracle",
    "enumerate_simple_cycles",
    "HopLabels",
    "NumberOps",
    "bf_step",
    "bf_run",
    "bf_run_multi",
    "bf_run_augmented",
    "extract_minimal_path",
    "NegativeCycle",
    "HubHierarchy",
    "greedy_hitting_set",
    "sample_hubs",
    "collect_minimal_paths",
    "extend_hubs",
    "build_hub_hierarchy",
    "shortest_negative_cycle",
    "verify_hub_property",
    "NegativeDiagonal",
    "DistMatrix",
    "LevelDistances",
    "ApspResult",
    "minplus_product",
    "minplus_closure",
    "build_hub_graph",
    "lift_level",
    "apsp",
    "TimedDigraph",
    "LinearValue",
    "RatioAnswer",
    "Feasible",
    "Infeasible",
    "AcyclicGraphError",
    "build_timed_graph",
    "min_mean_cycle_karp",
    "evaluate_lambda",
    "min_ratio_binary_search",
    "min_ratio_parametric",
    "CostMeter",
    "PhaseEntry",
    "WorkDepthReport",
    "ParseError",
    "parse_graph",
    "parse_graph_text",
    "serialize_graph",
]
