"""Bottleneck invariants, dipole witnesses, and fat-ladder analysis for
finite multigraphs."""

from .bottleneck import (
    BottleneckReport,
    Ladder,
    edge_bottleneck_exact,
    find_dipole_ladder,
    find_theta_subdivision,
    normalize_four_ladder,
    point_bottleneck_exact,
)
from .coarse import (
    CmtResult,
    FatDecision,
    FatWitness,
    SweepReport,
    SweepRow,
    asymptotic_sweep,
    cmt_construct_ladder,
    decide_fat_bottleneck,
    find_fat_ladder,
    find_separator,
    verify_fat_ladder,
)
from .classify import (
    ClassEvidence,
    ClassReport,
    CycleRef,
    classify_graph,
    cycle_intersection_oracle,
    enumerate_cycles,
)
from .corpus import all_graphs, connected_graphs, connected_graphs_up_to
from .families import FAMILIES, FamilySpec, family_spec, generate
from .errors import (
    BottleneckLabError,
    BudgetExceededError,
    CmtPreconditionError,
    GraphFormatError,
    OracleUnavailableError,
    SelfLoopError,
)
from .graph import (
    MinorStep,
    Multigraph,
    PathWitness,
    components_excluding,
    minor_reduce,
    neighborhood,
    parse_edge_list,
    parse_json_graph,
    serialize_edge_list,
    serialize_json_graph,
    set_distance,
    subdivide_all,
)
from .subsets import ScanResult, edge_bond_scan, point_separator_scan

__all__ = [
    "FAMILIES",
    "BottleneckLabError",
    "BottleneckReport",
    "BudgetExceededError",
    "ClassEvidence",
    "ClassReport",
    "CmtPreconditionError",
    "CmtResult",
    "CycleRef",
    "FamilySpec",
    "FatDecision",
    "FatWitness",
    "GraphFormatError",
    "Ladder",
    "MinorStep",
    "Multigraph",
    "OracleUnavailableError",
    "PathWitness",
    "ScanResult",
    "SelfLoopError",
    "SweepReport",
    "SweepRow",
    "all_graphs",
    "asymptotic_sweep",
    "classify_graph",
    "cmt_construct_ladder",
    "components_excluding",
    "connected_graphs",
    "connected_graphs_up_to",
    "cycle_intersection_oracle",
    "decide_fat_bottleneck",
    "edge_bond_scan",
    "edge_bottleneck_exact",
    "enumerate_cycles",
    "family_spec",
    "find_dipole_ladder",
    "find_fat_ladder",
    "find_separator",
    "find_theta_subdivision",
    "generate",
    "minor_reduce",
    "neighborhood",
    "normalize_four_ladder",
    "parse_edge_list",
    "parse_json_graph",
    "point_bottleneck_exact",
    "point_separator_scan",
    "serialize_edge_list",
    "serialize_json_graph",
    "set_distance",
    "subdivide_all",
    "verify_fat_ladder",
]

__version__ = "0.1.0"
