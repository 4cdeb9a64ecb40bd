"""Fault diagnosis for hypercube interconnection networks.

Builds hypercubes, decides distinguishability of hybrid fault sets under the
PMC and comparison (MM*) testing models, computes t-diagnosability and
h-edge tolerable diagnosability with certified witnesses, generates and
decodes syndromes, and reduces fault-edge searches by hypercube symmetry.
"""

from .diagnosability import (
    DiagnosabilityReport,
    EdgeOrbitCatalog,
    OrbitEntry,
    edge_orbit_catalog,
    h_edge_tolerable_diagnosability,
    theorem_witness,
    verify_theorem,
)
from .diagnoser import DEFAULT_DIAGNOSE_BUDGET, DiagnosisResult, diagnose
from .distinguishability import (
    DEFAULT_SEARCH_BUDGET,
    Verdict,
    common_syndrome,
    distinguishable,
    distinguishable_mm_star,
    distinguishable_pmc,
    oracle_distinguishable,
    t_diagnosable_check,
    verify_certificate,
)
from .errors import (
    BoundError,
    BudgetTracker,
    DiagnosisToolError,
    DomainError,
    ResourceError,
)
from .models import (
    AdversaryStrategy,
    FaultScenario,
    MmTest,
    Model,
    PmcTest,
    Syndrome,
    consistent,
    enumerate_tests,
    enumerate_tests_mm_star,
    enumerate_tests_pmc,
    forced_result,
    generate_syndrome,
    load_syndrome,
    scenario_from_text,
    scenario_to_text,
    syndrome_from_text,
    syndrome_to_text,
)
from .symmetry import (
    apply_automorphism,
    canonical_edge_set,
    edge_orbit_reps,
    hypercube_edges,
    orbit_size,
)
from .topology import (
    DEFAULT_SUBSET_BUDGET,
    MAX_HYPERCUBE_DIM,
    Graph,
    build_hypercube,
    common_neighbors,
    graph_from_text,
    graph_hash,
    graph_to_text,
    min_boundary_bruteforce,
    min_boundary_formula,
    neighbor,
    neighborhood,
    normalize_edge,
    remove_edges,
    symmetric_difference,
)

__version__ = "0.1.0"

__all__ = [
    "AdversaryStrategy",
    "BoundError",
    "BudgetTracker",
    "DEFAULT_DIAGNOSE_BUDGET",
    "DEFAULT_SEARCH_BUDGET",
    "DEFAULT_SUBSET_BUDGET",
    "DiagnosabilityReport",
    "DiagnosisResult",
    "DiagnosisToolError",
    "DomainError",
    "EdgeOrbitCatalog",
    "FaultScenario",
    "Graph",
    "MAX_HYPERCUBE_DIM",
    "MmTest",
    "Model",
    "OrbitEntry",
    "PmcTest",
    "ResourceError",
    "Syndrome",
    "Verdict",
    "apply_automorphism",
    "build_hypercube",
    "canonical_edge_set",
    "common_neighbors",
    "common_syndrome",
    "consistent",
    "diagnose",
    "distinguishable",
    "distinguishable_mm_star",
    "distinguishable_pmc",
    "edge_orbit_catalog",
    "edge_orbit_reps",
    "enumerate_tests",
    "enumerate_tests_mm_star",
    "enumerate_tests_pmc",
    "forced_result",
    "generate_syndrome",
    "graph_from_text",
    "graph_hash",
    "graph_to_text",
    "h_edge_tolerable_diagnosability",
    "hypercube_edges",
    "load_syndrome",
    "min_boundary_bruteforce",
    "min_boundary_formula",
    "neighbor",
    "neighborhood",
    "normalize_edge",
    "orbit_size",
    "oracle_distinguishable",
    "remove_edges",
    "scenario_from_text",
    "scenario_to_text",
    "symmetric_difference",
    "syndrome_from_text",
    "syndrome_to_text",
    "t_diagnosable_check",
    "theorem_witness",
    "verify_certificate",
    "verify_theorem",
]
