"""Single-source shortest paths with negative weights by snakes reweighting."""

from .classic import acyclic_shortest_paths, bellman_ford, dijkstra, topological_sort
from .graph import (
    DistanceLabels,
    Graph,
    NegativeCycleCertificate,
    SolveOutcome,
    has_negative_arc,
    path_reduced_weight,
    reduced_weight,
)
from .solver import (
    ReweightArtifact,
    SolveConfig,
    differential_check,
    reweight,
    solve_sssp,
    verify_certificate,
)

__all__ = [
    "DistanceLabels",
    "Graph",
    "NegativeCycleCertificate",
    "ReweightArtifact",
    "SolveConfig",
    "SolveOutcome",
    "acyclic_shortest_paths",
    "bellman_ford",
    "differential_check",
    "dijkstra",
    "has_negative_arc",
    "path_reduced_weight",
    "reduced_weight",
    "reweight",
    "solve_sssp",
    "topological_sort",
    "verify_certificate",
]
