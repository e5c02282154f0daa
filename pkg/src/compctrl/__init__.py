"""Minimum interconnections for structural controllability of identical subsystems."""
from .errors import Infeasible, InstanceError, InternalConsistencyError
from .graphs import EdgeClass, InaccessibleSccSet, build_digraph, inaccessible_nontop_sccs, strongly_connected_components
from .matching import Matching, build_system_bipartite, max_matching, min_cost_left_perfect_matching
from .oracle import GenParams, brute_force_minimum, random_spec
from .synth import synthesize
from .systems import (
    CompositeSpec,
    Interconnection,
    SparsityPattern,
    StateId,
    SubsystemTemplate,
    SynthesisReport,
    apply_interconnections,
    compose_full,
    transpose_system,
)
from .verify import Verdict, certify, is_structurally_controllable, lower_bound

__version__ = "0.1.0"

__all__ = [
    "CompositeSpec", "EdgeClass", "GenParams", "InaccessibleSccSet", "Infeasible", "InstanceError",
    "Interconnection", "InternalConsistencyError", "Matching", "SparsityPattern", "StateId",
    "SubsystemTemplate", "SynthesisReport", "Verdict", "apply_interconnections", "brute_force_minimum",
    "build_digraph", "build_system_bipartite", "certify", "compose_full", "inaccessible_nontop_sccs",
    "is_structurally_controllable", "lower_bound", "max_matching", "min_cost_left_perfect_matching",
    "random_spec", "strongly_connected_components", "synthesize", "transpose_system",
]
