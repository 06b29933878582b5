"""Exact spectral polytopes and generalized exclusion constraints for
weighted fermionic ensembles, with an independent non-interacting energy
oracle.  All arithmetic is exact over the rationals."""
from .configurations import (
    Lineup,
    config_energy,
    default_sizes,
    dominance_leq,
    enumerate_configurations,
    enumerate_lineups,
    occupation_vector,
)
from .constraints import (
    SymbolicInequality,
    constraints_for_r,
    evaluate,
    hierarchy_delta,
    prune_redundant,
    satisfies_all,
)
from .errors import (
    DomainError,
    ExclusionPolyError,
    GenericityError,
    InfeasibleError,
    MajorizationError,
    StructuralError,
    UnboundedError,
)
from .gok import GapResult, WeightedEnergyResult, dft_domain_membership, excitation_gaps, weighted_energy
from .lp import FeasibilityResult, LinearProgram, lp_feasible, lp_maximize, lp_minimize
from .majorization import (
    DoublyStochasticMatrix,
    PermutationCombination,
    birkhoff_decompose,
    hlp_transfer,
    majorizes,
    schur_horn_check,
    sort_desc,
)
from .polytope import (
    ApproximationPair,
    HalfspaceSystem,
    MembershipCertificate,
    PropertyViolation,
    VertexSet,
    WeightVector,
    facets,
    generating_vertices,
    inner_outer,
    membership,
    polytope_inclusion,
    prime_weights,
    support_minimum,
)
from .rational import as_rational, parse_vector

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
