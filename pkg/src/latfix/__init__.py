"""Least-fixpoint solvers for meet-closed feasibility predicates on vector lattices.

One engine, many instantiations: precedence-constrained scheduling, prefix
sums, constrained stable matching, single-source shortest paths, minimum
market clearing prices, and enumeration of every feasible solution through
join-irreducible elements.
"""

from .clearing import AuctionInstance, clearing_problem, demand_graph, minimal_overdemanded
from .constraints import (
    AtMost,
    Equal,
    Implies,
    LowerBound,
    RejectedConstraint,
    WithinDelta,
    conjoin,
    constraint_forbidden,
    parse_constraint,
)
from .demos import JobInstance, PrefixInstance, job_problem, prefix_problem
from .engine import (
    PARALLEL,
    SEQUENTIAL,
    DomainTooLarge,
    LatticeProblem,
    ProblemContractViolation,
    SolveResult,
    check_least,
    solve,
)
from .matching import (
    CyclicPrecedence,
    PrecedenceEdge,
    SmpInstance,
    frontier,
    is_stable,
    matching_of,
    proposal_vector,
    smp_problem,
)
from .paths import (
    UnreachableVertex,
    WeightedDigraph,
    beta,
    dijkstra_distances,
    fixed_set,
    parent,
    shortest_a,
    shortest_b,
)
from .slices import (
    EventSpaceTooLarge,
    JoinIrreducible,
    SlicePoset,
    TooManySolutions,
    build_slice,
    count_solutions,
    enumerate_solutions,
    join_irreducible,
)

__version__ = "0.1.0"

__all__ = [
    "AtMost",
    "AuctionInstance",
    "CyclicPrecedence",
    "DomainTooLarge",
    "Equal",
    "EventSpaceTooLarge",
    "Implies",
    "JobInstance",
    "JoinIrreducible",
    "LatticeProblem",
    "LowerBound",
    "PARALLEL",
    "PrecedenceEdge",
    "PrefixInstance",
    "ProblemContractViolation",
    "RejectedConstraint",
    "SEQUENTIAL",
    "SlicePoset",
    "SmpInstance",
    "SolveResult",
    "TooManySolutions",
    "UnreachableVertex",
    "WeightedDigraph",
    "WithinDelta",
    "beta",
    "build_slice",
    "check_least",
    "clearing_problem",
    "conjoin",
    "constraint_forbidden",
    "count_solutions",
    "demand_graph",
    "dijkstra_distances",
    "enumerate_solutions",
    "fixed_set",
    "frontier",
    "is_stable",
    "job_problem",
    "join_irreducible",
    "matching_of",
    "minimal_overdemanded",
    "parent",
    "parse_constraint",
    "prefix_problem",
    "proposal_vector",
    "shortest_a",
    "shortest_b",
    "smp_problem",
    "solve",
]
