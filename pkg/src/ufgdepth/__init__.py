"""Union-free generic depth for samples of partial orders.

Exact (rational-arithmetic) empirical and population depth over posets,
built from benchmark performance tables or direct poset input, plus the
descriptive analyses on top: extremal posets, edge persistence, dispersion,
rank shifts, and a paired-comparison model with ties for contrast.
"""

from .errors import (
    AmbiguousRanking,
    CycleDetected,
    Degenerate,
    DuplicateCell,
    EmptyInput,
    FamilySampleMismatch,
    IndifferentAlgorithms,
    MemberNotInSet,
    MissingCell,
    NotAntisymmetric,
    NotReflexive,
    NotTransitive,
    ScopeMismatch,
    SearchBudgetExceeded,
    SolverTimeout,
    UfgError,
    UniverseTooLarge,
    UnknownOrientation,
)
from .poset import (
    DEFAULT_ENUM_LIMIT,
    ItemUniverse,
    Poset,
    PosetSet,
    Relation,
    closure,
    closure_membership,
    count_posets,
    enumerate_posets,
    linear_extensions,
    order_dimension,
    poset_from_edges,
    poset_from_json,
    poset_from_text,
    poset_to_json,
    poset_to_text,
    posets_from_text,
    posets_to_text,
    transitive_hull,
    transitive_reduction,
    trivial_poset,
    validate_poset,
)
from .family import (
    DistinguishingSets,
    PosetSample,
    UfgFamily,
    UfgSet,
    UfgWitness,
    cardinality_cap,
    distinguishing_sets,
    enumerate_ufg_family,
    family_from_jsonl,
    family_to_jsonl,
    is_ufg,
    is_ufg_oracle,
    max_set_size,
    ufg_witness,
    vc_dimension_obs,
)
from .depth import (
    SCOPE_ALL,
    SCOPE_EXPLICIT,
    SCOPE_OBSERVED,
    DepthMap,
    DiscretePmf,
    depth_map,
    depth_map_to_csv,
    depth_map_to_json,
    empirical_depth,
    population_depth,
    triviality_check,
    zero_depth_screen,
)
from .extremal import (
    ExtremalProblem,
    ExtremalSolution,
    emit_lp,
    k_best,
    solve_extremal,
    verify_solution,
)
from .bench import (
    EdgePersistence,
    PerformanceTable,
    RankShift,
    SumStatistics,
    build_poset,
    dispersion,
    edge_persistence,
    ingest,
    parse_orientations,
    rank_shift,
    sample_from_table,
    sum_statistics,
)
from .davidson import (
    DavidsonModel,
    PairCounts,
    counts_from_posets,
    davidson_fit,
    davidson_prob,
)

__version__ = "0.1.0"
