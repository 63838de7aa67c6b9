"""Packing chromatic numbers through maximum stable sets of layered graphs."""

from ._backend import kernel as _kernel
from .errors import (
    BudgetExceededError,
    BudgetExhaustedError,
    DisconnectedError,
    EmptyLayerSetError,
    FormatError,
    GraphError,
    InvalidCoverError,
    InvalidInitialSetError,
    InvalidUpperBoundError,
    NoClosedFormError,
    PcnError,
    QTooSmallError,
    StarMembersPresentError,
    TooLargeError,
)
from .graph import (
    STAR,
    DistanceMatrix,
    Graph,
    LayeredGraph,
    all_pairs_distances,
    layered_graph,
    power_graph,
)
from .hamming import (
    HammingParams,
    alpha_upper_bound_propagation,
    closed_form_lower_bound,
    diagonal_stable_set,
    exact_closed_form,
    generate,
    hamming_distance_matrix,
    offset_permutation,
    two_layer_stable_set,
)
from .io import export_ilp, read_coloring, read_dimacs, render_bounds_table, write_coloring, write_dimacs, write_lp_file
from .mss import (
    UNLIMITED,
    CliqueCover,
    SolveBudget,
    SolveResult,
    SolveStatus,
    StableSet,
    clique_cover,
    clique_cover_even,
    clique_cover_odd,
    greedy_maximal_stable_set,
    solve_mss,
    validate_cover,
)
from .pcn import (
    LayeredStableSet,
    PackingColoring,
    PcnResult,
    PcnStatus,
    check_layered_stable_set,
    coloring_from_layered_set,
    hamming_bounds_pipeline,
    hamming_heuristic,
    pcn_bruteforce,
    pcn_exact_iterative,
    pcn_exact_starred,
    pcn_exact_starred_capped,
    starred_alpha_by_layers,
    verify_packing_coloring,
)

__version__ = "0.1.0"
BACKEND = _kernel.BACKEND
