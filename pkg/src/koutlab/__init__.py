"""Random K-out graphs: generation, exact analysis, closed-form bounds, sweeps."""

from .adversary import DeletionSpec, delete_random_nodes, nodes_outside_cmax
from .bounds import (
    BoundsReport,
    asymptotic_upper_bound,
    bounds_report,
    ff_lower_bound,
    finite_upper_bound,
    lambda_star_linear,
    lambda_star_sublinear,
    lower_bound_thm2,
    mean_degree,
    recommend_k,
    threshold_r1,
    threshold_r2,
    threshold_r3,
    threshold_r4,
    ym_lower_bound,
)
from .errors import InfeasibleError
from .generators import (
    KOutParams,
    er_p_matching_kout,
    generate_er,
    generate_kout,
    generate_rrg,
    make_rng,
    sample_k_subset,
    sample_selections,
)
from .graph import (
    ComponentSummary,
    DegreeStats,
    Graph,
    components,
    degree_stats,
    from_edgelist_text,
    induced_subgraph,
    is_connected,
    new_graph,
    to_edgelist_text,
)
from .montecarlo import (
    ExperimentSpec,
    SweepRow,
    derive_trial_seed,
    estimate_connectivity,
    rows_to_csv_text,
    rows_to_json,
    sweep_deletion_connectivity,
    sweep_giant,
    sweep_robustness,
    write_csv,
)
from .robustness import (
    DEFAULT_CAP,
    RobustnessResult,
    is_r_reachable,
    is_r_robust,
    max_robustness,
    naive_is_r_robust,
)
from .spectral import (
    SymMatrix,
    combinatorial_laplacian,
    eigenvalues,
    lambda2,
    normalized_laplacian,
    spectral_compare,
)

__version__ = "0.1.0"
