"""Base-orderability of matroids presented by their cyclic flats."""
from .core import (
    BudgetError,
    DomainError,
    InvariantError,
    Matroid,
    MatroidError,
    Presentation,
    PresentationError,
    ValidationReport,
    free_matroid,
    uniform,
    validate_presentation,
)
from .critical import (
    CriticalGraph,
    Obstruction,
    build_m_delta,
    build_z_delta,
    enumerate_critical_graphs,
    find_obstructions,
)
from .exchange import (
    BlockingSubgraph,
    Certificate,
    ExchangeDigraph,
    ExchangeOrdering,
    certify_excluded_minor,
    exchange_digraph,
    has_exchange_ordering,
    is_base_orderable,
    is_k_base_orderable,
    is_kl_base_orderable,
    is_strongly_base_orderable,
    source_sink_reduction,
)
from .families import (
    AlphaTuple,
    BetaTuple,
    alpha_count_lower_bound,
    build_m_alpha,
    build_m_beta,
    build_m_beta_prime,
    count_beta_classes,
    verify_alpha_theorem,
    verify_beta_theorem,
)
from .operations import (
    direct_sum,
    free_extension,
    induce_bipartite,
    parallel_connection,
    principal_extension,
    relax_circuit_hyperplane,
    truncation,
)
from .structure import (
    has_minor_isomorphic,
    is_cotransversal,
    is_isomorphic,
    is_paving,
    is_sparse_paving,
    is_transversal,
)

__version__ = "0.1.0"
