"""(k, t)-hypercores of hypergraphs: decomposition, analytics and applications."""

from .analytics import (
    core_size_landscape,
    density_profile,
    hsmd,
    information_gain,
    loglog_powerlaw_fit,
    pearson,
    rdmd,
    survivor_counts,
)
from .collapse import Collapser, collapse, rebuild_endangered, update_endangered
from .core import (
    NO_FRACTION,
    CoreResult,
    format_fraction,
    k_fraction,
    kt_hypercore,
    parse_fraction,
    t_hypercoreness,
)
from .cover import cover_select, covered_count
from .hypergraph import (
    BipartiteGraph,
    Hypergraph,
    HypergraphFormatError,
    WeightedGraph,
    clique_expansion,
    largest_connected_component,
    load_hyperedge_list,
    load_nverts_simplices,
    star_expansion,
    stats,
    upscale,
)
from .sir import SirParams, hyper_sir, influence_experiment
from .variants import (
    alpha_beta_core,
    kl_hypercore,
    l_hypercoreness,
    nd_hypercore,
    nd_hypercoreness,
    neighbor_hypercore,
    neighbor_hypercoreness,
    pairwise_coreness,
)

__version__ = "0.1.0"
