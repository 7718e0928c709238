"""Monochromatic r-star statistics of uniformly colored graphs.

Exact counting and subset classification, a reproducible Monte-Carlo engine,
an exact enumeration oracle, and the compound-Poisson limit law with its
parameter extraction, convolution pmf, and sampling.
"""

from .coloring import (
    Coloring,
    EmpiricalDist,
    empirical_moments,
    eval_T,
    monte_carlo,
    sample_coloring,
)
from .errors import (
    BudgetExceededError,
    EdgeListParseError,
    InvalidParamsError,
    MonostarError,
    ToleranceError,
)
from .experiment import (
    ExperimentSpec,
    Report,
    birthday_probability,
    builtin_example,
    builtin_names,
    run_experiment,
)
from .graphs import (
    GeneratorSpec,
    Graph,
    build_graph,
    degree_sequence,
    edge_list_text,
    generate,
    load_edge_list,
    parse_edge_list,
    parse_generator,
)
from .limits import (
    LimitLawParams,
    figure2_params,
    limit_moments,
    limit_pmf,
    params_from_graph,
    pgf_linear,
    sample_limit,
    sample_limit_batch,
    validate_params,
)
from .oracle import exact_pmf
from .pmf import Pmf, pmf_mean, pmf_moments, tv_distance
from .stars import (
    Decomposition,
    StarClassCounts,
    beta,
    class_counts,
    count_stars,
    decompose,
    epsilon_big,
    prune_low_degree_edges,
    remainder_mean_bound,
)

__version__ = "0.1.0"
