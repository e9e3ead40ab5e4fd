"""Exit-time stochastic simulation: Gillespie SSA and grouped-Gamma exit-time sampling."""

from ._exittime import (
    AllCensored,
    ErlangDistribution,
    GridMismatch,
    GroupedPropensities,
    HypoexpDistribution,
    IllConditioned,
    IllegalFiring,
    Model,
    ModelError,
    PropensityGroup,
    RandomStream,
    apply_reaction,
    approximation_gap,
    compare,
    convergence_study,
    ks_critical_value,
    ks_statistic,
    laplace_of_pdf,
    load_model,
    parse_model,
    partition,
    pdf_by_numerical_convolution,
    propensity,
    run_ensemble,
    run_ssa,
    run_timefree,
    sample_exit_time,
    total_propensity,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
