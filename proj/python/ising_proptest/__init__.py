"""Property testing for Ising models: exact inference, samplers and tests."""

from ._ising_proptest import (
    T_general,
    clique_test,
    clique_threshold,
    connectivity_test,
    curie_weiss_edge_correlation,
    cycle_test,
    empirical_correlations,
    exact_correlations,
    fast_cycle_epsilon,
    fast_cycle_test,
    log_partition_function,
    monotone_lower_bound,
    monotone_upper_bound,
    run_experiment,
    run_oracle_suite,
    sample,
    tau,
)

__all__ = [
    "T_general",
    "clique_test",
    "clique_threshold",
    "connectivity_test",
    "curie_weiss_edge_correlation",
    "cycle_test",
    "empirical_correlations",
    "exact_correlations",
    "fast_cycle_epsilon",
    "fast_cycle_test",
    "log_partition_function",
    "monotone_lower_bound",
    "monotone_upper_bound",
    "run_experiment",
    "run_oracle_suite",
    "sample",
    "tau",
]
