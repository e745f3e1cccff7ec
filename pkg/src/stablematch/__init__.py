"""Greedy stable matchings on complete bipartite graphs with random edge costs."""
from .distributions import (
    ChiSquared,
    CustomDistribution,
    Distribution,
    DistributionSpec,
    Exponential,
    MaxUniform,
    Weibull,
    chi_squared,
    custom,
    exponential,
    make_distribution,
    max_uniform,
    weibull,
)
from .errors import (
    ConfigError,
    DegenerateSample,
    DomainError,
    EmptySample,
    InvalidParameter,
    NonFinite,
    ParseError,
    RangeError,
    ResourceError,
    ShapeError,
    StableMatchError,
    ToleranceNotMet,
    ViewError,
)
from .experiments import ExperimentConfig, RunReport, emit_report, parse_config, run_experiment
from .matching import (
    CostMatrix,
    Matching,
    generate_instance,
    greedy_stable_matching,
    sorted_matched_costs,
    verify_stability,
)
from .recursion import (
    CostSequence,
    SegmentSplit,
    default_cuts,
    resample_coordinate,
    sample_exp_sequence,
    segment_costs,
    total_cost,
    transform_sequence,
    typical_cost,
)
from .rng import stream
from .stats import EcdfSample, SummaryStats, ks_statistic, ks_two_sample, normal_cdf, standardize, summarize
from .theory import (
    exact_mean_Yk,
    expected_Vnk_sum,
    gamma_d,
    incomplete_beta_I,
    limit_cdf_typical,
    limit_survival_typical,
    lln_constant,
    moment_limit,
    variance_constant,
    xi_k,
)

__version__ = "0.1.0"
