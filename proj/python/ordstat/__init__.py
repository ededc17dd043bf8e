"""Order-statistic location estimators for positive-support and mixture noise."""

from ._ordstat import (
    ErrorCode,
    EstimatorId,
    Family,
    NoiseModel,
    OrdstatError,
    PerfRecord,
    Rng,
    analytic_bias,
    analytic_mse,
    blue,
    ecdf,
    empirical_moments,
    estimate,
    joint_extremes_pdf,
    min_estimator,
    min_order_pdf,
    minimum_closure,
    mixture_rank,
    mixture_rank_index,
    mixture_rank_likelihood,
    noise_cdf,
    noise_mean,
    noise_pdf,
    noise_variance,
    order_stat_pdf,
    run_cell,
    run_sweep,
    sample_noise,
    unbiased_known,
    unbiased_unknown,
    uniform_order_moments,
)

__all__ = [name for name in dir() if not name.startswith("_")]
