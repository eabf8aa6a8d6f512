"""Probability estimation by exponential smoothing for binary sequences.

Sequential estimator, piecewise-stationary redundancy bounds, the worst-case
redundancy experiment and a range coder built on the estimator.
"""

from ._core import (
    BitSequence,
    BoundInput,
    CodecError,
    Estimator,
    ExhaustiveResult,
    ExperimentConfig,
    Partition,
    RedundancyCurve,
    ScheduleKind,
    SmoothingSchedule,
    WorstCaseCandidates,
    binary_entropy,
    class_bound_at,
    compress_bytes,
    closed_form_bound,
    decode,
    decompress_bytes,
    emit_csv,
    empirical_entropy,
    encode,
    entropy_difference,
    exhaustive_worst_case,
    exhaustive_worst_case_pws,
    is_deterministic,
    log2_beta_prefix,
    logsum_bound,
    optimal_alpha_bound,
    optimal_fixed_alpha,
    prefix_redundancy_trace,
    pws_baseline,
    quantize_p1,
    run,
    redundancy_bound,
    pws_redundancy_bound,
    worst_case_candidates,
)

__all__ = [
    "BitSequence",
    "BoundInput",
    "CodecError",
    "Estimator",
    "ExhaustiveResult",
    "ExperimentConfig",
    "Partition",
    "RedundancyCurve",
    "ScheduleKind",
    "SmoothingSchedule",
    "WorstCaseCandidates",
    "binary_entropy",
    "class_bound_at",
    "compress_bytes",
    "closed_form_bound",
    "decode",
    "decompress_bytes",
    "emit_csv",
    "empirical_entropy",
    "encode",
    "entropy_difference",
    "exhaustive_worst_case",
    "exhaustive_worst_case_pws",
    "is_deterministic",
    "log2_beta_prefix",
    "logsum_bound",
    "optimal_alpha_bound",
    "optimal_fixed_alpha",
    "prefix_redundancy_trace",
    "pws_baseline",
    "quantize_p1",
    "run",
    "redundancy_bound",
    "pws_redundancy_bound",
    "worst_case_candidates",
]
