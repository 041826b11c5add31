"""Operator norms on sequence-space sections.

Thin wrapper over the C++ core: lp-norm arithmetic on finitely supported
sequences, declarative operators with finite-section materialization, the
generalized power method with a brute-force oracle, attainment diagnosis,
and the lineability family constructions.
"""

from normopt._core import (
    OperatorSpec,
    Partition,
    block_extraction,
    bruteforce_norm,
    build_attaining_family,
    build_nonattaining_family,
    concavity_check,
    cross_term,
    diagnose,
    duality_map,
    independence_check,
    interleave,
    interpolation_bound,
    ladder_norm,
    lp_norm,
    monotone_check,
    phi,
    power_norm,
    precompactness_check,
    rearrange,
    run_suite,
    scalar_dichotomy,
    splitting_bound_constants,
    splitting_residual_p,
    splitting_residual_q,
    sup_norm,
    theorem_monotone_verify,
    verify_span_attains,
    verify_span_nonattaining,
    weak_null_proxy,
)

__all__ = [
    "OperatorSpec",
    "Partition",
    "block_extraction",
    "bruteforce_norm",
    "build_attaining_family",
    "build_nonattaining_family",
    "concavity_check",
    "cross_term",
    "diagnose",
    "duality_map",
    "independence_check",
    "interleave",
    "interpolation_bound",
    "ladder_norm",
    "lp_norm",
    "monotone_check",
    "phi",
    "power_norm",
    "precompactness_check",
    "rearrange",
    "run_suite",
    "scalar_dichotomy",
    "splitting_bound_constants",
    "splitting_residual_p",
    "splitting_residual_q",
    "sup_norm",
    "theorem_monotone_verify",
    "verify_span_attains",
    "verify_span_nonattaining",
    "weak_null_proxy",
]
