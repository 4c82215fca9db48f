"""Solvers for the pth-order proximal operator.

Minimizes f(x) + sigma/(p+1) * ||x - c||^(p+1) for catalog functions f via a
dual fixed-point iteration, with a bisection specialization for p = 2, an
outer proximal-point driver, and two independent reference oracles.
"""

from ._hopx import (
    BisectionConfig,
    BisectionState,
    CapabilityError,
    ContractionCertificate,
    ContractionSide,
    HopProblem,
    L1Norm,
    Lambda0Strategy,
    LinearFunction,
    NumericalError,
    OracleResult,
    PointIndicator,
    ProxFunction,
    QuadraticFunction,
    SolveReport,
    SolverConfig,
    StationaritySignal,
    TraceRecord,
    VerificationError,
    check_contraction,
    check_T_sandwich,
    dual_objective,
    find_bracket,
    hop_objective,
    ip_map,
    kkt_residual,
    logsumexp_instance,
    oracle_prox_gradient,
    oracle_quadratic_hop,
    power_norm_conjugate,
    prox_l1,
    prox_linear,
    prox_point,
    prox_quadratic,
    run_hoppa,
    solve_bisection_p2,
    solve_hop,
    T_eval,
    weak_duality_gap,
)

__all__ = [
    "BisectionConfig",
    "BisectionState",
    "CapabilityError",
    "ContractionCertificate",
    "ContractionSide",
    "HopProblem",
    "L1Norm",
    "Lambda0Strategy",
    "LinearFunction",
    "NumericalError",
    "OracleResult",
    "PointIndicator",
    "ProxFunction",
    "QuadraticFunction",
    "SolveReport",
    "SolverConfig",
    "StationaritySignal",
    "TraceRecord",
    "VerificationError",
    "check_contraction",
    "check_T_sandwich",
    "dual_objective",
    "find_bracket",
    "hop_objective",
    "ip_map",
    "kkt_residual",
    "logsumexp_instance",
    "oracle_prox_gradient",
    "oracle_quadratic_hop",
    "power_norm_conjugate",
    "prox_l1",
    "prox_linear",
    "prox_point",
    "prox_quadratic",
    "run_hoppa",
    "solve_bisection_p2",
    "solve_hop",
    "T_eval",
    "weak_duality_gap",
]

__version__ = "0.1.0"
