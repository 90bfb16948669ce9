"""Fourier-spectral solver and audit harness for periodic delay differential
equations.

The heavy lifting lives in the compiled extension ``perisolve._core``; this
package re-exports its public surface.
"""

from ._core import (
    DelaySpec,
    DyadicPartition,
    FdSolution,
    NyquistError,
    PeriodicSolution,
    PerisolveError,
    ProblemSpec,
    ResonanceError,
    SingularSystemError,
    TrigPolynomial,
    analyze,
    audit_grid,
    besov_blocks,
    besov_norm,
    build_family,
    build_partition,
    char_matrix,
    coeff_distance,
    derivative,
    fd_compare,
    fd_system_matrix,
    fourier_type_ratio,
    ik_power_sum,
    lifting_ratio,
    load_problem_json,
    lp_norm,
    m_bound_report,
    multiplier_apply,
    parseval_defect,
    problem_to_json,
    realness_defect,
    resolvent,
    resonance_scan,
    residual,
    sample,
    seq_a,
    seq_b,
    seq_c,
    solve,
    solve_fd,
    step1_audit,
    step2_audit,
    step3_audit,
    synthesize,
    uniqueness_probe,
    verify_transfer,
)

__version__ = "0.1.0"

__all__ = [
    "DelaySpec",
    "DyadicPartition",
    "FdSolution",
    "NyquistError",
    "PeriodicSolution",
    "PerisolveError",
    "ProblemSpec",
    "ResonanceError",
    "SingularSystemError",
    "TrigPolynomial",
    "analyze",
    "audit_grid",
    "besov_blocks",
    "besov_norm",
    "build_family",
    "build_partition",
    "char_matrix",
    "coeff_distance",
    "derivative",
    "fd_compare",
    "fd_system_matrix",
    "fourier_type_ratio",
    "ik_power_sum",
    "lifting_ratio",
    "load_problem_json",
    "lp_norm",
    "m_bound_report",
    "multiplier_apply",
    "parseval_defect",
    "problem_to_json",
    "realness_defect",
    "resolvent",
    "resonance_scan",
    "residual",
    "sample",
    "seq_a",
    "seq_b",
    "seq_c",
    "solve",
    "solve_fd",
    "step1_audit",
    "step2_audit",
    "step3_audit",
    "synthesize",
    "uniqueness_probe",
    "verify_transfer",
]
