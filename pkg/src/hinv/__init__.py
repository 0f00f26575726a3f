"""Exact certification and construction of minimax-optimal fixed-step methods
for nonexpansive fixed-point problems.

A fixed-step method is a lower-triangular matrix of rational coefficients
(:class:`HMatrix`).  The package decides, in exact rational arithmetic,
whether the method attains the optimal terminal rate 4R^2/N^2, produces an
explicit counterexample witness when it does not, generates every known
optimal family from certificate-sparsity patterns, and simulates methods
against operator oracles in floats.
"""

from .algebra import (
    DegenerateProfileError,
    HMatrix,
    QProfile,
    d_value,
    h_dual,
    h_from_q_profile,
    p_invariant,
    q_partial,
    q_profile,
)
from .catalog import (
    BOTTOM,
    TOP,
    DegeneratePatternError,
    SparsityChoice,
    anytime_extend,
    dual_ohm,
    h_from_sparsity,
    is_ohm_tail,
    ohm,
    q_from_sparsity,
    second_mixed,
    self_dual_mixed,
    strange3,
)
from .certify import (
    STATUS_CERTIFICATE_VIOLATED,
    STATUS_INVARIANCE_VIOLATED,
    STATUS_OPTIMAL,
    CertificateSet,
    InternalConsistencyError,
    InvarianceError,
    InvarianceReport,
    Verdict,
    certificates,
    certify,
    invariance_report,
    necessity_triangular_solve,
    s_coefficients,
    solve_lambda_by_elimination,
)
from .simulate import (
    OperatorOracle,
    Trajectory,
    anytime_check,
    linear_oracle,
    rotation_oracle,
    run,
    worst_case_oracle,
    worst_case_start,
)
from .worstcase import (
    GramWitness,
    TraceLedger,
    WorstCaseOperator,
    adjugate_spotcheck,
    build_perturbation,
    gram_g0,
    interpolation_traces,
    suboptimality_witness,
    terminal_gy,
    witness_vectors,
    worst_case_residual_sq,
    worst_operator,
)

__version__ = "1.0.0"

__all__ = [
    "HMatrix",
    "QProfile",
    "CertificateSet",
    "InvarianceReport",
    "Verdict",
    "GramWitness",
    "TraceLedger",
    "WorstCaseOperator",
    "OperatorOracle",
    "Trajectory",
    "SparsityChoice",
    "DegenerateProfileError",
    "DegeneratePatternError",
    "InvarianceError",
    "InternalConsistencyError",
    "STATUS_OPTIMAL",
    "STATUS_INVARIANCE_VIOLATED",
    "STATUS_CERTIFICATE_VIOLATED",
    "TOP",
    "BOTTOM",
    "p_invariant",
    "q_partial",
    "d_value",
    "h_dual",
    "q_profile",
    "h_from_q_profile",
    "invariance_report",
    "s_coefficients",
    "certificates",
    "solve_lambda_by_elimination",
    "certify",
    "necessity_triangular_solve",
    "ohm",
    "dual_ohm",
    "self_dual_mixed",
    "second_mixed",
    "strange3",
    "q_from_sparsity",
    "h_from_sparsity",
    "anytime_extend",
    "is_ohm_tail",
    "worst_operator",
    "terminal_gy",
    "worst_case_residual_sq",
    "gram_g0",
    "interpolation_traces",
    "adjugate_spotcheck",
    "build_perturbation",
    "suboptimality_witness",
    "witness_vectors",
    "run",
    "linear_oracle",
    "anytime_check",
    "worst_case_oracle",
    "worst_case_start",
    "rotation_oracle",
]
