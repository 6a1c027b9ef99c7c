"""
Experiment harness comparing every identity and limit of the library against an independent computation.

Classes:
    CheckRow: One comparison |lhs - rhs| <= 3 se + tolerance.

    ExperimentReport: Rows, headline values, verdict and runtime of an experiment.

    LimitTransition: Tuned pre-limit family and limit ensemble of a registered transition.

Functions:
    verify_duality, verify_kernel_forms, verify_spectral_consistency, verify_scale_invariance,
    verify_limit_transition, verify_operator_convergence, verify_schur_pushforward, verify_krawtchouk_duality,
    verify_q_laplace_round_trip, verify_dpp_sampler: Checks of the ensemble machinery.

    verify_asep_dl_identity, verify_tasep_corollary, verify_asep_hermite, verify_asep_tw, verify_kpz_regimes,
    verify_6v_corollary, verify_6v_asep, verify_6v_hermite: Monte Carlo checks of the particle systems.

    tracy_widom_table, kpz_table: Tabulated limit distributions.

    limit_transition: Looks up a registered transition.
"""

from .ensembles import (
    duality_grid, kpz_table, tracy_widom_table, verify_dpp_sampler, verify_duality, verify_kernel_forms,
    verify_krawtchouk_duality, verify_limit_transition, verify_operator_convergence, verify_q_laplace_round_trip,
    verify_scale_invariance, verify_schur_pushforward, verify_spectral_consistency
)
from .particle_systems import (
    asep_q_laplace, q_laplace_estimate, six_vertex_hermite_point, six_vertex_q_laplace, verify_6v_asep,
    verify_6v_corollary, verify_6v_hermite, verify_asep_dl_identity, verify_asep_hermite, verify_asep_tw,
    verify_kpz_regimes, verify_tasep_corollary
)
from .report import CheckRow, ExperimentReport, make_report, trend_row
from .transitions import LIMIT_TRANSITIONS, LimitTransition, limit_transition


__all__ = [
    'duality_grid', 'kpz_table', 'tracy_widom_table', 'verify_dpp_sampler', 'verify_duality', 'verify_kernel_forms',
    'verify_krawtchouk_duality', 'verify_limit_transition', 'verify_operator_convergence',
    'verify_q_laplace_round_trip', 'verify_scale_invariance', 'verify_schur_pushforward',
    'verify_spectral_consistency', 'asep_q_laplace', 'q_laplace_estimate', 'six_vertex_hermite_point',
    'six_vertex_q_laplace', 'verify_6v_asep', 'verify_6v_corollary', 'verify_6v_hermite', 'verify_asep_dl_identity',
    'verify_asep_hermite', 'verify_asep_tw', 'verify_kpz_regimes', 'verify_tasep_corollary', 'CheckRow',
    'ExperimentReport', 'make_report', 'trend_row', 'LIMIT_TRANSITIONS', 'LimitTransition', 'limit_transition'
]
