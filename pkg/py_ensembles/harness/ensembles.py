"""
Deterministic checks of the ensemble machinery: duality, kernel forms, spectral projections, limit transitions,
operator convergence, Schur pushforwards, q-Laplace inversion and the DPP sampler.
"""

import logging
import math
import time
from collections import Counter
from itertools import combinations
from typing import List, Sequence, Tuple

import numpy as np

from py_ensembles.configuration import DiscreteEnsembleSpec
from py_ensembles.dpp import empirical_correlation, sample_many
from py_ensembles.exceptions import ParameterError
from py_ensembles.fredholm import gap_det_continuous, gap_det_discrete, kpz_laplace_rhs, tracy_widom_gue
from py_ensembles.harness.report import CheckRow, ExperimentReport, make_report, trend_row
from py_ensembles.harness.transitions import limit_transition
from py_ensembles.kernels import KernelMatrix, discrete_kernel_integrable, kernel_matrix
from py_ensembles.orthopoly import FamilySpec, orthonormal_functions, truncated_support
from py_ensembles.qlaplace import QLaplaceParams, invert_q_laplace, q_laplace_rv, q_moment
from py_ensembles.scaling import dl_scaling_residuals
from py_ensembles.schur import (
    DEFAULT_BOX_COLUMNS,
    cauchy_stratum,
    complement_law,
    ensemble_law,
    partitions_of_size,
    pushforward_law,
    schur_measure_weight,
    total_variation,
)
from py_ensembles.tridiag import (
    airy_operator,
    apply_scaled_operator,
    build_limit_jacobi,
    build_prelimit_jacobi,
    default_scale,
    prelimit_threshold,
    projection_block,
    scaled_lattice_point,
    spectral_projection_plus,
)
from py_ensembles.utils import replica_rng

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------------------------------------------------------
# DUALITY AND KERNEL FORMS


def duality_grid() -> List[DiscreteEnsembleSpec]:
    """
    :return: Hermite, Laguerre and Jacobi ensembles of both signs over the standard parameter grid
    """
    grid = []
    for sign in ("+", "-"):
        grid += [DiscreteEnsembleSpec.dh(rho, sign) for rho in (-1.0, 0.0, 1.0)]
        grid += [DiscreteEnsembleSpec.dl(rho, beta, sign) for beta in (0.5, 1.0, 2.5) for rho in (0.5, 2.0, 5.0)]
        grid += [
            DiscreteEnsembleSpec.dj(rho, a, b, sign) for a, b in ((0.0, 0.0), (0.5, -0.3)) for rho in (-0.4, 0.2)
        ]
    return grid


def verify_duality(
    spec_grid: Sequence[DiscreteEnsembleSpec] | None = None, N_max: int = 8, tol: float = 1e-8
) -> ExperimentReport:
    """
    Gap probability of {0..N-1} in the discrete ensemble against the gap probability of the matching interval in
    the N-point continuous ensemble, (rho, +inf) for the plus sign and (-inf, rho) for the minus sign

    :param spec_grid: Ensembles (default: duality_grid())
    :param N_max: Largest N (default: 8)
    :param tol: Tolerance (default: 1e-8)
    :return: One row per ensemble and N
    """
    started = time.perf_counter()
    grid = duality_grid() if spec_grid is None else list(spec_grid)
    rows = []
    for spec in grid:
        interval = (spec.rho, math.inf) if spec.is_plus else (-math.inf, spec.rho)
        for N in range(1, N_max + 1):
            continuous = gap_det_continuous(spec.family, N, interval)
            rows.append(CheckRow(f"{spec}.N={N}", gap_det_discrete(spec, N), 0.0, continuous, tol))
    return make_report("duality", {"ensembles": len(grid), "N_max": N_max}, rows, started)


def verify_kernel_forms(spec: DiscreteEnsembleSpec, window: int = 20, tol: float = 1e-9) -> ExperimentReport:
    """
    Integrable form against the Gram-matrix form off the diagonal, and K+ + K- = identity

    :param spec: Discrete ensemble
    :param window: Last site compared (default: 20)
    :param tol: Tolerance of the form comparison (default: 1e-9)
    :return: The report
    """
    started = time.perf_counter()
    K = kernel_matrix(spec, window)
    worst = max(
        abs(discrete_kernel_integrable(spec, x, y) - K[x, y]) for x in K.window for y in K.window if x != y
    )
    complement = kernel_matrix(spec.complement(), window)
    defect = float(np.max(np.abs(K.entries + complement.entries - np.eye(window + 1))))
    rows = [
        CheckRow("integrable-vs-quadrature", worst, 0.0, 0.0, tol),
        CheckRow("complementarity", defect, 0.0, 0.0, 1e-10),
    ]
    return make_report("kernel-forms", {"ensemble": str(spec), "window": window}, rows, started)


# ----------------------------------------------------------------------------------------------------------------------
# SPECTRAL PROJECTIONS


def christoffel_bound(spec: DiscreteEnsembleSpec, n: int, window: int) -> float:
    """
    Size of a single Gauss node contribution at the cut point: 4 max_{x <= window} phi_x(rho)^2 / sum_{k<n} phi_k(rho)^2

    :param spec: Discrete ensemble
    :param n: Truncation size
    :param window: Last site of the compared block
    :return: The bound of the entry error of the truncated projection
    """
    phi = orthonormal_functions(spec.family, n - 1, [spec.rho])[:, 0] ** 2
    total = float(phi.sum())
    if total == 0:
        return 1e-12
    return 4 * float(phi[: window + 1].max()) / total + 1e-12


def verify_spectral_consistency(
    spec: DiscreteEnsembleSpec, sizes: Sequence[int] = (200, 400, 800), window: int = 10
) -> ExperimentReport:
    """
    Kernel blocks of the positive-spectrum projections of truncated limit Jacobi matrices against the kernel

    :param spec: Discrete ensemble
    :param sizes: Truncation sizes (default: 200, 400, 800)
    :param window: Last site of the compared block (default: 10)
    :return: One row per size bounded by the Christoffel bound, and one row per doubling
    """
    started = time.perf_counter()
    target = kernel_matrix(spec, window)
    if not spec.is_plus:
        target = target.gauge()
    matrix = build_limit_jacobi(spec)
    blocks, bounds, rows = [], [], []
    for n in sizes:
        block = projection_block(matrix, n, window + 1)
        bound = christoffel_bound(spec, n, window)
        blocks.append(block)
        bounds.append(bound)
        rows.append(CheckRow(f"n={n}", float(np.max(np.abs(block - target.entries))), 0.0, 0.0, bound))
    for k in range(len(sizes) - 1):
        gap = float(np.max(np.abs(blocks[k] - blocks[k + 1])))
        rows.append(CheckRow(f"doubling.n={sizes[k]}-{sizes[k + 1]}", gap, 0.0, 0.0, bounds[k] + bounds[k + 1]))
    return make_report("spectral-consistency", {"ensemble": str(spec), "window": window}, rows, started)


def verify_scale_invariance(
    spec: FamilySpec, N: int, factors: Sequence[float] = (0.5, 2.0, 10.0), tol: float = 1e-12
) -> ExperimentReport:
    """
    Positive-spectrum projection of c A_N against that of A_N for positive factors c

    :param spec: Discrete family
    :param N: Number of particles
    :param factors: Positive factors (default: 0.5, 2, 10)
    :param tol: Tolerance (default: 1e-12)
    :return: One row per factor
    """
    started = time.perf_counter()
    size = spec.support_size if spec.support_size is not None else truncated_support(spec, N - 1).nodes.size
    base = spectral_projection_plus(build_prelimit_jacobi(spec, N), size, prelimit_threshold(spec, N)).matrix
    rows = []
    for factor in factors:
        if not factor > 0:
            raise ParameterError("factors", "scale factors must be positive")
        # Multiplying A_N by the factor divides c_N by it
        c = default_scale(spec, N) / factor
        scaled = spectral_projection_plus(build_prelimit_jacobi(spec, N, c), size, prelimit_threshold(spec, N, c))
        rows.append(CheckRow(f"factor={factor}", float(np.max(np.abs(scaled.matrix - base))), 0.0, 0.0, tol))
    return make_report("scale-invariance", {"family": str(spec), "N": N}, rows, started)


# ----------------------------------------------------------------------------------------------------------------------
# LIMIT TRANSITIONS


def verify_limit_transition(
    name: str,
    N_grid: Sequence[int] | None = None,
    x_max: int = 30,
    window: int = 8,
    order_tol: float = 0.35,
    **params: float,
) -> ExperimentReport:
    """
    Jacobi-entry and kernel-entry errors of a pre-limit ensemble against its limit along a grid of N

    Rows: the observed rate log(e_k / e_k+1) / log(N_k+1 / N_k) may fall short of the expected order by at most
    order_tol; kernel errors do not increase along the grid; the final kernel error is bounded when the transition
    defines a bound; per-N errors are listed with an infinite tolerance.

    :param name: Registry key of the transition
    :param N_grid: Increasing particle numbers, beta for DL -> DH (default: the grid of the transition)
    :param x_max: Last row of the compared Jacobi entries (default: 30)
    :param window: Last site of the compared kernel block (default: 8)
    :param order_tol: Allowed shortfall of the observed order (default: 0.35)
    :param params: Transition parameters overriding the defaults
    :return: The report
    """
    started = time.perf_counter()
    transition = limit_transition(name)
    N_grid = transition.default_grid if N_grid is None else tuple(N_grid)
    p = transition.parameters(**params)
    limit = build_limit_jacobi(transition.target(p))
    d, e = limit.diagonal(x_max + 1), limit.off_diagonal(x_max + 1)
    limit_kernel = transition.limit_kernel(window + 1, p)

    jacobi_errors, kernel_errors, rows = [], [], []
    difference = np.zeros_like(limit_kernel)
    for N in N_grid:
        matrix = transition.prelimit_matrix(N, p)
        jacobi = max(
            float(np.max(np.abs(matrix.diagonal(x_max + 1) - d))),
            float(np.max(np.abs(matrix.off_diagonal(x_max + 1) - e))),
        )
        difference = np.abs(transition.prelimit_kernel(N, window + 1, p) - limit_kernel)
        kernel = float(np.max(difference))
        jacobi_errors.append(jacobi)
        kernel_errors.append(kernel)
        rows.append(CheckRow(f"jacobi.N={N}", jacobi, 0.0, 0.0, math.inf))
        rows.append(CheckRow(f"kernel.N={N}", kernel, 0.0, 0.0, math.inf))
        logger.debug("%s at N=%d: jacobi error %.3e, kernel error %.3e", name, N, jacobi, kernel)

    for k in range(len(N_grid) - 1):
        label = f"N={N_grid[k]}-{N_grid[k + 1]}"
        observed = np.log(jacobi_errors[k] / jacobi_errors[k + 1]) / np.log(N_grid[k + 1] / N_grid[k])
        shortfall = max(0.0, transition.expected_order - float(observed))
        rows.append(CheckRow(f"order-shortfall.{label}", shortfall, 0.0, 0.0, order_tol))
        rows.append(trend_row(f"kernel-trend.{label}", kernel_errors[k], kernel_errors[k + 1]))
    if transition.final_tolerance is not None:
        last = window if transition.final_window is None else min(window, transition.final_window)
        final = float(np.max(difference[: last + 1, : last + 1]))
        rows.append(CheckRow(f"kernel-final.N={N_grid[-1]}", final, 0.0, 0.0, transition.final_tolerance))
    return make_report(f"limit-{name}", {"transition": name, **p, "N_grid": N_grid}, rows, started)


# ----------------------------------------------------------------------------------------------------------------------
# OPERATOR CONVERGENCE


def _bump(v: float) -> float:
    return math.exp(-0.5 * v * v)


def _bump_second(v: float) -> float:
    return (v * v - 1) * math.exp(-0.5 * v * v)


def verify_operator_convergence(
    base: str, grid: Sequence[float | Tuple[float, float]] | None = None, v_grid: Sequence[float] | None = None
) -> ExperimentReport:
    """
    Sup-error between the scaled difference-operator action on a Gaussian bump and g'' - v g along a grid

    :param base: 'DH' (grid of rho) or 'DL' (grid of (rho, beta) with rho > beta)
    :param grid: Parameters in the order of convergence (default: rho in 1e2, 1e3, 1e4; (rho, beta) = (4b, b))
    :param v_grid: Scaled points (default: 21 points on [-2, 2])
    :return: Non-increasing error rows, and the edge-equation residuals for DL
    """
    started = time.perf_counter()
    v_points = np.linspace(-2, 2, 21) if v_grid is None else np.asarray(v_grid, dtype=float)
    match base:
        case "DH":
            params = list(grid) if grid is not None else [1e2, 1e3, 1e4]
            specs = [DiscreteEnsembleSpec.dh(rho) for rho in params]
        case "DL":
            params = list(grid) if grid is not None else [(1e2, 25.0), (1e3, 250.0), (1e4, 2500.0)]
            specs = [DiscreteEnsembleSpec.dl(rho, beta) for rho, beta in params]
        case _:
            raise ParameterError("base", f"expected 'DH' or 'DL', got '{base}'")

    errors, rows = [], []
    for spec in specs:
        worst = 0.0
        for v in v_points:
            _, v_eff = scaled_lattice_point(spec, float(v))
            action = apply_scaled_operator(spec, _bump, float(v))
            worst = max(worst, abs(action - airy_operator(_bump, _bump_second, v_eff)))
        errors.append(worst)
        rows.append(CheckRow(f"error.{spec}", worst, 0.0, 0.0, math.inf))
        if base == "DL":
            for k, residual in enumerate(dl_scaling_residuals(spec.rho, spec.beta, spec.sign)):
                rows.append(CheckRow(f"residual{k + 1}.{spec}", abs(residual), 0.0, 0.0, 1e-10))
    for k in range(len(specs) - 1):
        rows.append(trend_row(f"trend.{specs[k]}-{specs[k + 1]}", errors[k], errors[k + 1]))
    return make_report(f"operator-{base}", {"base": base, "points": len(v_points)}, rows, started)


# ----------------------------------------------------------------------------------------------------------------------
# SCHUR MEASURES


def verify_schur_pushforward(
    a: int, b: int, x: float, y: float, primed: bool = False, cols: int | None = None, tol: float = 1e-9
) -> ExperimentReport:
    """
    Pushforward of SM(x^a; y^b) against Meixner(min(a,b), |a-b|+1, xy), or of SM'(x^a; y^b) against
    Krawtchouk(a, xy/(1+xy), a+b-1), by enumeration on both sides; also the Cauchy strata of small sizes

    :param a: Number of x variables
    :param b: Number of y variables
    :param x: Value of the x variables
    :param y: Value of the y variables
    :param primed: Whether the dual measure SM' is meant (default: False)
    :param cols: Column bound of the SM enumeration (default: schur.DEFAULT_BOX_COLUMNS)
    :param tol: Tolerance on top of the excluded masses (default: 1e-9)
    :return: The report
    """
    started = time.perf_counter()
    schur = pushforward_law(a, b, x, y, primed, cols)
    rows_box = a if primed else min(a, b)
    if primed:
        family, window, width = FamilySpec.krawtchouk(x * y / (1 + x * y), a + b - 1), a + b, b
        normalization = (1 + x * y) ** (-a * b)
    else:
        width = DEFAULT_BOX_COLUMNS if cols is None else cols
        family, window = FamilySpec.meixner(abs(a - b) + 1, x * y), rows_box + width
        normalization = (1 - x * y) ** (a * b)
    ensemble = ensemble_law(family, rows_box, window)

    excluded = schur.excluded + ensemble.excluded
    rows = [CheckRow("total-variation", total_variation(schur, ensemble), 0.0, 0.0, tol + excluded)]
    for k in range(min(width, 12) + 1):
        partitions = partitions_of_size(k, rows_box, b if primed else None)
        stratum = sum(schur_measure_weight(lam, a, x, b, y, primed) for lam in partitions)
        exact = cauchy_stratum(k, a, b, x, y, primed) * normalization
        rows.append(CheckRow(f"stratum.k={k}", stratum, 0.0, exact, 1e-12 * max(1.0, exact)))
    label = "SM'" if primed else "SM"
    return make_report(f"schur-{label}", {"a": a, "b": b, "x": x, "y": y, "primed": primed}, rows, started)


def verify_krawtchouk_duality(q: float, u: float, M: int, N: int, tol: float = 1e-10) -> ExperimentReport:
    """
    Particle/hole involution of Krawtchouk(N, 1/(1 + q^1/2 u), M+N-2) against Krawtchouk(M-1, 1/(1 + q^-1/2 / u),
    M+N-2)

    :param q: Base in (0, 1)
    :param u: Spectral parameter
    :param M: Column index, at least 1
    :param N: Row index, at least 1
    :param tol: Tolerance (default: 1e-10)
    :return: The report
    """
    started = time.perf_counter()
    if M < 1 or N < 1 or M + N < 3:
        raise ParameterError("M", "the duality needs M, N >= 1 and M + N >= 3")
    support = M + N - 1
    first = FamilySpec.krawtchouk(1 / (1 + np.sqrt(q) * u), support - 1)
    second = FamilySpec.krawtchouk(1 / (1 + 1 / (np.sqrt(q) * u)), support - 1)
    left = complement_law(ensemble_law(first, N, support), support)
    right = ensemble_law(second, M - 1, support)
    rows = [CheckRow("total-variation", total_variation(left, right), 0.0, 0.0, tol)]
    return make_report("krawtchouk-duality", {"q": q, "u": u, "M": M, "N": N}, rows, started)


# ----------------------------------------------------------------------------------------------------------------------
# Q-LAPLACE INVERSION


def verify_q_laplace_round_trip(q: float, n_max: int = 20, seed: int = 0, tol: float = 1e-8) -> ExperimentReport:
    """
    Inverts the q-Laplace transform of a random distribution on {0..n_max} and recovers its q-moments

    :param q: Base in (0, 1)
    :param n_max: Largest value (default: 20)
    :param seed: Seed of the random distribution (default: 0)
    :param tol: Tolerance (default: 1e-8)
    :return: The report
    """
    started = time.perf_counter()
    dist = replica_rng(seed, 0).dirichlet(np.ones(n_max + 1))
    dist /= dist.sum()

    def transform(z):
        return q_laplace_rv(dist, QLaplaceParams(q, z))

    recovered = np.array([invert_q_laplace(transform, q, n, vectorized=True) for n in range(n_max + 1)])
    rows = [CheckRow("probabilities", float(np.max(np.abs(recovered - dist))), 0.0, 0.0, tol)]
    support = np.arange(n_max + 1)
    for n in range(6):
        exact = float(dist @ q ** (n * support))
        rows.append(CheckRow(f"moment.n={n}", q_moment(transform, q, n, vectorized=True), 0.0, exact, tol))
    return make_report("q-laplace-round-trip", {"q": q, "n_max": n_max, "seed": seed}, rows, started)


# ----------------------------------------------------------------------------------------------------------------------
# DPP SAMPLER


def exact_configuration_law(K: KernelMatrix) -> dict:
    """
    P(X = S) = |det(K - 1_{S^c})| for every subset S of the window

    :param K: Kernel with eigenvalues in [0, 1] on at most 16 sites
    :return: Probability of every subset, keyed by the sorted tuple of its sites
    """
    n = K.size
    if n > 16:
        raise ParameterError("K", "exact laws are enumerated on at most 16 sites")
    subsets = [tuple(s) for k in range(n + 1) for s in combinations(range(n), k)]
    masks = np.ones((len(subsets), n))
    for index, subset in enumerate(subsets):
        masks[index, list(subset)] = 0.0
    stack = K.entries[None, :, :] - masks[:, :, None] * np.eye(n)[None, :, :]
    return dict(zip(subsets, np.abs(np.linalg.det(stack))))


def verify_dpp_sampler(K: KernelMatrix, n_samples: int, seed: int = 0, workers: int = 1) -> ExperimentReport:
    """
    Empirical law of the sampler against the exact determinantal law, with the 4-SE bound 2 sum sqrt(p(1-p)/n) on the
    total variation; and the negative-correlation inequality rho_2(x, y) <= rho_1(x) rho_1(y) on every pair

    :param K: Kernel on a window of at most 16 sites
    :param n_samples: Number of samples
    :param seed: Master seed (default: 0)
    :param workers: Number of processes (default: 1)
    :return: The report
    """
    started = time.perf_counter()
    exact = exact_configuration_law(K)
    samples = sample_many(K, n_samples, seed, workers)
    counts = Counter(sample.sites for sample in samples)
    probabilities = np.array(list(exact.values()))
    tv = 0.5 * sum(abs(counts.get(subset, 0) / n_samples - p) for subset, p in exact.items())
    bound = 2 * float(np.sum(np.sqrt(probabilities * (1 - np.clip(probabilities, 0, 1)) / n_samples)))
    rows = [CheckRow("total-variation", tv, 0.0, 0.0, bound)]

    singles = [empirical_correlation(samples, (x,))[0] for x in K.window]
    for x, y in combinations(K.window, 2):
        pair, se = empirical_correlation(samples, (x, y))
        excess = max(0.0, pair - singles[x] * singles[y])
        rows.append(CheckRow(f"negative-correlation.{x}-{y}", excess, se, 0.0, se))
    return make_report("dpp-sampler", {"window": K.size, "n_samples": n_samples, "seed": seed}, rows, started)


# ----------------------------------------------------------------------------------------------------------------------
# TABLES


def tracy_widom_table(grid: Sequence[float]) -> List[Tuple[float, float]]:
    """
    :param grid: Points s
    :return: Pairs (s, F_GUE(s))
    """
    return [(float(s), tracy_widom_gue(float(s))) for s in grid]


def kpz_table(zeta_hat_grid: Sequence[float], tau_hat: float) -> List[Tuple[float, float]]:
    """
    :param zeta_hat_grid: Positive transform variables
    :param tau_hat: Airy time scale
    :return: Pairs (zeta_hat, E prod 1 / (1 + zeta_hat exp(tau_hat a_i)))
    """
    return [(float(z), kpz_laplace_rhs(float(z), tau_hat)) for z in zeta_hat_grid]
