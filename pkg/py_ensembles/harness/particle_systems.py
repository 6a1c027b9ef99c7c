"""
Monte Carlo checks of the particle systems against their determinantal descriptions: the ASEP and six-vertex
q-Laplace identities, their Hermite and Tracy-Widom limits, and the KPZ-equation regime.
"""

import logging
import math
import time
from math import comb
from typing import Dict, List, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from py_ensembles.configuration import DiscreteEnsembleSpec
from py_ensembles.exceptions import ParameterError
from py_ensembles.fredholm import gap_det_continuous, gap_det_discrete, kpz_laplace_rhs, tracy_widom_gue
from py_ensembles.harness.report import CheckRow, ExperimentReport, make_report, trend_row
from py_ensembles.kernels import cd_kernel_matrix
from py_ensembles.orthopoly import FamilySpec, truncated_support
from py_ensembles.qlaplace import QLaplaceParams, distribution_from_q_laplace, q_laplace_config, q_pochhammer
from py_ensembles.scaling import scaling
from py_ensembles.schur import ensemble_law
from py_ensembles.simulators import SixVertexConfig, asep_heights, six_vertex_heights
from py_ensembles.vars import S_MODES

logger = logging.getLogger(__name__)

ENUMERATION_LIMIT = 2_000_000  # Largest number of configurations summed by the enumeration method


# ----------------------------------------------------------------------------------------------------------------------
# ESTIMATORS AND EXACT SIDES


def q_laplace_estimate(heights: ArrayLike, zeta: float, q: float) -> Tuple[float, float]:
    """
    Monte Carlo q-Laplace transform E 1 / (-zeta q^h; q)_inf

    :param heights: Sampled heights
    :param zeta: Positive transform variable
    :param q: Base in (0, 1)
    :return: The mean and its standard error
    """
    h = np.asarray(heights, dtype=float)
    values = 1 / np.atleast_1d(q_pochhammer(-zeta * q**h, q))
    se = float(values.std(ddof=1) / np.sqrt(values.size)) if values.size > 1 else 0.0
    return float(values.mean()), se


def asep_q_laplace(q: float, t: float, x: int, zeta: float) -> float:
    """
    Exact ASEP q-Laplace transform through the discrete Laguerre ensemble: DL+((1-q)t; x+1) for x >= 0, and the
    ensemble DL+((1-q)t; 1-x) shifted by -x for x < 0

    :param q: Left jump rate in [0, 1)
    :param t: Time
    :param x: Site
    :param zeta: Positive transform variable
    :return: E 1 / (-zeta q^h(x); q)_inf
    """
    t_eff = (1 - q) * t
    spec, shift = (DiscreteEnsembleSpec.dl(t_eff, x + 1), 0) if x >= 0 else (DiscreteEnsembleSpec.dl(t_eff, 1 - x), -x)
    return float(np.real(q_laplace_config(spec, QLaplaceParams(q, zeta), shift)))


def _six_vertex_forms(
    q: float, u: float, s_mode: S_MODES, M: int, N: int
) -> List[Tuple[FamilySpec | None, int, int]]:
    """
    :return: Every (family, number of particles, shift S) whose complemented ensemble, shifted by S, has the law of
        h(M, N). With s = q^-1/2 the Meixner form holds for M > N and the shifted Meixner form for M <= N + 1, so
        both are listed at M = N + 1.
    """
    if M < 1 or N < 1:
        raise ParameterError("M", "six-vertex heights are read at M, N >= 1")
    if s_mode == "q^-1/2":
        xi = q**-0.5 / u
        forms = []
        if M > N:
            forms.append((FamilySpec.meixner(M - N, xi), N, 0))
        if M <= N + 1:
            forms.append((FamilySpec.meixner(N - M + 2, xi), M - 1, N - (M - 1)))
        return forms
    if M + N < 3:
        return [(None, N, 0)]
    return [(FamilySpec.krawtchouk(1 / (1 + np.sqrt(q) * u), M + N - 2), N, 0)]


def _complement_q_laplace(
    family: FamilySpec | None, n: int, shift: int, q: float, zeta: float, method: str = "determinant"
) -> float:
    outside = 1 / q_pochhammer(-zeta * q**shift, q)
    if family is None:
        # M = N = 1 with s = -q^1/2: the single site 0 is always a particle
        return float(outside * (1 + zeta))
    if n == 0:
        return float(outside)

    size = family.support_size if family.support_size is not None else truncated_support(family, n - 1).nodes.size
    factors = zeta * q ** (np.arange(size) + shift)
    match method:
        case "determinant":
            K = cd_kernel_matrix(family, n, size - 1)
            expectation = float(np.linalg.det(np.eye(size) + factors[:, None] * K.entries))
        case "enumeration":
            if comb(size, n) > ENUMERATION_LIMIT:
                raise ParameterError("method", f"{comb(size, n)} configurations are too many to enumerate")
            law = ensemble_law(family, n, size)
            expectation = sum(p * float(np.prod(1 + factors[list(c.sites)])) for c, p in law.probabilities.items())
        case _:
            raise ParameterError("method", f"expected 'determinant' or 'enumeration', got '{method}'")
    return float(outside * expectation)


def six_vertex_q_laplace(
    q: float, u: float, s_mode: S_MODES, M: int, N: int, zeta: float, method: str = "determinant"
) -> float:
    """
    Exact six-vertex q-Laplace transform of h(M, N) through the complemented ensemble S + P°:
    prod_{z >= S} 1 / (1 + zeta q^z) times E prod_{x in P} (1 + zeta q^(x + S))

    The expectation is det(1 + diag(zeta q^(x+S)) K_N) on the support ('determinant') or a sum over the
    configurations ('enumeration').

    :param q: Base in (0, 1)
    :param u: Spectral parameter
    :param s_mode: 'q^-1/2' or '-q^1/2'
    :param M: Column, at least 1
    :param N: Row, at least 1
    :param zeta: Positive transform variable
    :param method: 'determinant' or 'enumeration' (default: 'determinant')
    :return: The transform
    """
    family, n, shift = _six_vertex_forms(q, u, s_mode, M, N)[0]
    return _complement_q_laplace(family, n, shift, q, zeta, method)


# ----------------------------------------------------------------------------------------------------------------------
# ASEP


def verify_asep_dl_identity(
    q: float,
    t: float,
    x: int,
    zeta_list: Sequence[float] = (0.5, 1.0, 2.0),
    n_replicas: int = 10_000,
    seed: int = 0,
    workers: int = 1,
) -> ExperimentReport:
    """
    Monte Carlo q-Laplace transform of h(x) against the discrete Laguerre Fredholm determinant

    :param q: Left jump rate in [0, 1)
    :param t: Time
    :param x: Site
    :param zeta_list: Positive transform variables (default: 0.5, 1, 2)
    :param n_replicas: Number of replicas (default: 10000)
    :param seed: Master seed (default: 0)
    :param workers: Number of processes (default: 1)
    :return: One row per zeta
    """
    started = time.perf_counter()
    heights = asep_heights(q, t, [x], seed, n_replicas, workers).column(x)
    rows = []
    for zeta in zeta_list:
        mean, se = q_laplace_estimate(heights, zeta, q)
        rows.append(CheckRow(f"zeta={zeta}", mean, se, asep_q_laplace(q, t, x, zeta), 1e-12))
    inputs = {"q": q, "t": t, "x": x, "n_replicas": n_replicas, "seed": seed}
    return make_report("asep-dl-identity", inputs, rows, started)


def verify_tasep_corollary(
    t: float, x: int, N_list: Sequence[int] = (1, 2, 3), n_replicas: int = 10_000, seed: int = 0, workers: int = 1
) -> ExperimentReport:
    """
    TASEP: P{h(x) <= N - 1} against 1 minus the Laguerre gap probability of (t, +inf) with beta = x + 1, and that gap
    probability against the DL+(t; x+1) gap probability of {0..N-1}

    :param t: Time
    :param x: Nonnegative site
    :param N_list: Positive thresholds (default: 1, 2, 3)
    :param n_replicas: Number of replicas (default: 10000)
    :param seed: Master seed (default: 0)
    :param workers: Number of processes (default: 1)
    :return: Two rows per N
    """
    started = time.perf_counter()
    if x < 0:
        raise ParameterError("x", "the TASEP corollary is read at x >= 0")
    heights = asep_heights(0.0, t, [x], seed, n_replicas, workers).column(x)
    family = FamilySpec.laguerre(x + 1)
    rows = []
    for N in N_list:
        hits = (heights <= N - 1).astype(float)
        gap = gap_det_continuous(family, N, (t, math.inf))
        se = float(np.sqrt(hits.mean() * (1 - hits.mean()) / hits.size))
        rows.append(CheckRow(f"probability.N={N}", float(hits.mean()), se, 1 - gap, 1e-12))
        rows.append(CheckRow(f"duality.N={N}", gap_det_discrete(DiscreteEnsembleSpec.dl(t, x + 1), N), 0.0, gap, 1e-8))
    inputs = {"t": t, "x": x, "n_replicas": n_replicas, "seed": seed}
    return make_report("tasep-corollary", inputs, rows, started)


def verify_asep_hermite(
    q: float,
    r: float,
    t_tilde_grid: Sequence[float] = (50.0, 200.0, 800.0),
    n_replicas: int = 10_000,
    seed: int = 0,
    workers: int = 1,
    tol: float = 0.05,
) -> ExperimentReport:
    """
    Law of h at x = t~ - sqrt(2 t~) r, t~ = (1-q)t, against the law of xi_r recovered from the q-Laplace transform of
    DH+(r)

    :param q: Left jump rate in (0, 1)
    :param r: Hermite cut point
    :param t_tilde_grid: Increasing effective times (default: 50, 200, 800)
    :param n_replicas: Number of replicas (default: 10000)
    :param seed: Master seed (default: 0)
    :param workers: Number of processes (default: 1)
    :param tol: Total-variation tolerance (default: 0.05)
    :return: One total-variation row per time and a completeness row of the recovered law
    """
    started = time.perf_counter()
    spec = DiscreteEnsembleSpec.dh(r)

    def transform(zeta: complex) -> complex:
        return q_laplace_config(spec, QLaplaceParams(q, zeta))

    target = distribution_from_q_laplace(transform, q, 60)
    rows = [CheckRow("recovered-mass", float(target.sum()), 0.0, 1.0, 1e-6)]
    for t_tilde in t_tilde_grid:
        x = int(round(t_tilde - np.sqrt(2 * t_tilde) * r))
        heights = asep_heights(q, t_tilde / (1 - q), [x], seed, n_replicas, workers).column(x)
        counts = np.bincount(heights, minlength=target.size) / heights.size
        inside = counts[: target.size]
        tv = 0.5 * (np.abs(inside - target).sum() + counts[target.size:].sum() + (1 - target.sum()))
        rows.append(CheckRow(f"total-variation.t_tilde={t_tilde}", float(tv), 0.0, 0.0, tol))
    inputs = {"q": q, "r": r, "n_replicas": n_replicas, "seed": seed}
    return make_report("asep-hermite", inputs, rows, started)


def _tw_observable(heights: NDArray, x: int, sigma: float, tau: float) -> NDArray:
    if x >= 0:
        return (sigma - heights) / tau
    return (sigma - (heights + x)) / tau


def verify_asep_tw(
    q: float,
    x_over_t: float = 0.0,
    t_tilde_grid: Sequence[float] = (500.0, 1000.0, 2000.0),
    s_points: Sequence[float] = (-2.0, 0.0, 1.0),
    n_replicas: int = 0,
    mc_t_tilde: float = 200.0,
    seed: int = 0,
    workers: int = 1,
    det_tol: float = 0.02,
    ks_tol: float = 0.08,
) -> ExperimentReport:
    """
    Tracy-Widom fluctuations of the ASEP height: the DL+ gap probability of {0..m-1}, m = ceil(sigma - s tau),
    against F_GUE(s) along a grid of effective times; and, when replicas are requested, the Kolmogorov distance of
    the Monte Carlo observable (sigma - h) / tau to F_GUE

    :param q: Left jump rate in [0, 1)
    :param x_over_t: Ratio x / t~ inside (-1, 1) (default: 0)
    :param t_tilde_grid: Increasing effective times (1-q)t (default: 500, 1000, 2000)
    :param s_points: Points of the determinant comparison (default: -2, 0, 1)
    :param n_replicas: Monte Carlo replicas, 0 to skip the simulation (default: 0)
    :param mc_t_tilde: Effective time of the simulation (default: 200)
    :param seed: Master seed (default: 0)
    :param workers: Number of processes (default: 1)
    :param det_tol: Tolerance of the determinant rows at the largest time (default: 0.02)
    :param ks_tol: Tolerance of the Kolmogorov distance (default: 0.08)
    :return: The report
    """
    started = time.perf_counter()
    if not -1 < x_over_t < 1:
        raise ParameterError("x_over_t", "must lie strictly inside (-1, 1)")
    limits = {s: tracy_widom_gue(s) for s in s_points}
    errors, rows = [], []
    for t_tilde in t_tilde_grid:
        x = int(round(x_over_t * t_tilde))
        smap = scaling("ASEP-TW", q=q, t=t_tilde / (1 - q), x=x)
        spec = DiscreteEnsembleSpec.dl(t_tilde, abs(x) + 1)
        worst = 0.0
        for s in s_points:
            m = int(math.ceil(smap.sigma - s * smap.tau))
            value = gap_det_discrete(spec, max(m, 0))
            worst = max(worst, abs(value - limits[s]))
            if t_tilde == t_tilde_grid[-1]:
                rows.append(CheckRow(f"determinant.t_tilde={t_tilde}.s={s}", value, 0.0, limits[s], det_tol))
        errors.append(worst)
        logger.debug("ASEP-TW determinant error %.3e at t~=%g", worst, t_tilde)
    for k in range(len(t_tilde_grid) - 1):
        rows.append(trend_row(f"trend.t_tilde={t_tilde_grid[k]}-{t_tilde_grid[k + 1]}", errors[k], errors[k + 1]))

    if n_replicas > 0:
        x = int(round(x_over_t * mc_t_tilde))
        smap = scaling("ASEP-TW", q=q, t=mc_t_tilde / (1 - q), x=x)
        heights = asep_heights(q, mc_t_tilde / (1 - q), [x], seed, n_replicas, workers).column(x)
        observable = _tw_observable(heights, x, smap.sigma, smap.tau)
        grid = np.linspace(-5, 2, 29)
        distance = max(abs(float(np.mean(observable <= s)) - tracy_widom_gue(float(s))) for s in grid)
        rows.append(CheckRow(f"kolmogorov.t_tilde={mc_t_tilde}", distance, 0.0, 0.0, ks_tol))
    inputs = {"q": q, "x_over_t": x_over_t, "n_replicas": n_replicas, "seed": seed}
    return make_report("asep-tw", inputs, rows, started)


# ----------------------------------------------------------------------------------------------------------------------
# KPZ REGIME


def _kpz_rows(
    label: str, heights: NDArray, eps: float, sigma_hat: float, tau_hat: float, zeta_hats: Sequence[float], tol: float
) -> Tuple[List[CheckRow], float, float]:
    xi_hat = sigma_hat / eps**2 - np.log(eps) - eps * heights.astype(float)
    rows, worst, worst_se = [], 0.0, 0.0
    for zeta_hat in zeta_hats:
        values = np.exp(-zeta_hat * np.exp(xi_hat))
        mean, se = float(values.mean()), float(values.std(ddof=1) / np.sqrt(values.size))
        exact = kpz_laplace_rhs(zeta_hat, tau_hat)
        rows.append(CheckRow(f"{label}.eps={eps}.zeta_hat={zeta_hat}", mean, se, exact, tol))
        if abs(mean - exact) > worst:
            worst, worst_se = abs(mean - exact), se
    return rows, worst, worst_se


def verify_kpz_regimes(
    eps_grid: Sequence[float] = (0.4, 0.3),
    t_hat: float = 1.0,
    x_hat: float = 0.0,
    zeta_hat_list: Sequence[float] = (0.5, 1.0, 2.0),
    n_replicas: int = 2_000,
    seed: int = 0,
    workers: int = 1,
    tol: float = 0.05,
    six_vertex: Dict[str, float | str] | None = None,
) -> ExperimentReport:
    """
    Weakly asymmetric ASEP (q = 1 - eps, t = t_hat / eps^4, x = x_hat / eps^3): the Monte Carlo mean of
    exp(-zeta_hat e^xi_hat), xi_hat = sigma_hat / eps^2 - log(eps) - eps h, against the Airy-statistic limit; optionally
    the same for the six-vertex model at q = 1 - eps, u = q^(-1/2) / v, (M, N) = (mu, nu) / eps^3

    :param eps_grid: Decreasing values of eps in (0, 1) (default: 0.4, 0.3)
    :param t_hat: Macroscopic time (default: 1)
    :param x_hat: Macroscopic position in [0, t_hat) (default: 0)
    :param zeta_hat_list: Positive transform variables (default: 0.5, 1, 2)
    :param n_replicas: Number of replicas (default: 2000)
    :param seed: Master seed (default: 0)
    :param workers: Number of processes (default: 1)
    :param tol: Tolerance at every eps (default: 0.05)
    :param six_vertex: Keys s_mode, v, mu, nu of the six-vertex variant (default: ASEP only)
    :return: One row per eps and zeta_hat, and error-trend rows with a slack of 3 standard errors
    """
    started = time.perf_counter()
    smap = scaling("ASEP-KPZ", t_hat=t_hat, x_hat=x_hat)
    systems = [("asep", smap)]
    if six_vertex is not None:
        systems.append(("six-vertex", scaling("6v-KPZ", **six_vertex)))

    rows = []
    for label, constants in systems:
        errors = []
        for eps in eps_grid:
            if not 0 < eps < 1:
                raise ParameterError("eps", "must lie strictly inside (0, 1)")
            q = 1 - eps
            if label == "asep":
                x = int(round(x_hat / eps**3))
                heights = asep_heights(q, t_hat / eps**4, [x], seed, n_replicas, workers).column(x)
            else:
                config: SixVertexConfig = {"q": q, "u": q**-0.5 / six_vertex["v"], "s_mode": six_vertex["s_mode"]}
                point = (max(1, int(round(six_vertex["mu"] / eps**3))), max(1, int(round(six_vertex["nu"] / eps**3))))
                heights = six_vertex_heights(config, [point], seed, n_replicas, workers).column(point)
            new_rows, worst, worst_se = _kpz_rows(
                label, heights, eps, constants.sigma, constants.tau, zeta_hat_list, tol
            )
            rows += new_rows
            errors.append((worst, worst_se))
        for k in range(len(eps_grid) - 1):
            (earlier, se_a), (later, se_b) = errors[k], errors[k + 1]
            label_k = f"{label}.trend.eps={eps_grid[k]}-{eps_grid[k + 1]}"
            rows.append(trend_row(label_k, earlier, later, 3 * (se_a + se_b)))
    inputs = {"t_hat": t_hat, "x_hat": x_hat, "n_replicas": n_replicas, "seed": seed}
    return make_report("kpz", inputs, rows, started)


# ----------------------------------------------------------------------------------------------------------------------
# SIX-VERTEX MODEL


def verify_6v_corollary(
    q: float,
    u: float,
    s_mode: S_MODES,
    M: int,
    N: int,
    zeta_list: Sequence[float] = (0.5, 1.0, 2.0),
    n_replicas: int = 10_000,
    seed: int = 0,
    workers: int = 1,
    method: str = "determinant",
) -> ExperimentReport:
    """
    Monte Carlo q-Laplace transform of h(M, N) against the complemented Meixner or Krawtchouk ensemble

    At M = N + 1 with s = q^-1/2 the rows also compare the Meixner form with the shifted Meixner form.

    :param q: Base in (0, 1)
    :param u: Spectral parameter
    :param s_mode: 'q^-1/2' or '-q^1/2'
    :param M: Column, at least 1
    :param N: Row, at least 1
    :param zeta_list: Positive transform variables (default: 0.5, 1, 2)
    :param n_replicas: Number of replicas (default: 10000)
    :param seed: Master seed (default: 0)
    :param workers: Number of processes (default: 1)
    :param method: Exact side, 'determinant' or 'enumeration' (default: 'determinant')
    :return: One row per zeta, plus one shift-form row per zeta at M = N + 1
    """
    started = time.perf_counter()
    config: SixVertexConfig = {"q": q, "u": u, "s_mode": s_mode}
    heights = six_vertex_heights(config, [(M, N)], seed, n_replicas, workers).column((M, N))
    rows = []
    for zeta in zeta_list:
        mean, se = q_laplace_estimate(heights, zeta, q)
        exact = six_vertex_q_laplace(q, u, s_mode, M, N, zeta, method)
        rows.append(CheckRow(f"zeta={zeta}", mean, se, exact, 1e-10))
    forms = _six_vertex_forms(q, u, s_mode, M, N)
    if len(forms) == 2:
        # At M = N + 1 the Meixner form and its shifted form describe the same height
        for zeta in zeta_list:
            plain, shifted = (_complement_q_laplace(*form, q, zeta, method) for form in forms)
            rows.append(CheckRow(f"shift-form.zeta={zeta}", plain, 0.0, shifted, 1e-12))
    inputs = {"q": q, "u": u, "s_mode": s_mode, "M": M, "N": N, "method": method, "seed": seed}
    return make_report("six-vertex-corollary", inputs, rows, started)


def verify_6v_asep(
    q: float,
    t: float,
    x: int,
    zeta_list: Sequence[float] = (0.5, 1.0, 2.0),
    eps_grid: Sequence[float] = (0.1, 0.05),
    n_replicas: int = 10_000,
    seed: int = 0,
    workers: int = 1,
    tol: float = 0.02,
) -> ExperimentReport:
    """
    Six-vertex model with s = q^(-1/2), u = q^(-1/2) (1 + (1-q) eps), M = [t/eps] + x + 1, N = [t/eps] against the
    exact ASEP transform at time t and site x

    :param q: Base in (0, 1)
    :param t: ASEP time
    :param x: ASEP site
    :param zeta_list: Positive transform variables (default: 0.5, 1, 2)
    :param eps_grid: Decreasing lattice steps (default: 0.1, 0.05)
    :param n_replicas: Number of replicas (default: 10000)
    :param seed: Master seed (default: 0)
    :param workers: Number of processes (default: 1)
    :param tol: Tolerance on top of 3 standard errors (default: 0.02)
    :return: One row per eps and zeta
    """
    started = time.perf_counter()
    exact = {zeta: asep_q_laplace(q, t, x, zeta) for zeta in zeta_list}
    rows = []
    for eps in eps_grid:
        N = int(math.floor(t / eps))
        M = N + x + 1
        if N < 1 or M < 1:
            raise ParameterError("eps", f"eps={eps} gives the lattice point (M, N) = ({M}, {N})")
        config: SixVertexConfig = {"q": q, "u": q**-0.5 * (1 + (1 - q) * eps), "s_mode": "q^-1/2"}
        heights = six_vertex_heights(config, [(M, N)], seed, n_replicas, workers).column((M, N))
        for zeta in zeta_list:
            mean, se = q_laplace_estimate(heights, zeta, q)
            rows.append(CheckRow(f"eps={eps}.zeta={zeta}", mean, se, exact[zeta], tol))
    inputs = {"q": q, "t": t, "x": x, "n_replicas": n_replicas, "seed": seed}
    return make_report("six-vertex-asep", inputs, rows, started)


def six_vertex_hermite_point(
    q: float, u: float, s_mode: S_MODES, r: float, L: int, below_diagonal: bool = False
) -> Tuple[int, int, int]:
    """
    Lattice point whose height converges to xi_r, the variable with the q-Laplace transform of DH+(r)

    :param q: Base in (0, 1)
    :param u: Spectral parameter
    :param s_mode: 'q^-1/2' or '-q^1/2'
    :param r: Hermite cut point
    :param L: Growing size parameter
    :param below_diagonal: Use M < N, only with s = q^(-1/2) (default: False)
    :return: (M, N, offset), the observable being h(M, N) + offset
    """
    if s_mode == "q^-1/2":
        xi = q**-0.5 / u
        w = 0.5 * (-np.sqrt(2) * r + np.sqrt(2 * r * r + 4 * (1 - xi) * L))
        d = max(1, int(round(w * w / xi)))
        if below_diagonal:
            return L, L + d, L - 1 - (L + d)
        return L + d, L, 0
    if below_diagonal:
        raise ParameterError("below_diagonal", "only defined for s = q^-1/2")
    w = 0.5 * (-np.sqrt(2) * r + np.sqrt(2 * r * r + 4 * L))
    M = int(round((1 + np.sqrt(q) * u) * w * w)) - L
    if M < 1:
        raise ParameterError("L", f"L={L} gives the column {M}")
    return M, L, 0


def verify_6v_hermite(
    q: float,
    u: float,
    s_mode: S_MODES,
    r: float,
    L_grid: Sequence[int] = (50, 200),
    zeta_list: Sequence[float] = (0.5, 1.0, 2.0),
    n_replicas: int = 10_000,
    seed: int = 0,
    workers: int = 1,
    below_diagonal: bool = False,
    tol: float = 0.05,
) -> ExperimentReport:
    """
    Six-vertex heights tuned to the Hermite regime against the q-Laplace transform of DH+(r)

    :param q: Base in (0, 1)
    :param u: Spectral parameter
    :param s_mode: 'q^-1/2' or '-q^1/2'
    :param r: Hermite cut point
    :param L_grid: Increasing size parameters (default: 50, 200)
    :param zeta_list: Positive transform variables (default: 0.5, 1, 2)
    :param n_replicas: Number of replicas (default: 10000)
    :param seed: Master seed (default: 0)
    :param workers: Number of processes (default: 1)
    :param below_diagonal: Use M < N, only with s = q^(-1/2) (default: False)
    :param tol: Tolerance on top of 3 standard errors (default: 0.05)
    :return: One row per L and zeta
    """
    started = time.perf_counter()
    spec = DiscreteEnsembleSpec.dh(r)
    exact = {zeta: float(np.real(q_laplace_config(spec, QLaplaceParams(q, zeta)))) for zeta in zeta_list}
    config: SixVertexConfig = {"q": q, "u": u, "s_mode": s_mode}
    rows = []
    for L in L_grid:
        M, N, offset = six_vertex_hermite_point(q, u, s_mode, r, L, below_diagonal)
        heights = six_vertex_heights(config, [(M, N)], seed, n_replicas, workers).column((M, N)) + offset
        for zeta in zeta_list:
            mean, se = q_laplace_estimate(heights, zeta, q)
            rows.append(CheckRow(f"L={L}.zeta={zeta}", mean, se, exact[zeta], tol))
    inputs = {"q": q, "u": u, "s_mode": s_mode, "r": r, "below_diagonal": below_diagonal, "seed": seed}
    return make_report("six-vertex-hermite", inputs, rows, started)
