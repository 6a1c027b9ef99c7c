"""
Command-line entry point. Every subcommand maps to a library operation or experiment; tables are written as CSV with
17 significant digits, reports as 'key = value' lines on stdout.

Exit codes: 0 success, 1 failed experiment, 2 usage error, 3 accuracy error.
"""

import argparse
import csv
import inspect
import logging
import re
import sys
from contextlib import nullcontext
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from .configuration import input_to_ensemble
from .dpp import sample_many
from .exceptions import (
    AccuracyError, ConvergenceError, DomainError, KernelValidityError, ParameterError, WindowOverflowError
)
from .fredholm import gap_det_discrete
from .harness import (
    ExperimentReport, kpz_table, tracy_widom_table, verify_6v_asep, verify_6v_corollary, verify_6v_hermite,
    verify_asep_dl_identity, verify_asep_hermite, verify_asep_tw, verify_dpp_sampler, verify_duality,
    verify_kernel_forms, verify_kpz_regimes, verify_krawtchouk_duality, verify_limit_transition,
    verify_operator_convergence, verify_q_laplace_round_trip, verify_scale_invariance, verify_schur_pushforward,
    verify_spectral_consistency, verify_tasep_corollary
)
from .kernels import kernel_matrix
from .orthopoly import FamilySpec
from .qlaplace import QLaplaceParams, q_laplace_config
from .run_config import RunConfig
from .simulators import HeightSample, asep_heights, six_vertex_heights
from .utils import format_float, parse_config_lines, parse_grid, worker_count
from .vars import EXIT_ACCURACY, EXIT_FAIL, EXIT_SUCCESS, EXIT_USAGE, SEED_BOUND

logger = logging.getLogger(__name__)

LIST_KEYS = ("param", "tolerance")  # Configuration values split on ';'
BOOLEAN_KEYS = ("primed",)
RESERVED_KEYS = ("help", "config", "verbose", "command")
NEGATIVE_VALUE = re.compile(r"^-\.?\d[\d.,:eE+-]*$")  # Negative numbers, lists and grids


# ----------------------------------------------------------------------------------------------------------------------
# PARAMETER PARSERS


def _floats(text: str) -> Tuple[float, ...]:
    return tuple(parse_grid(text))


def _ints(text: str) -> Tuple[int, ...]:
    values = parse_grid(text)
    if any(v != int(v) for v in values):
        raise ParameterError("grid", f"'{text}' is not a list of integers")
    return tuple(int(v) for v in values)


def _boolean(text: str | bool) -> bool:
    if isinstance(text, bool):
        return text
    lowered = text.strip().lower()
    if lowered not in ("true", "false", "1", "0", "yes", "no"):
        raise ParameterError("value", f"expected a boolean, got '{text}'")
    return lowered in ("true", "1", "yes")


def _points(text: str) -> List[Tuple[int, int]]:
    try:
        return [tuple(int(v) for v in part.split(":")) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ParameterError("points", f"expected 'M:N,M:N,...', got '{text}'") from None


def _key_values(items: Iterable[str] | None, what: str) -> Dict[str, str]:
    values = {}
    for item in items or ():
        if "=" not in item:
            raise ParameterError(what, f"expected 'name=value', got '{item}'")
        key, value = (part.strip() for part in item.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


# ----------------------------------------------------------------------------------------------------------------------
# EXPERIMENTS


def _ensemble(params: Dict[str, object]):
    if "ensemble" not in params:
        raise ParameterError("ensemble", "required by this experiment")
    return input_to_ensemble(
        params.pop("ensemble"), params.pop("rho", None), params.pop("beta", None), params.pop("a", None),
        params.pop("b", None)
    )


def _kernel_forms(**params) -> ExperimentReport:
    return verify_kernel_forms(_ensemble(params), **params)


def _spectral(**params) -> ExperimentReport:
    return verify_spectral_consistency(_ensemble(params), **params)


def _dpp(seed: int, workers: int, window: int = 8, n_samples: int = 10_000, **params) -> ExperimentReport:
    return verify_dpp_sampler(kernel_matrix(_ensemble(params), window - 1), n_samples, seed, workers)


def _scale(family: str, N: int, factors: Tuple[float, ...] = (0.5, 2.0, 10.0), **params) -> ExperimentReport:
    return verify_scale_invariance(FamilySpec(family, **params), N, factors)


def _kpz(seed: int, workers: int, s_mode: str = None, v: float = None, mu: float = None, nu: float = None, **params):
    six_vertex = None if s_mode is None else {"s_mode": s_mode, "v": v, "mu": mu, "nu": nu}
    return verify_kpz_regimes(seed=seed, workers=workers, six_vertex=six_vertex, **params)


_ENSEMBLE_KEYS = {"ensemble": str, "rho": float, "beta": float, "a": float, "b": float}
_FAMILY_KEYS = {
    "family": str, "N": int, "factors": _floats, "beta": float, "a": float, "b": float, "theta": float, "xi": float,
    "p": float, "M": int, "const": float,
}

EXPERIMENTS: Dict[str, Tuple[Callable[..., ExperimentReport], Dict[str, Callable[[str], object]]]] = {
    "duality": (verify_duality, {"N_max": int, "tol": float}),
    "kernel-forms": (_kernel_forms, {**_ENSEMBLE_KEYS, "window": int, "tol": float}),
    "spectral": (_spectral, {**_ENSEMBLE_KEYS, "sizes": _ints, "window": int}),
    "scale-invariance": (_scale, _FAMILY_KEYS),
    "operator": (verify_operator_convergence, {"base": str}),
    "schur": (verify_schur_pushforward, {"a": int, "b": int, "x": float, "y": float, "primed": _boolean,
                                         "cols": int, "tol": float}),
    "krawtchouk-duality": (verify_krawtchouk_duality, {"q": float, "u": float, "M": int, "N": int, "tol": float}),
    "q-laplace": (verify_q_laplace_round_trip, {"q": float, "n_max": int, "tol": float}),
    "dpp": (_dpp, {**_ENSEMBLE_KEYS, "window": int, "n_samples": int}),
    "asep-dl": (verify_asep_dl_identity, {"q": float, "t": float, "x": int, "zeta_list": _floats,
                                          "n_replicas": int}),
    "tasep": (verify_tasep_corollary, {"t": float, "x": int, "N_list": _ints, "n_replicas": int}),
    "asep-hermite": (verify_asep_hermite, {"q": float, "r": float, "t_tilde_grid": _floats, "n_replicas": int,
                                           "tol": float}),
    "asep-tw": (verify_asep_tw, {"q": float, "x_over_t": float, "t_tilde_grid": _floats, "s_points": _floats,
                                 "n_replicas": int, "mc_t_tilde": float, "det_tol": float, "ks_tol": float}),
    "kpz": (_kpz, {"eps_grid": _floats, "t_hat": float, "x_hat": float, "zeta_hat_list": _floats,
                   "n_replicas": int, "tol": float, "s_mode": str, "v": float, "mu": float, "nu": float}),
    "6v": (verify_6v_corollary, {"q": float, "u": float, "s_mode": str, "M": int, "N": int, "zeta_list": _floats,
                                 "n_replicas": int, "method": str}),
    "6v-asep": (verify_6v_asep, {"q": float, "t": float, "x": int, "zeta_list": _floats, "eps_grid": _floats,
                                 "n_replicas": int, "tol": float}),
    "6v-hermite": (verify_6v_hermite, {"q": float, "u": float, "s_mode": str, "r": float, "L_grid": _ints,
                                       "zeta_list": _floats, "n_replicas": int, "below_diagonal": _boolean,
                                       "tol": float}),
}


def _convert(raw: Dict[str, str], converters: Dict[str, Callable[[str], object]], what: str) -> Dict[str, object]:
    values = {}
    for key, text in raw.items():
        if key not in converters:
            known = ", ".join(sorted(converters))
            raise ParameterError(key, f"not a parameter of {what}, expected one of {known}")
        try:
            values[key] = converters[key](text)
        except ValueError:
            raise ParameterError(key, f"cannot parse '{text}'") from None
    return values


# ----------------------------------------------------------------------------------------------------------------------
# PARSER


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Flat 'key = value' file, flags override its values")
    common.add_argument("--seed", type=int, help="Master seed (mandatory for stochastic commands)")
    common.add_argument("--output", dest="output_path", help="CSV output file (default: stdout)")
    common.add_argument("--workers", type=int, help="Worker processes (default: $PY_ENSEMBLES_WORKERS or 1)")
    common.add_argument("--tolerance", action="append", help="Tolerance override 'name=value', repeatable")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG on stderr")
    return common


def _ensemble_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ensemble", help="DH+, DH-, DL+, DL-, DJ+ or DJ-")
    parser.add_argument("--rho", type=float, help="Cut point")
    parser.add_argument("--beta", type=float, help="Laguerre parameter")
    parser.add_argument("--a", type=float, help="Jacobi parameter at t = 1")
    parser.add_argument("--b", type=float, help="Jacobi parameter at t = -1")


def build_parser() -> Tuple[argparse.ArgumentParser, Dict[str, argparse.ArgumentParser]]:
    """
    :return: The main parser and the parser of every subcommand
    """
    parser = argparse.ArgumentParser(prog="py_ensembles", description="Discrete orthogonal polynomial ensembles")
    commands = parser.add_subparsers(dest="command", required=True)
    common = _common_options()
    sub = {}

    def add(name: str, text: str) -> argparse.ArgumentParser:
        sub[name] = commands.add_parser(name, parents=[common], help=text, description=text)
        return sub[name]

    kernel = add("kernel", "Kernel of a discrete ensemble on {0..window}")
    _ensemble_options(kernel)
    kernel.add_argument("--window", type=int, default=10, help="Last site (default: 10)")

    gap = add("gap", "Gap probability of {0..N-1}")
    _ensemble_options(gap)
    gap.add_argument("--N", type=int, help="Number of sites")

    sample = add("sample", "Exact DPP samples of the kernel on {0..window-1}")
    _ensemble_options(sample)
    sample.add_argument("--window", type=int, default=10, help="Number of sites (default: 10)")
    sample.add_argument("--n-samples", type=int, default=1000, help="Number of samples (default: 1000)")

    asep = add("simulate-asep", "ASEP heights with step initial data")
    asep.add_argument("--q", type=float, help="Left jump rate in [0, 1)")
    asep.add_argument("--t", type=float, help="Time")
    asep.add_argument("--x", default="0", help="Query sites, e.g. '-1,0,1' (default: 0)")
    asep.add_argument("--n-replicas", type=int, default=1000, help="Replicas (default: 1000)")

    six = add("simulate-6v", "Stochastic six-vertex heights")
    six.add_argument("--q", type=float, help="Base in (0, 1)")
    six.add_argument("--u", type=float, help="Spectral parameter")
    six.add_argument("--s-mode", default="q^-1/2", choices=("q^-1/2", "-q^1/2"), help="Spin parameter")
    six.add_argument("--points", help="Query points 'M:N,M:N,...'")
    six.add_argument("--n-replicas", type=int, default=1000, help="Replicas (default: 1000)")

    qlaplace = add("qlaplace", "q-Laplace transform of a discrete ensemble")
    _ensemble_options(qlaplace)
    qlaplace.add_argument("--q", type=float, help="Base in (0, 1)")
    qlaplace.add_argument("--zeta", default="1", help="Transform variables, e.g. '0.25,0.5' (default: 1)")
    qlaplace.add_argument("--shift", type=int, default=0, help="Deterministic shift (default: 0)")

    identity = add("verify-identity", "Runs an experiment of the harness")
    identity.add_argument("--experiment", choices=sorted(EXPERIMENTS), help="Experiment name")
    identity.add_argument("--param", action="append", help="Experiment parameter 'name=value', repeatable")

    limit = add("verify-limit", "Runs a limit-transition scan")
    limit.add_argument("--transition", help="Registry key, e.g. meixner-dl")
    limit.add_argument("--N-grid", help="Particle numbers (default: the grid of the transition)")
    limit.add_argument("--x-max", type=int, default=30, help="Last compared Jacobi row (default: 30)")
    limit.add_argument("--window", type=int, default=8, help="Last compared kernel site (default: 8)")
    limit.add_argument("--param", action="append", help="Transition parameter 'name=value', repeatable")

    tw = add("tw-table", "GUE Tracy-Widom distribution on a grid")
    tw.add_argument("--grid", default="-5:2:0.25", help="'start:stop:step' or a list (default: -5:2:0.25)")

    kpz = add("kpz-table", "Airy-statistic limit of the KPZ regime on a grid")
    kpz.add_argument("--grid", default="0.25:4:0.25", help="Transform variables zeta_hat (default: 0.25:4:0.25)")
    kpz.add_argument("--tau-hat", type=float, default=0.5, help="Airy time scale (default: 0.5)")

    schur = add("schur-check", "Schur measure pushforward against the Meixner or Krawtchouk ensemble")
    schur.add_argument("--a", type=int, help="Number of x variables")
    schur.add_argument("--b", type=int, help="Number of y variables")
    schur.add_argument("--x", type=float, help="Value of the x variables")
    schur.add_argument("--y", type=float, help="Value of the y variables")
    schur.add_argument("--primed", action="store_true", help="Use the dual measure SM'")
    schur.add_argument("--cols", type=int, help="Column bound of the SM enumeration")

    return parser, sub


def load_config(path: str) -> Dict[str, str]:
    """
    :param path: Flat UTF-8 'key = value' file
    :return: The raw values
    """
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_config_lines(handle)
    except OSError as error:
        raise ParameterError("config", f"cannot read '{path}': {error.strerror}") from None


def _apply_config(parser: argparse.ArgumentParser, command: str, values: Dict[str, str]) -> None:
    dests = {action.dest for action in parser._actions} - set(RESERVED_KEYS)
    defaults = {}
    for key, raw in values.items():
        if key not in dests:
            raise ParameterError(key, f"unknown configuration key for '{command}'")
        if key in LIST_KEYS:
            defaults[key] = [part.strip() for part in raw.split(";") if part.strip()]
        elif key in BOOLEAN_KEYS:
            defaults[key] = _boolean(raw)
        else:
            # String defaults go through the type of their flag
            defaults[key] = raw
    parser.set_defaults(**defaults)


def _join_negative_values(argv: Sequence[str]) -> List[str]:
    """
    Joins '--flag -5:2:0.25' into '--flag=-5:2:0.25', which argparse would otherwise read as an unknown option

    :param argv: Arguments without the program name
    :return: The arguments with every negative value attached to its flag
    """
    joined: List[str] = []
    for token in argv:
        previous = joined[-1] if joined else ""
        if NEGATIVE_VALUE.match(token) and previous.startswith("--") and "=" not in previous:
            joined[-1] = f"{previous}={token}"
        else:
            joined.append(token)
    return joined


def resolve(argv: Sequence[str] | None = None) -> RunConfig:
    """
    Parses the flags, merges the configuration file under them and checks the seed

    :param argv: Arguments without the program name (default: sys.argv[1:])
    :return: The run configuration
    """
    argv = _join_negative_values(sys.argv[1:] if argv is None else argv)
    parser, sub = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        _apply_config(sub[args.command], args.command, load_config(args.config))
        args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    if args.seed is not None and not 0 <= args.seed < SEED_BOUND:
        raise ParameterError("seed", "must be a 64-bit unsigned integer")
    workers = worker_count() if args.workers is None else args.workers
    if workers < 1:
        raise ParameterError("workers", "must be at least 1")

    reserved = set(RESERVED_KEYS) | {"seed", "output_path", "workers", "tolerance"}
    parameters = {key: value for key, value in vars(args).items() if key not in reserved}
    raw_tolerances = _key_values(args.tolerance, "tolerance")
    tolerances = _convert(raw_tolerances, dict.fromkeys(raw_tolerances, float), "the tolerances")
    config: RunConfig = {
        "command": args.command, "parameters": parameters, "tolerances": tolerances, "workers": workers,
    }
    if args.seed is not None:
        config["seed"] = args.seed
    if args.output_path is not None:
        config["output_path"] = args.output_path
    return config


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


# ----------------------------------------------------------------------------------------------------------------------
# COMMANDS


def _require(parameters: Dict[str, object], *names: str) -> None:
    for name in names:
        if parameters.get(name) is None:
            raise ParameterError(name, "required by this command")


def _seed(config: RunConfig) -> int:
    if "seed" not in config:
        raise ParameterError("seed", f"mandatory for '{config['command']}'")
    return config["seed"]


def _write_table(header: Sequence[str], rows: Iterable[Sequence[object]], config: RunConfig) -> None:
    path = config.get("output_path")
    opened = open(path, "w", encoding="utf-8", newline="") if path else nullcontext(sys.stdout)
    with opened as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_float(v) if isinstance(v, float) else v for v in row])


def _write_heights(heights: HeightSample, config: RunConfig) -> None:
    path = config.get("output_path")
    heights.write_csv(path if path else sys.stdout)


def _emit_report(report: ExperimentReport, config: RunConfig) -> int:
    sys.stdout.write(report.to_text())
    if config.get("output_path"):
        report.write_csv(config["output_path"])
    logger.info("%s finished with verdict %s in %.3fs", report.name, report.verdict, report.runtime)
    return EXIT_SUCCESS if report.passed else EXIT_FAIL


def _ensemble_from(parameters: Dict[str, object]):
    _require(parameters, "ensemble", "rho")
    return input_to_ensemble(
        parameters["ensemble"], parameters["rho"], parameters.get("beta"), parameters.get("a"), parameters.get("b")
    )


def _run_experiment(config: RunConfig) -> int:
    parameters = config["parameters"]
    _require(parameters, "experiment")
    function, converters = EXPERIMENTS[parameters["experiment"]]
    raw = {**_key_values(parameters.get("param"), "param")}
    kwargs = _convert(raw, converters, f"experiment '{parameters['experiment']}'")
    kwargs.update(_convert(config["tolerances"], converters, f"experiment '{parameters['experiment']}'"))

    signature = inspect.signature(function)
    if "seed" in signature.parameters:
        kwargs["seed"] = _seed(config)
    if "workers" in signature.parameters:
        kwargs["workers"] = config["workers"]
    try:
        signature.bind(**kwargs)
    except TypeError as error:
        raise ParameterError(parameters["experiment"], str(error)) from None
    return _emit_report(function(**kwargs), config)


def _run_limit(config: RunConfig) -> int:
    parameters = config["parameters"]
    _require(parameters, "transition")
    params = {key: float(value) for key, value in _key_values(parameters.get("param"), "param").items()}
    kwargs = {key: float(value) for key, value in config["tolerances"].items() if key == "order_tol"}
    if set(config["tolerances"]) - {"order_tol"}:
        raise ParameterError("tolerance", "verify-limit only accepts order_tol")
    grid = None if parameters["N_grid"] is None else _ints(parameters["N_grid"])
    report = verify_limit_transition(
        parameters["transition"], grid, parameters["x_max"], parameters["window"], **kwargs, **params
    )
    return _emit_report(report, config)


def run_command(config: RunConfig) -> int:
    """
    Executes a resolved run configuration

    :param config: The run configuration
    :return: The exit code
    """
    p = config["parameters"]
    match config["command"]:
        case "kernel":
            K = kernel_matrix(_ensemble_from(p), p["window"])
            _write_table(["x", "y", "K"], ((x, y, K[x, y]) for x in K.window for y in K.window), config)
        case "gap":
            _require(p, "N")
            value = gap_det_discrete(_ensemble_from(p), p["N"])
            _write_table(["N", "gap"], [(p["N"], value)], config)
        case "sample":
            K = kernel_matrix(_ensemble_from(p), p["window"] - 1)
            samples = sample_many(K, p["n_samples"], _seed(config), config["workers"])
            _write_table(["sample", "sites"], ((i, s.to_line()) for i, s in enumerate(samples)), config)
        case "simulate-asep":
            _require(p, "q", "t")
            heights = asep_heights(p["q"], p["t"], _ints(p["x"]), _seed(config), p["n_replicas"], config["workers"])
            _write_heights(heights, config)
        case "simulate-6v":
            _require(p, "q", "u", "points")
            model = {"q": p["q"], "u": p["u"], "s_mode": p["s_mode"]}
            heights = six_vertex_heights(model, _points(p["points"]), _seed(config), p["n_replicas"], config["workers"])
            _write_heights(heights, config)
        case "qlaplace":
            _require(p, "q")
            spec = _ensemble_from(p)
            rows = [
                (zeta, float(q_laplace_config(spec, QLaplaceParams(p["q"], zeta), p["shift"]).real))
                for zeta in _floats(p["zeta"])
            ]
            _write_table(["zeta", "value"], rows, config)
        case "verify-identity":
            return _run_experiment(config)
        case "verify-limit":
            return _run_limit(config)
        case "tw-table":
            _write_table(["s", "F_GUE"], tracy_widom_table(_floats(p["grid"])), config)
        case "kpz-table":
            _write_table(["zeta_hat", "value"], kpz_table(_floats(p["grid"]), p["tau_hat"]), config)
        case "schur-check":
            _require(p, "a", "b", "x", "y")
            report = verify_schur_pushforward(p["a"], p["b"], p["x"], p["y"], p["primed"], p["cols"])
            return _emit_report(report, config)
    return EXIT_SUCCESS


def run(argv: Sequence[str] | None = None) -> int:
    """
    Runs the command line

    :param argv: Arguments without the program name (default: sys.argv[1:])
    :return: The exit code
    """
    try:
        return run_command(resolve(argv))
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else EXIT_USAGE
    except (ParameterError, DomainError) as error:
        print(f"py_ensembles: error: {error}", file=sys.stderr)
        return EXIT_USAGE
    except (AccuracyError, ConvergenceError, KernelValidityError, WindowOverflowError) as error:
        print(f"py_ensembles: accuracy error: {error.message}", file=sys.stderr)
        return EXIT_ACCURACY


def main() -> None:
    sys.exit(run())
