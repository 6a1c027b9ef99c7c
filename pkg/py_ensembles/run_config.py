from typing import Dict, TypedDict

from py_ensembles.vars import COMMANDS


class RunConfig(TypedDict, total=False):
    """
    Contains the resolved configuration of a CLI run

    Attributes:
        command: Subcommand to run
        parameters: Command parameters after the configuration file and the flags are merged
        seed: Master seed of the random streams, mandatory for stochastic commands
        output_path: File receiving the CSV output, stdout when missing
        tolerances: Tolerance overrides forwarded to the experiments, e.g. {'tol': 0.03}
        workers: Number of processes running the Monte Carlo replicas
    """

    command: COMMANDS
    parameters: Dict[str, object]
    seed: int
    output_path: str
    tolerances: Dict[str, float]
    workers: int
