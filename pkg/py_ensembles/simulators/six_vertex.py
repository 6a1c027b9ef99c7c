import logging
from typing import Dict, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from py_ensembles.exceptions import ParameterError
from py_ensembles.simulators.height_sample import HeightSample
from py_ensembles.simulators.simulator_config import SixVertexConfig
from py_ensembles.utils import map_replicas, replica_rng
from py_ensembles.vars import S_MODES

logger = logging.getLogger(__name__)

WEIGHT_TOL = 1e-14  # Slack of the [0, 1] check of the vertex weights


class SixVertexModel:
    """
    Stochastic higher spin six-vertex model in the quadrant with one path entering from the left in every row

    A vertex with i paths coming from below and j in {0, 1} from the left sends them up and to the right with the
    probabilities
        (i, 0) -> (i, 0):     (1 - q^i s u) / (1 - s u)
        (i, 0) -> (i - 1, 1): (q^i - 1) s u / (1 - s u)
        (i, 1) -> (i, 1):     (s^2 q^i - s u) / (1 - s u)
        (i, 1) -> (i + 1, 0): (1 - s^2 q^i) / (1 - s u)
    """

    def __init__(self, q: float, u: float, s_mode: S_MODES = "q^-1/2", max_paths: int = 64) -> None:
        """
        :param q: Base in (0, 1)
        :param u: Spectral parameter
        :param s_mode: 'q^-1/2' or '-q^1/2' (default: 'q^-1/2')
        :param max_paths: Largest vertical multiplicity whose weights are checked (default: 64)
        :raises ParameterError: If a transition probability leaves [0, 1]
        """
        if not 0 < q < 1:
            raise ParameterError("q", f"must lie strictly inside (0, 1), got {q}")
        if not u > 0:
            raise ParameterError("u", "must be positive")
        match s_mode:
            case "q^-1/2":
                s = q**-0.5
            case "-q^1/2":
                s = -(q**0.5)
            case _:
                raise ParameterError("s_mode", f"expected 'q^-1/2' or '-q^1/2', got '{s_mode}'")
        self.__q, self.__u, self.__s, self.__s_mode = q, u, s, s_mode
        if s * u == 1:
            raise ParameterError("u", "s u = 1 makes the weights singular")

        # With s = q^-1/2 a vertical edge carries at most one path
        self.__max_paths = 1 if s_mode == "q^-1/2" else max_paths
        for i in range(self.__max_paths + 1):
            for j in (0, 1):
                for (i2, j2), p in self.probabilities(i, j).items():
                    if not -WEIGHT_TOL <= p <= 1 + WEIGHT_TOL:
                        raise ParameterError(
                            "u", f"transition ({i},{j})->({i2},{j2}) has probability {p:.6g} outside [0, 1]"
                        )

    @classmethod
    def from_config(cls, config: SixVertexConfig) -> "SixVertexModel":
        try:
            return cls(config["q"], config["u"], config.get("s_mode", "q^-1/2"))
        except KeyError as missing:
            raise ParameterError(str(missing.args[0]), "required by the six-vertex model") from None

    @property
    def q(self) -> float:
        return self.__q

    @property
    def u(self) -> float:
        return self.__u

    @property
    def s(self) -> float:
        return self.__s

    @property
    def s_mode(self) -> S_MODES:
        return self.__s_mode

    def probabilities(self, i: int, j: int) -> Dict[Tuple[int, int], float]:
        """
        :param i: Paths entering from below
        :param j: Paths entering from the left, 0 or 1
        :return: Probability of every outgoing pair (up, right)
        """
        if i < 0 or j not in (0, 1):
            raise ParameterError("j", f"({i},{j}) is not an incoming state")
        q, s, u = self.__q, self.__s, self.__u
        denominator = 1 - s * u
        if j == 0:
            stay = (1 - q**i * s * u) / denominator
            return {(i, 0): stay, (i - 1, 1): (q**i - 1) * s * u / denominator} if i > 0 else {(0, 0): 1.0}
        return {(i, 1): (s * s * q**i - s * u) / denominator, (i + 1, 0): (1 - s * s * q**i) / denominator}

    def turn_right(self, i: NDArray) -> NDArray:
        """
        :param i: Vertical multiplicities of vertices without a path from the left
        :return: Probability that one of the paths from below turns right
        """
        s, u = self.__s, self.__u
        return (self.__q ** np.asarray(i, dtype=float) - 1) * s * u / (1 - s * u)

    def turn_up(self, i: NDArray) -> NDArray:
        """
        :param i: Vertical multiplicities of vertices with a path from the left
        :return: Probability that the path from the left turns up
        """
        s = self.__s
        return (1 - s * s * self.__q ** np.asarray(i, dtype=float)) / (1 - s * self.__u)

    def sample_heights(self, queries: Sequence[Tuple[int, int]], rngs: Sequence[np.random.Generator]) -> NDArray:
        """
        Samples the path ensemble row by row and reads h(M, N), the number of paths crossing the vertical line
        between columns M-1 and M at rows <= N, so h(1, N) = N

        Each replica draws one uniform per vertex from its own stream, a row at a time.

        :param queries: Pairs (M, N) with M, N >= 1
        :param rngs: Random stream of every replica
        :return: Heights, one row per replica
        """
        queries = _checked_queries(queries)
        rows, cols = _grid_shape(queries)
        n_replicas = len(rngs)
        vertical = np.zeros((n_replicas, cols + 1), dtype=int)
        crossings = np.zeros((n_replicas, cols + 1), dtype=int)
        heights = np.zeros((n_replicas, len(queries)), dtype=int)
        by_row: Dict[int, list] = {}
        for index, (M, N) in enumerate(queries):
            by_row.setdefault(N, []).append((index, M))

        for y in range(1, rows + 1):
            draws = np.stack([rng.random(cols) for rng in rngs])
            horizontal = np.ones(n_replicas, dtype=int)
            crossings[:, 0] += 1
            for x in range(1, cols + 1):
                i = vertical[:, x]
                draw = draws[:, x - 1]
                right = np.where(horizontal == 1, draw >= self.turn_up(i), draw < self.turn_right(i))
                vertical[:, x] = i + horizontal - right
                horizontal = right.astype(int)
                crossings[:, x] += horizontal
            for index, M in by_row.get(y, ()):
                heights[:, index] = crossings[:, M - 1]
        return heights


def _checked_queries(queries: Sequence[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    queries = tuple((int(M), int(N)) for M, N in queries)
    if not queries or any(M < 1 or N < 1 for M, N in queries):
        raise ParameterError("queries", "six-vertex queries are pairs (M, N) with M, N >= 1")
    return queries


def _grid_shape(queries: Sequence[Tuple[int, int]]) -> Tuple[int, int]:
    # Column M is never entered by the paths counted in h(M, N)
    return max(N for _, N in queries), max(max(M for M, _ in queries) - 1, 1)


def six_vertex_sample(
    model: SixVertexModel, queries: Sequence[Tuple[int, int]], rng: np.random.Generator
) -> NDArray:
    """
    Samples one six-vertex replica on the smallest grid holding the queries

    :param model: The model
    :param queries: Pairs (M, N) with M, N >= 1
    :param rng: Random stream
    :return: h(M, N) for every query
    """
    return model.sample_heights(queries, [rng])[0]


def _six_vertex_chunk(
    start: int, stop: int, config: SixVertexConfig, queries: Tuple[Tuple[int, int], ...], seed: int
) -> NDArray:
    model = SixVertexModel.from_config(config)
    return model.sample_heights(queries, [replica_rng(seed, index) for index in range(start, stop)])


def six_vertex_heights(
    config: SixVertexConfig, queries: Sequence[Tuple[int, int]], seed: int, n_replicas: int, workers: int = 1
) -> HeightSample:
    """
    Height functions of independent six-vertex replicas, replica i driven by the stream (seed, i)

    :param config: Model parameters
    :param queries: Pairs (M, N) with M, N >= 1
    :param seed: Master seed
    :param n_replicas: Number of replicas
    :param workers: Number of processes (default: 1)
    :return: The heights
    """
    queries = _checked_queries(queries)
    # Validates the weights once before any work is spread
    SixVertexModel.from_config(config)
    logger.debug("simulating %d six-vertex replicas", n_replicas)
    values = map_replicas(_six_vertex_chunk, n_replicas, workers, dict(config), queries, seed)
    return HeightSample(queries, values.reshape(n_replicas, len(queries)).astype(int))
