import logging
from typing import List, NamedTuple, Sequence

import numpy as np
from numpy.typing import NDArray

from py_ensembles.exceptions import ParameterError, WindowOverflowError
from py_ensembles.simulators.height_sample import HeightSample
from py_ensembles.utils import map_replicas, replica_rng
from py_ensembles.vars import ASEP_EDGE_GUARD

logger = logging.getLogger(__name__)


class ASEPState(NamedTuple):
    """
    Snapshot of an exclusion process on the window {-L..L}

    Attributes:
        occupied: Occupation of the sites -L..L
        time: Current time
        q: Left jump rate
    """

    occupied: NDArray
    time: float
    q: float


class _IndexedSet:
    """
    Set of bond indices with O(1) insertion, removal and uniform choice
    """

    def __init__(self, capacity: int) -> None:
        self.__items: List[int] = []
        self.__where = np.full(capacity, -1, dtype=int)

    def __len__(self) -> int:
        return len(self.__items)

    def add(self, item: int) -> None:
        if self.__where[item] < 0:
            self.__where[item] = len(self.__items)
            self.__items.append(item)

    def discard(self, item: int) -> None:
        position = self.__where[item]
        if position < 0:
            return
        last = self.__items.pop()
        if last != item:
            self.__items[position] = last
            self.__where[last] = position
        self.__where[item] = -1

    def choice(self, rng: np.random.Generator) -> int:
        return self.__items[int(rng.integers(len(self.__items)))]


def asep_window(t: float, queries: Sequence[int]) -> int:
    """
    :param t: Time horizon
    :param queries: Query sites
    :return: Half-width L = ceil(2t + max|query| + 8 sqrt(t+1) + 20) of the simulation window
    """
    reach = max((abs(int(x)) for x in queries), default=0)
    return int(np.ceil(2 * t + reach + 8 * np.sqrt(t + 1) + 20))


class ASEPProcess:
    """
    Continuous-time ASEP with step initial data: right jumps at rate 1, left jumps at rate q, all negative sites
    occupied at time 0

    The process runs on the window {-L..L}; bonds (x, x+1) holding a particle and a hole are kept in two indexed
    sets, so every event costs O(1).
    """

    def __init__(self, q: float, half_width: int, rng: np.random.Generator) -> None:
        """
        :param q: Left jump rate in [0, 1)
        :param half_width: Half-width L of the window
        :param rng: Random stream
        """
        if not 0 <= q < 1:
            raise ParameterError("q", f"must lie in [0, 1), got {q}")
        if half_width <= ASEP_EDGE_GUARD:
            raise ParameterError("half_width", f"must exceed the edge guard {ASEP_EDGE_GUARD}")
        self.__q = q
        self.__L = half_width
        self.__rng = rng
        self.__time = 0.0
        self.__occupied = np.zeros(2 * half_width + 1, dtype=bool)
        self.__occupied[:half_width] = True

        # Bond b joins the sites with indices b and b+1
        self.__right = _IndexedSet(2 * half_width)
        self.__left = _IndexedSet(2 * half_width)
        self.__refresh(half_width - 1)

    @property
    def q(self) -> float:
        return self.__q

    @property
    def time(self) -> float:
        return self.__time

    @property
    def half_width(self) -> int:
        return self.__L

    @property
    def state(self) -> ASEPState:
        return ASEPState(self.__occupied.copy(), self.__time, self.__q)

    def __refresh(self, bond: int) -> None:
        if not 0 <= bond < self.__occupied.size - 1:
            return
        here, there = self.__occupied[bond], self.__occupied[bond + 1]
        if here and not there:
            self.__right.add(bond)
        else:
            self.__right.discard(bond)
        if there and not here:
            self.__left.add(bond)
        else:
            self.__left.discard(bond)

    def __jump(self, bond: int) -> None:
        self.__occupied[bond], self.__occupied[bond + 1] = self.__occupied[bond + 1], self.__occupied[bond]
        for b in (bond - 1, bond, bond + 1):
            self.__refresh(b)

    def run_until(self, t: float) -> None:
        """
        Advances the process to time t

        :param t: Target time, not before the current time
        :raises WindowOverflowError: If a particle or a hole gets within ASEP_EDGE_GUARD sites of a window edge
        """
        if t < self.__time:
            raise ParameterError("t", f"cannot run back from {self.__time} to {t}")
        last = self.__occupied.size - 1
        while True:
            n_right, n_left = len(self.__right), len(self.__left)
            rate = n_right + self.__q * n_left
            if rate == 0:
                break
            step = self.__rng.exponential(1.0 / rate)
            if self.__time + step > t:
                break
            self.__time += step

            if self.__rng.random() * rate < n_right:
                bond = self.__right.choice(self.__rng)
                if bond + 1 >= last - ASEP_EDGE_GUARD or bond <= ASEP_EDGE_GUARD:
                    raise WindowOverflowError(bond - self.__L)
            else:
                bond = self.__left.choice(self.__rng)
            self.__jump(bond)
        self.__time = t

    def height(self, x: int) -> int:
        """
        :param x: Site inside the window
        :return: Number of particles at sites >= x
        """
        if not -self.__L <= x <= self.__L:
            raise ParameterError("x", f"site {x} is outside the window {{-{self.__L}..{self.__L}}}")
        return int(np.count_nonzero(self.__occupied[x + self.__L:]))


def asep_simulate(q: float, t: float, queries: Sequence[int], rng: np.random.Generator) -> NDArray:
    """
    Runs one ASEP replica up to time t

    :param q: Left jump rate in [0, 1)
    :param t: Time
    :param queries: Sites where the height function is read
    :param rng: Random stream
    :return: h(x) for every query
    """
    if t < 0:
        raise ParameterError("t", "must be nonnegative")
    process = ASEPProcess(q, asep_window(t, queries), rng)
    process.run_until(t)
    return np.array([process.height(int(x)) for x in queries], dtype=int)


def _asep_chunk(start: int, stop: int, q: float, t: float, queries: Sequence[int], seed: int) -> NDArray:
    return np.array([asep_simulate(q, t, queries, replica_rng(seed, index)) for index in range(start, stop)])


def asep_heights(
    q: float, t: float, queries: Sequence[int], seed: int, n_replicas: int, workers: int = 1
) -> HeightSample:
    """
    Height functions of independent ASEP replicas, replica i driven by the stream (seed, i)

    :param q: Left jump rate in [0, 1)
    :param t: Time
    :param queries: Query sites
    :param seed: Master seed
    :param n_replicas: Number of replicas
    :param workers: Number of processes (default: 1)
    :return: The heights
    """
    queries = tuple(int(x) for x in queries)
    logger.debug("simulating %d ASEP replicas up to t=%g", n_replicas, t)
    values = map_replicas(_asep_chunk, n_replicas, workers, q, t, queries, seed)
    return HeightSample(queries, values.reshape(n_replicas, len(queries)).astype(int))
