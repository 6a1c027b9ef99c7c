import math

import numpy as np
import pytest
from scipy.integrate import quad

from py_ensembles.exceptions import ParameterError
from py_ensembles.utils import (
    format_float,
    log_pochhammer,
    map_replicas,
    panel_rule,
    parse_config_lines,
    parse_grid,
    replica_rng,
    worker_count,
)
from py_ensembles.vars import WORKERS_ENV


def _indices(start, stop, offset):
    return np.arange(start, stop)[:, None] + offset


class TestAuxiliary:
    @pytest.mark.parametrize(
        ("a", "n"),
        [
            # Positive base
            (2.5, 4),
            # Negative non-integer base
            (-1.5, 3),
            # Negative integer base before it vanishes
            (-3.0, 3),
        ],
    )
    def test_log_pochhammer(self, a, n):
        """
        Test the log-space rising factorial against the product of its factors
        """
        expected = math.prod(a + k for k in range(n))
        sign, log = log_pochhammer(a, n)
        assert sign * np.exp(log) == pytest.approx(expected, rel=1e-12)

    def test_log_pochhammer_vanishes(self):
        """
        Test that (-m)_n vanishes for n > m
        """
        sign, log = log_pochhammer(-2.0, [0, 3])
        assert sign[0] == 1.0 and log[0] == 0.0
        assert sign[1] == 0.0 and log[1] == -np.inf

    def test_panel_rule(self):
        """
        Test that a panel rule integrates a smooth function and an endpoint singularity
        """
        nodes, weights = panel_rule(0.0, 2.0)
        assert weights @ np.cos(nodes) == pytest.approx(math.sin(2.0), rel=1e-13)

        nodes, weights = panel_rule(0.0, 1.0, alpha_lo=-0.5)
        expected, _ = quad(lambda t: np.exp(t) / np.sqrt(t), 0.0, 1.0)
        assert weights @ (np.exp(nodes) / np.sqrt(nodes)) == pytest.approx(expected, rel=1e-10)

    def test_replica_rng(self):
        """
        Test that a replica stream depends on the seed and the index only
        """
        assert replica_rng(5, 2).random() == replica_rng(5, 2).random()
        assert replica_rng(5, 2).random() != replica_rng(5, 3).random()
        assert replica_rng(5, 2).random() != replica_rng(6, 2).random()

    @pytest.mark.parametrize("workers", [1, 3])
    def test_map_replicas(self, workers):
        """
        Test that chunks are stacked in replica order
        """
        values = map_replicas(_indices, 600, workers, 10)
        assert values.shape == (600, 1)
        assert np.array_equal(values[:, 0], np.arange(600) + 10)
        assert map_replicas(_indices, 0, workers, 10).size == 0

    def test_worker_count(self, monkeypatch):
        """
        Test that the worker count is read from the environment
        """
        monkeypatch.delenv(WORKERS_ENV, raising=False)
        assert worker_count() == 1
        monkeypatch.setenv(WORKERS_ENV, "4")
        assert worker_count() == 4
        monkeypatch.setenv(WORKERS_ENV, "0")
        with pytest.raises(ParameterError):
            worker_count()


class TestParsers:
    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("0:1:0.25", [0.0, 0.25, 0.5, 0.75, 1.0]),
            ("-5:-4:0.5", [-5.0, -4.5, -4.0]),
            ("1, 2.5,4", [1.0, 2.5, 4.0]),
            ("3", [3.0]),
        ],
    )
    def test_parse_grid(self, text, expected):
        """
        Test range and list grids
        """
        assert parse_grid(text) == pytest.approx(expected)

    @pytest.mark.parametrize(
        "text",
        [
            # Not a number
            "a,b",
            # Decreasing range
            "2:1:0.5",
            # Zero step
            "0:1:0",
            # Missing step
            "0:1",
        ],
    )
    def test_invalid_grid(self, text):
        """
        Test that malformed grids are rejected
        """
        with pytest.raises(ParameterError):
            parse_grid(text)

    def test_parse_config_lines(self):
        """
        Test comments, blank lines and dashed keys
        """
        lines = ["# experiment", "", "n-replicas = 100  # small", "grid = -5:2:0.25"]
        assert parse_config_lines(lines) == {"n_replicas": "100", "grid": "-5:2:0.25"}
        with pytest.raises(ParameterError):
            parse_config_lines(["seed 3"])
        with pytest.raises(ParameterError):
            parse_config_lines([" = 3"])

    def test_format_float(self):
        """
        Test that formatted floats round-trip
        """
        assert format_float(0.1) == "0.10000000000000001"
        assert float(format_float(math.pi)) == math.pi
        assert format_float(2.0) == "2"
