import io
import math

import numpy as np
import pytest

from py_ensembles.exceptions import ParameterError
from py_ensembles.simulators import (
    ASEPProcess,
    HeightSample,
    SixVertexModel,
    asep_heights,
    asep_simulate,
    asep_window,
    six_vertex_heights,
    six_vertex_sample,
)
from py_ensembles.utils import replica_rng


class TestASEP:
    def test_step_initial_data(self):
        """
        Test that at time 0 the height function is the step h(x) = max(-x, 0)
        """
        heights = asep_simulate(0.5, 0.0, [-3, -1, 0, 2], replica_rng(0, 0))
        assert list(heights) == [3, 1, 0, 0]

    def test_process(self):
        """
        Test the window, the clock and the conservation of particles
        """
        process = ASEPProcess(0.3, 40, replica_rng(1, 0))
        assert process.half_width == 40 and process.q == 0.3
        process.run_until(2.0)
        assert process.time == 2.0
        assert int(process.state.occupied.sum()) == 40
        assert process.height(-40) == 40
        with pytest.raises(ParameterError):
            process.run_until(1.0)
        with pytest.raises(ParameterError):
            process.height(41)

    @pytest.mark.parametrize(
        ("q", "half_width"),
        [
            # Left rate equal to the right rate
            (1.0, 40),
            # Negative rate
            (-0.1, 40),
            # Window inside the edge guard
            (0.5, 3),
        ],
    )
    def test_invalid_process(self, q, half_width):
        """
        Test that the rate and the window are checked
        """
        with pytest.raises(ParameterError):
            ASEPProcess(q, half_width, replica_rng(0, 0))

    def test_window(self):
        """
        Test that the window covers the queries and the light cone
        """
        assert asep_window(10.0, [-5, 30]) > 50
        with pytest.raises(ParameterError):
            asep_simulate(0.0, -1.0, [0], replica_rng(0, 0))

    def test_tasep_first_jump(self):
        """
        Test that the first TASEP particle passes the origin with probability 1 - exp(-t)
        """
        sample = asep_heights(0.0, 1.0, [0], seed=3, n_replicas=2000)
        hits = sample.column(0) >= 1
        p = 1 - math.exp(-1.0)
        assert abs(hits.mean() - p) < 5 * math.sqrt(p * (1 - p) / hits.size)

    def test_reproducible(self):
        """
        Test that replicas depend on the seed only, whatever the number of workers
        """
        serial = asep_heights(0.4, 0.5, [-1, 0, 1], seed=9, n_replicas=300)
        parallel = asep_heights(0.4, 0.5, [-1, 0, 1], seed=9, n_replicas=300, workers=2)
        assert serial.values.shape == (300, 3)
        assert np.array_equal(serial.values, parallel.values)
        assert np.array_equal(asep_heights(0.4, 0.5, [-1, 0, 1], seed=9, n_replicas=10).values, serial.values[:10])


class TestSixVertex:
    @pytest.mark.parametrize(
        ("q", "u", "s_mode"),
        [(0.5, 2.0, "q^-1/2"), (0.5, 1.0, "-q^1/2"), (0.8, 0.3, "-q^1/2")],
    )
    def test_probabilities(self, q, u, s_mode):
        """
        Test that every vertex has a probability distribution over its outgoing states
        """
        model = SixVertexModel(q, u, s_mode)
        # With s = q^(-1/2) a vertical edge holds at most one path
        for i in range(2 if s_mode == "q^-1/2" else 4):
            for j in (0, 1):
                probabilities = model.probabilities(i, j)
                assert sum(probabilities.values()) == pytest.approx(1.0, abs=1e-14)
                assert all(0 <= p <= 1 for p in probabilities.values())

    @pytest.mark.parametrize(
        ("q", "u", "s_mode"),
        [
            # u below q^(-1/2) gives negative weights
            (0.5, 1.0, "q^-1/2"),
            # q outside (0, 1)
            (1.5, 1.0, "-q^1/2"),
            # Unknown spin
            (0.5, 1.0, "q"),
        ],
    )
    def test_invalid_model(self, q, u, s_mode):
        """
        Test that only stochastic vertex weights are accepted
        """
        with pytest.raises(ParameterError):
            SixVertexModel(q, u, s_mode)

    def test_from_config(self):
        """
        Test that the model is built from a configuration dictionary
        """
        model = SixVertexModel.from_config({"q": 0.5, "u": 2.0})
        assert model.s_mode == "q^-1/2"
        assert model.s == pytest.approx(math.sqrt(2.0))
        with pytest.raises(ParameterError):
            SixVertexModel.from_config({"u": 2.0})

    def test_left_boundary(self):
        """
        Test that h(1, N) = N
        """
        sample = six_vertex_heights({"q": 0.5, "u": 1.0, "s_mode": "-q^1/2"}, [(1, 4), (3, 4)], seed=0, n_replicas=50)
        assert np.all(sample.column((1, 4)) == 4)
        assert np.all(sample.column((3, 4)) <= 4)

    @pytest.mark.parametrize("config", [{"q": 0.5, "u": 2.0}, {"q": 0.5, "u": 1.0, "s_mode": "-q^1/2"}])
    def test_first_vertex(self, config):
        """
        Test that the path entering the corner turns right with its vertex probability
        """
        sample = six_vertex_heights(config, [(2, 1)], seed=4, n_replicas=4000)
        p = SixVertexModel.from_config(config).probabilities(0, 1)[(0, 1)]
        frequency = sample.column((2, 1)).mean()
        assert abs(frequency - p) < 5 * math.sqrt(p * (1 - p) / 4000)

    def test_reproducible(self):
        """
        Test that the replicas do not depend on the number of workers
        """
        config = {"q": 0.6, "u": 0.5, "s_mode": "-q^1/2"}
        queries = [(2, 3), (4, 5)]
        serial = six_vertex_heights(config, queries, seed=2, n_replicas=300)
        parallel = six_vertex_heights(config, queries, seed=2, n_replicas=300, workers=2)
        assert np.array_equal(serial.values, parallel.values)

    def test_single_replica(self):
        """
        Test that one replica drawn from the stream (seed, i) is row i of the batched heights
        """
        config = {"q": 0.6, "u": 0.5, "s_mode": "-q^1/2"}
        queries = [(2, 3), (4, 5), (1, 2)]
        batch = six_vertex_heights(config, queries, seed=7, n_replicas=5)
        model = SixVertexModel.from_config(config)
        for index in range(5):
            heights = six_vertex_sample(model, queries, replica_rng(7, index))
            assert np.array_equal(heights, batch.values[index])
        assert heights[2] == 2

    def test_row_by_row_draws(self):
        """
        Test that a replica consumes exactly one uniform per vertex of its grid, row after row
        """
        model = SixVertexModel(0.5, 2.0)
        rng = replica_rng(5, 0)
        six_vertex_sample(model, [(4, 3)], rng)
        assert rng.random() == replica_rng(5, 0).random(10)[9]

    def test_tall_grid(self):
        """
        Test a tall grid of twenty thousand rows
        """
        sample = six_vertex_heights({"q": 0.5, "u": 2.0}, [(2, 20_000)], seed=1, n_replicas=2)
        assert np.all(sample.column((2, 20_000)) <= 20_000)
        assert np.all(sample.column((2, 20_000)) >= 0)

    def test_invalid_queries(self):
        """
        Test that query points lie in the quadrant
        """
        with pytest.raises(ParameterError):
            six_vertex_heights({"q": 0.5, "u": 2.0}, [(0, 2)], seed=0, n_replicas=1)
        with pytest.raises(ParameterError):
            six_vertex_heights({"q": 0.5, "u": 2.0}, [], seed=0, n_replicas=1)


class TestHeightSample:
    def test_write_csv(self):
        """
        Test the CSV layout with six-vertex labels
        """
        sample = HeightSample(((1, 2), (3, 4)), np.array([[2, 1], [2, 0]]))
        buffer = io.StringIO()
        sample.write_csv(buffer)
        assert buffer.getvalue() == "replica,query,height\n0,1:2,2\n0,3:4,1\n1,1:2,2\n1,3:4,0\n"
        assert list(sample.column((3, 4))) == [1, 0]

    def test_write_csv_file(self, tmp_path):
        """
        Test that ASEP samples are written to a file with integer labels
        """
        path = tmp_path / "heights.csv"
        HeightSample((-1, 0), np.array([[1, 0]])).write_csv(path)
        assert path.read_text(encoding="utf-8").splitlines() == ["replica,query,height", "0,-1,1", "0,0,0"]
