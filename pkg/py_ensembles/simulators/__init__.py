"""
Monte Carlo simulators of the particle systems whose height functions match discrete ensembles.

Classes:
    ASEPProcess: Continuous-time ASEP with step initial data on a finite window.

    SixVertexModel: Stochastic higher spin six-vertex model in the quadrant.

Functions:
    asep_simulate: Runs one ASEP replica and reads its height function.

    asep_heights: Height functions of independent ASEP replicas.

    six_vertex_sample: Samples one six-vertex replica and reads its height function.

    six_vertex_heights: Height functions of independent six-vertex replicas.

Types:
    ASEPState: Snapshot of an ASEP window.

    HeightSample: Heights of the replicas at the query points.

    SixVertexConfig: Dictionary with the six-vertex model parameters.
"""

from .asep import ASEPProcess, ASEPState, asep_heights, asep_simulate, asep_window
from .height_sample import HeightSample
from .simulator_config import SixVertexConfig
from .six_vertex import SixVertexModel, six_vertex_heights, six_vertex_sample


__all__ = [
    'ASEPProcess', 'ASEPState', 'asep_heights', 'asep_simulate', 'asep_window', 'HeightSample', 'SixVertexConfig',
    'SixVertexModel', 'six_vertex_heights', 'six_vertex_sample'
]
