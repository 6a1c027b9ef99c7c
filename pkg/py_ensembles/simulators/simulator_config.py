from typing import TypedDict

from py_ensembles.vars import S_MODES


class SixVertexConfig(TypedDict, total=False):
    """
    Contains the six-vertex model parameters

    Attributes:
        q: Base in (0, 1)
        u: Spectral parameter, u > q^(-1/2) when s = q^(-1/2)
        s_mode: Spin parameter: 'q^-1/2' (at most one path per vertical edge) or '-q^1/2'
    """

    q: float
    u: float
    s_mode: S_MODES
