"""Multiqubit entanglement measures and tightened monogamy/polygamy bounds.

The hot kernels run from a compiled extension when available; see
:mod:`entmono.kernels` for the backend selector.
"""

from .kernels import BACKEND
from .measures import MeasureKind
from .qstate import Bipartition, DensityMatrix, PureState, SchmidtParams

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Bipartition",
    "DensityMatrix",
    "MeasureKind",
    "PureState",
    "SchmidtParams",
    "__version__",
]
