"""Perfect state transfer with discrete-time quantum-walk search on symmetric graphs.

Three walk families are provided, each with a matrix-free full-space step, an
exact low-dimensional invariant subspace, the closed-form effective operator
on it, and closed-form spectra and fidelities:

* :class:`StarModel` - coined walk on the star graph (3-dim subspace of U^2)
* :class:`CompleteLoopModel` - coined walk on the complete graph with self-loops (5-dim, U^2)
* :class:`SzegedyModel` - Szegedy walk with queries on the complete graph (7-dim, U)
"""

from qwtransfer._accel import backend_name
from qwtransfer.complete_loop import CompleteLoopModel
from qwtransfer.experiment import (
    SweepReport,
    TransferReport,
    cross_check,
    invariant_checks,
    make_model,
    run_transfer,
    sweep,
)
from qwtransfer.spectral import SpectralData
from qwtransfer.star import StarModel
from qwtransfer.szegedy import SzegedyModel

__version__ = "0.1.0"

__all__ = [
    "CompleteLoopModel",
    "SpectralData",
    "StarModel",
    "SweepReport",
    "SzegedyModel",
    "TransferReport",
    "backend_name",
    "cross_check",
    "invariant_checks",
    "make_model",
    "run_transfer",
    "sweep",
]
