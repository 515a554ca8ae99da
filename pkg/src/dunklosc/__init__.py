"""Relativistic Dunkl oscillators in one dimension.

Spectra, wavefunctions, exact Dunkl-operator calculus, and canonical-ensemble
thermodynamics of the parity-deformed Klein-Gordon and Dirac oscillators,
with a FastAPI service layer and a CSV/SVG emitting command line front end.
"""

__version__ = "0.1.0"

from .errors import ConsistencyError, ConvergenceError, DomainError
from .params import EVEN, ODD, OscillatorParams, Parity

__all__ = [
    "ConsistencyError",
    "ConvergenceError",
    "DomainError",
    "EVEN",
    "ODD",
    "OscillatorParams",
    "Parity",
    "__version__",
]
