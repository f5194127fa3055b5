"""ptosc: PT-symmetric transformed harmonic oscillator toolkit.

Builds the non-Hermitian oscillator obtained by simultaneously mixing
coordinate and momentum, diagonalizes it in a truncated Fock basis with a
from-scratch dense QR eigensolver, verifies the vanishing of the
perturbation corrections at the selected frequencies, and evaluates the
series wavefunctions in real space.
"""

__version__ = "0.1.0"

from . import cli, eigensolver, fock, model, perturbation, wavefunction
from .errors import (
    BasisTooSmall,
    ConvergenceError,
    DivergentSeriesWarning,
    DomainError,
    FrequencyDomainError,
    GridTooNarrow,
    SingularShift,
    SingularTransform,
)

__all__ = [
    "cli",
    "eigensolver",
    "fock",
    "model",
    "perturbation",
    "wavefunction",
    "BasisTooSmall",
    "ConvergenceError",
    "DivergentSeriesWarning",
    "DomainError",
    "FrequencyDomainError",
    "GridTooNarrow",
    "SingularShift",
    "SingularTransform",
    "__version__",
]
