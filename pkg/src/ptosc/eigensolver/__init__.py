"""Dense eigensolver subpackage.

The algorithms live in :mod:`ptosc.eigensolver.solver`; the inner loops are
provided twice, as a compiled Cython extension (``_qr_cy``) and as pure
NumPy reference kernels (``_qr_py``), selected at import time.  See
``benchmarks/bench_eigensolver.py`` for a side-by-side timing.
"""

from ._backend import available_backends, backend_name, use_backend
from .solver import (
    RESIDUAL_FACTOR,
    STABLE_TOL,
    Method,
    SpectralReport,
    compute_spectrum,
    default_band_tol,
    eigenvector_inverse_iteration,
    hessenberg_reduce,
    qr_eigenvalues,
    triangular_fast_path,
)

__all__ = [
    "Method",
    "SpectralReport",
    "available_backends",
    "backend_name",
    "use_backend",
    "compute_spectrum",
    "default_band_tol",
    "eigenvector_inverse_iteration",
    "hessenberg_reduce",
    "qr_eigenvalues",
    "triangular_fast_path",
    "RESIDUAL_FACTOR",
    "STABLE_TOL",
]
