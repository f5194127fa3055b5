"""Dense eigenvalue solver for general complex matrices.

Shifted complex QR on the Hessenberg form, a read-off fast path for
(numerically) triangular input, inverse-iteration residual certification,
and a truncation-stability check that flags eigenvalues not reproduced by
the two-rows-smaller principal submatrix.  The latter matters for truncated
Fock-basis operators: products of ladder matrices corrupt the last rows of
the Hamiltonian, planting a spurious eigenvalue at -(n_basis - 1)/2 that a
residual test alone cannot reject (it is a genuine eigenvalue of the
truncated matrix, just not of the operator).

Eigenvalues are reported sorted by ascending |Re|, ties by ascending Im,
so the physical ladder -(n + 1/2) appears in table order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConvergenceError, SingularShift
from ..fock import TRUNCATION_BAND, OperatorMatrix
from ._backend import backend_name, kernels

__all__ = [
    "Method",
    "SpectralReport",
    "hessenberg_reduce",
    "qr_eigenvalues",
    "triangular_fast_path",
    "compute_spectrum",
    "eigenvector_inverse_iteration",
    "RESIDUAL_FACTOR",
    "STABLE_TOL",
]

#: trusted eigenvalues must have inverse-iteration residual <= factor * ||H||_F
RESIDUAL_FACTOR = 1e-8
#: eigenvalues moving more than this between n_basis and n_basis - 2 are
#: flagged as truncation artifacts (physical ladder spacing is 1)
STABLE_TOL = 1e-2

_EPS = float(np.finfo(np.float64).eps)


class Method(enum.Enum):
    QR = "qr"
    TRIANGULAR_FAST_PATH = "triangular_fast_path"


@dataclass(frozen=True)
class SpectralReport:
    """Sorted spectrum of one matrix plus certification metadata.

    eigenvalues   -- all n_basis values, sorted by (|Re|, Im)
    trusted_count -- length of the leading run that passed both the
                     residual and the stability check, capped at
                     ceil(n_basis / 2)
    iterations    -- QR sweeps spent (0 on the fast path)
    residuals     -- inverse-iteration residuals for the leading
                     ceil(n_basis / 2) eigenvalues, or None if not certified
    drifts        -- per-eigenvalue distance to the nearest eigenvalue of
                     the interior (n_basis - 2) submatrix, or None
    stable        -- boolean mask, False where drift exceeded STABLE_TOL
    """

    eigenvalues: np.ndarray
    n_basis: int
    trusted_count: int
    iterations: int
    method: Method
    residuals: np.ndarray | None = None
    drifts: np.ndarray | None = None
    stable: np.ndarray | None = None

    def stable_eigenvalues(self) -> np.ndarray:
        """Sorted eigenvalues with truncation artifacts removed."""
        if self.stable is None:
            return self.eigenvalues
        return self.eigenvalues[self.stable]


def _sort_spectrum(values: np.ndarray) -> np.ndarray:
    order = np.lexsort((values.imag, np.abs(values.real)))
    return values[order]


def _working_copy(h: OperatorMatrix) -> np.ndarray:
    return np.array(h.entries, dtype=np.complex128, order="C")


def hessenberg_reduce(h: OperatorMatrix, return_transform: bool = False):
    """Unitarily similar upper-Hessenberg form of ``h``.

    With ``return_transform=True`` also returns the accumulated unitary Q
    with Q @ Hess @ Q^H equal to the input (debug mode; always computed by
    the NumPy kernels since it is not performance relevant).
    """
    work = _working_copy(h)
    if return_transform:
        from . import _qr_py

        q = np.eye(h.dim, dtype=np.complex128)
        _qr_py.hessenberg(work, q)
        return OperatorMatrix(work, label=f"hess({h.label})"), q
    kernels().hessenberg(work)
    return OperatorMatrix(work, label=f"hess({h.label})")


def _inverse_iteration(a: np.ndarray, mu: complex, max_iter: int = 4) -> tuple[np.ndarray, float]:
    """Unit eigenvector estimate for the eigenvalue nearest ``mu``.

    LU-factors (a - mu*I) once and iterates; an exactly singular factor is
    retried once with a slightly perturbed shift before giving up.
    """
    kern = kernels()
    n = a.shape[0]
    fro = np.linalg.norm(a)
    shifted = a - mu * np.eye(n, dtype=np.complex128)
    piv = np.zeros(n, dtype=np.int64)
    if not kern.lu_factor(shifted, piv):
        bump = 64.0 * _EPS * max(fro, abs(mu), 1.0)
        shifted = a - (mu + bump) * np.eye(n, dtype=np.complex128)
        piv[:] = 0
        if not kern.lu_factor(shifted, piv):
            raise SingularShift(f"shifted matrix singular at mu={mu}")
    v = np.full(n, 1.0 / math.sqrt(n), dtype=np.complex128)
    best_v = v
    best_res = math.inf
    for _ in range(max_iter):
        w = v.copy()
        kern.lu_solve(shifted, piv, w)
        norm = np.linalg.norm(w)
        if norm == 0.0 or not np.isfinite(norm):
            break
        v = w / norm
        res = float(np.linalg.norm(a @ v - mu * v))
        if res < best_res:
            best_res = res
            best_v = v
        if res <= 8.0 * _EPS * fro:
            break
    return best_v, best_res


def eigenvector_inverse_iteration(h: OperatorMatrix, mu: complex) -> np.ndarray:
    """Unit-norm right eigenvector for the eigenvalue of ``h`` nearest ``mu``."""
    v, _ = _inverse_iteration(h.entries, mu)
    return v


def _raw_qr_eigenvalues(a: np.ndarray, max_sweeps_per_eig: int) -> tuple[np.ndarray, int]:
    """Sorted eigenvalues of a dense array via Hessenberg + shifted QR.

    Works on the transpose when the strictly lower triangle carries more
    mass: the spectrum is transpose-invariant, and near-(lower-)triangular
    input then deflates immediately instead of driving the iteration
    through an arbitrarily ill-conditioned regime.
    """
    n = a.shape[0]
    if n == 1:
        return a.astype(np.complex128).reshape(1), 0
    work = a
    if np.linalg.norm(np.tril(a, -1)) > np.linalg.norm(np.triu(a, 1)):
        work = a.T
    work = np.array(work, dtype=np.complex128, order="C")
    hnorm = float(np.linalg.norm(a))
    kern = kernels()
    kern.hessenberg(work)
    values, sweeps, stuck = kern.qr_eigvals(
        work, max_sweeps_per_eig, max_sweeps_per_eig * n, _EPS, hnorm
    )
    if stuck >= 0:
        raise ConvergenceError(index=int(stuck), sweeps=int(sweeps))
    return _sort_spectrum(values), int(sweeps)


def _certify(
    a: np.ndarray,
    values: np.ndarray,
    interior_values: np.ndarray | None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """Residuals, drifts, stability mask and trusted count for a spectrum.

    trusted_count is a prefix, so residuals are only computed up to (and
    including) the first eigenvalue that fails either check; each LU solve
    is O(n^3/3) and certifying the whole half would dominate large runs.
    """
    n = a.shape[0]
    limit = math.ceil(n / 2)
    fro = float(np.linalg.norm(a))

    drifts = np.full(n, np.inf)
    stable = np.zeros(n, dtype=bool)
    if interior_values is not None and interior_values.size:
        taken = np.zeros(interior_values.size, dtype=bool)
        for i, z in enumerate(values):
            dist = np.abs(interior_values - z)
            dist[taken] = np.inf
            j = int(np.argmin(dist))
            drifts[i] = dist[j]
            if dist[j] <= STABLE_TOL:
                taken[j] = True
                stable[i] = True

    threshold = RESIDUAL_FACTOR * fro
    residuals: list[float] = []
    trusted = 0
    for i in range(limit):
        _, res = _inverse_iteration(a, values[i])
        residuals.append(res)
        if res <= threshold and stable[i]:
            trusted += 1
        else:
            break
    return np.array(residuals), drifts, stable, trusted


def qr_eigenvalues(
    h: OperatorMatrix, max_sweeps_per_eig: int = 30, certify: bool = True
) -> SpectralReport:
    """Full spectrum of ``h`` by shifted QR with deflation.

    With ``certify=True`` (default) the leading half of the spectrum is
    backed by inverse-iteration residuals against the original matrix, and
    every eigenvalue is checked for truncation stability against the
    (dim - 2) principal submatrix; ``trusted_count`` is the leading run
    passing both.  Raises :class:`ConvergenceError` if a subdiagonal fails
    to deflate within the sweep budget.
    """
    values, sweeps = _raw_qr_eigenvalues(h.entries, max_sweeps_per_eig)
    n = h.dim
    if not certify:
        return SpectralReport(values, n, 0, sweeps, Method.QR)
    interior = None
    if n - TRUNCATION_BAND >= 1:
        interior, _ = _raw_qr_eigenvalues(
            h.entries[: n - TRUNCATION_BAND, : n - TRUNCATION_BAND], max_sweeps_per_eig
        )
    residuals, drifts, stable, trusted = _certify(h.entries, values, interior)
    return SpectralReport(values, n, trusted, sweeps, Method.QR, residuals, drifts, stable)


def _triangular_side(a: np.ndarray, band_tol: float) -> str | None:
    lower = np.abs(np.tril(a, -1)).max(initial=0.0)
    upper = np.abs(np.triu(a, 1)).max(initial=0.0)
    if upper <= band_tol:
        return "lower"
    if lower <= band_tol:
        return "upper"
    return None


def default_band_tol(a: np.ndarray) -> float:
    """Entries below dim * eps * ||A||_F are treated as a zero band."""
    return a.shape[0] * _EPS * float(np.linalg.norm(a))


def triangular_fast_path(
    h: OperatorMatrix, band_tol: float | None = None, certify: bool = True
) -> SpectralReport | None:
    """Diagonal read-off when one strict triangle is below ``band_tol``.

    Returns None when the matrix is not numerically triangular.
    """
    a = h.entries
    tol = default_band_tol(a) if band_tol is None else band_tol
    if _triangular_side(a, tol) is None:
        return None
    values = _sort_spectrum(np.ascontiguousarray(np.diag(a)))
    n = h.dim
    if not certify:
        return SpectralReport(values, n, 0, 0, Method.TRIANGULAR_FAST_PATH)
    interior = None
    m = n - TRUNCATION_BAND
    if m >= 1:
        interior = _sort_spectrum(np.ascontiguousarray(np.diag(a)[:m]))
    residuals, drifts, stable, trusted = _certify(a, values, interior)
    return SpectralReport(
        values, n, trusted, 0, Method.TRIANGULAR_FAST_PATH, residuals, drifts, stable
    )


def compute_spectrum(
    h: OperatorMatrix,
    method: str = "auto",
    band_tol: float | None = None,
    max_sweeps_per_eig: int = 30,
    certify: bool = True,
) -> SpectralReport:
    """Spectrum via the requested route.

    ``auto`` tries the triangular read-off first and falls back to QR;
    ``qr`` and ``triangular`` force one route (the latter raises ValueError
    on a dense matrix).
    """
    if method not in ("auto", "qr", "triangular"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("auto", "triangular"):
        report = triangular_fast_path(h, band_tol=band_tol, certify=certify)
        if report is not None:
            return report
        if method == "triangular":
            raise ValueError("matrix is not numerically triangular")
    return qr_eigenvalues(h, max_sweeps_per_eig=max_sweeps_per_eig, certify=certify)


def solver_backend() -> str:
    """Expose the kernel backend for report metadata."""
    return backend_name()
