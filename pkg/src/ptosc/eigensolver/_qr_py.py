"""Pure NumPy eigensolver kernels.

Reference implementations of the hot loops; the Cython module ``_qr_cy``
mirrors these signatures exactly.  All kernels work in place on complex128
arrays.  Row/column updates are vectorized slices, so the per-sweep cost is
O(window) Python iterations rather than O(window^2).
"""

from __future__ import annotations

import numpy as np


def hessenberg(h: np.ndarray, q: np.ndarray | None = None) -> None:
    """Reduce ``h`` to upper Hessenberg form in place by Householder reflectors.

    If ``q`` (an identity-initialized (n, n) complex array) is given, the
    accumulated unitary transform is written into it so that
    ``q @ h_out @ q.conj().T`` reconstructs the input.
    """
    n = h.shape[0]
    for k in range(n - 2):
        col = h[k + 1 :, k]
        if not np.any(col[1:]):
            continue  # column already in Hessenberg form; transform is identity
        norm = np.linalg.norm(col)
        x0 = col[0]
        phase = x0 / abs(x0) if x0 != 0.0 else 1.0
        alpha = -phase * norm
        v = col.copy()
        v[0] -= alpha
        vnorm = np.linalg.norm(v)
        if vnorm == 0.0:
            continue
        v /= vnorm
        # similarity transform by I - 2 v v^H on the trailing block
        h[k + 1 :, k + 1 :] -= 2.0 * np.outer(v, v.conj() @ h[k + 1 :, k + 1 :])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, v.conj())
        h[k + 1, k] = alpha
        h[k + 2 :, k] = 0.0
        if q is not None:
            q[:, k + 1 :] -= 2.0 * np.outer(q[:, k + 1 :] @ v, v.conj())


def _csqrt(z: complex) -> complex:
    return complex(z) ** 0.5


def _eig2x2(a: complex, b: complex, c: complex, d: complex) -> tuple[complex, complex]:
    """Eigenvalues of [[a, b], [c, d]], trace-preserving.

    The larger-magnitude root is taken from the quadratic formula with the
    cancellation-free sign; the second root is trace minus the first.
    """
    tr = a + d
    s = _csqrt((a - d) * (a - d) + 4.0 * b * c)
    if abs(tr + s) < abs(tr - s):
        s = -s
    z1 = 0.5 * (tr + s)
    return z1, tr - z1


def _wilkinson(a: complex, b: complex, c: complex, d: complex) -> complex:
    """Trailing-2x2 eigenvalue closest to d."""
    z1, z2 = _eig2x2(a, b, c, d)
    return z1 if abs(z1 - d) <= abs(z2 - d) else z2


def qr_eigvals(
    h: np.ndarray,
    max_sweeps_per_eig: int,
    max_total_sweeps: int,
    eps: float,
    hnorm: float,
) -> tuple[np.ndarray, int, int]:
    """Shifted QR eigenvalues of an upper Hessenberg matrix, in place.

    Explicit single-shift (Wilkinson) QR via Givens rotations on the active
    trailing block, with subdiagonal deflation
    |h[k+1,k]| <= eps * max(|h[k,k]| + |h[k+1,k+1]|, hnorm) and an
    exceptional shift every tenth stagnant sweep.  Isolated 2x2 blocks are
    solved directly.  The norm floor in the deflation test caps absolute
    accuracy at eps*hnorm but is what lets near-triangular non-normal
    input deflate instead of being churned by sweeps that its eigenvalue
    conditioning cannot survive.

    Returns (eigenvalues in deflation order, total sweeps, stuck index);
    stuck index is -1 on success, else the diagonal position that failed to
    deflate within its sweep budget.
    """
    n = h.shape[0]
    eigs = np.empty(n, dtype=np.complex128)
    galpha = np.empty(n, dtype=np.complex128)
    gsigma = np.empty(n, dtype=np.complex128)
    hi = n - 1
    total = 0
    stagnant = 0

    def _negligible(k: int) -> bool:
        return abs(h[k + 1, k]) <= eps * max(abs(h[k, k]) + abs(h[k + 1, k + 1]), hnorm)

    while hi >= 0:
        if hi == 0:
            eigs[0] = h[0, 0]
            break
        if _negligible(hi - 1):
            h[hi, hi - 1] = 0.0
            eigs[hi] = h[hi, hi]
            hi -= 1
            stagnant = 0
            continue
        lo = 0
        for k in range(hi - 1, 0, -1):
            if _negligible(k - 1):
                h[k, k - 1] = 0.0
                lo = k
                break
        if lo == hi - 1:
            z1, z2 = _eig2x2(h[lo, lo], h[lo, hi], h[hi, lo], h[hi, hi])
            eigs[hi] = z1
            eigs[lo] = z2
            hi = lo - 1
            stagnant = 0
            continue
        if total >= max_total_sweeps or stagnant >= max_sweeps_per_eig:
            return eigs, total, hi

        stagnant += 1
        total += 1
        if stagnant % 10 == 0:
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            mu = _wilkinson(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])

        for k in range(lo, hi + 1):
            h[k, k] -= mu
        # QR factorization: rotations G_k zero the subdiagonal top-down
        for k in range(lo, hi):
            a = h[k, k]
            b = h[k + 1, k]
            t = np.hypot(abs(a), abs(b))
            if t == 0.0:
                galpha[k] = 1.0
                gsigma[k] = 0.0
                continue
            ga = np.conj(a) / t
            gs = np.conj(b) / t
            galpha[k] = ga
            gsigma[k] = gs
            h[k, k] = t
            h[k + 1, k] = 0.0
            u = h[k, k + 1 : hi + 1].copy()
            w = h[k + 1, k + 1 : hi + 1]
            h[k, k + 1 : hi + 1] = ga * u + gs * w
            h[k + 1, k + 1 : hi + 1] = -np.conj(gs) * u + np.conj(ga) * w
        # RQ: apply the conjugate rotations on columns, restoring Hessenberg
        for k in range(lo, hi):
            ga = galpha[k]
            gs = gsigma[k]
            top = min(k + 1, hi) + 1
            u = h[lo:top, k].copy()
            w = h[lo:top, k + 1]
            h[lo:top, k] = u * np.conj(ga) + w * np.conj(gs)
            h[lo:top, k + 1] = -u * gs + w * ga
        for k in range(lo, hi + 1):
            h[k, k] += mu
    return eigs, total, -1


def lu_factor(a: np.ndarray, piv: np.ndarray) -> int:
    """In-place LU with partial pivoting; piv[k] = row swapped into k.

    Returns 1 on success, 0 when an exactly zero pivot is hit (matrix
    numerically singular at working precision).
    """
    n = a.shape[0]
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        piv[k] = p
        if a[p, k] == 0.0:
            return 0
        if p != k:
            a[[k, p], :] = a[[p, k], :]
        a[k + 1 :, k] /= a[k, k]
        a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k], a[k, k + 1 :])
    return 1


def lu_solve(a: np.ndarray, piv: np.ndarray, b: np.ndarray) -> None:
    """Solve L U x = P b in place, with (a, piv) from ``lu_factor``."""
    n = a.shape[0]
    for k in range(n):
        p = piv[k]
        if p != k:
            b[k], b[p] = b[p], b[k]
    for k in range(n - 1):
        b[k + 1 :] -= a[k + 1 :, k] * b[k]
    for k in range(n - 1, -1, -1):
        b[k] /= a[k, k]
        b[:k] -= a[:k, k] * b[k]
