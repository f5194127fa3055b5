"""Rayleigh-Schrodinger machinery for the transformed oscillator.

At a selected frequency the off-diagonal part of the Hamiltonian steps
strictly one way in the Fock ladder (raising only at omega1, lowering only
at omega2), so every energy correction contains a matrix element that is
identically zero.  The corrections here are nevertheless computed by
actually summing the textbook order-1/2/3 formulas with the full two-sided
coupling at the evaluation frequency, so the vanishing is a result, not an
assumption, and detuning omega produces honest nonzero values.

The eigenvector series built on the same structure has coefficients

    omega1:  c_k = f * c_{k-1} * sqrt((n+2k)(n+2k-1)) / (2k)
    omega2:  c_k = f * c_{k-1} * sqrt((n-2k+2)(n-2k+1)) / (2k)

with f = -(lam+beta)/(1+lam*beta) and c_0 = 1; the omega2 series terminates
after floor(n/2) steps because double lowering annihilates the bottom of
the ladder, giving an exact finite eigenvector of the truncated matrix.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BasisTooSmall, DivergentSeriesWarning, DomainError
from .model import (
    CoefficientSet,
    FrequencyChoice,
    Mode,
    TransformParams,
    build_hamiltonian,
    coefficients,
    frequency_for_mode,
)

__all__ = [
    "PerturbationReport",
    "SeriesWavefunction",
    "hn_element",
    "correction",
    "series_coefficients",
    "overlap_identities",
    "eigen_residual",
    "perturbation_report",
]


@dataclass(frozen=True)
class PerturbationReport:
    """Zeroth-order energy and the explicitly summed corrections."""

    n: int
    mode: Mode
    epsilon0: float
    corrections: tuple[float, ...]
    k_max: int


@dataclass(frozen=True)
class SeriesWavefunction:
    """Fock-space expansion coefficients of one eigenvector series.

    ``coeffs[k]`` multiplies the state n + 2k (omega1) or n - 2k (omega2);
    ``terminated`` marks an omega2 series that reached its natural end at
    k = floor(n/2).
    """

    n: int
    mode: Mode
    omega: float
    coeffs: tuple[float, ...]
    k_max: int
    terminated: bool

    def fock_index(self, k: int) -> int:
        return self.n + 2 * k if self.mode is Mode.OMEGA1 else self.n - 2 * k

    def top_index(self) -> int:
        """Highest Fock state carrying a coefficient."""
        if self.mode is Mode.OMEGA1:
            return self.n + 2 * (len(self.coeffs) - 1)
        return self.n


def _mode_frequency(params: TransformParams, mode: Mode, omega: float | None) -> FrequencyChoice:
    if mode not in (Mode.OMEGA1, Mode.OMEGA2):
        raise DomainError("perturbation structure is defined for omega1/omega2 modes")
    if omega is None:
        return frequency_for_mode(params, mode)
    return FrequencyChoice(mode, omega)


def hn_element(params: TransformParams, mode: Mode, row: int, col: int) -> float:
    """<row| H_N |col> of the one-way coupling at the selected frequency.

    omega1: f*(a+)^2, nonzero only for row = col + 2;
    omega2: (-f)*a^2, nonzero only for row = col - 2.
    """
    if row < 0 or col < 0:
        raise DomainError("Fock indices must be >= 0")
    cs = coefficients(params, _mode_frequency(params, mode, None))
    if mode is Mode.OMEGA1:
        if row == col + 2:
            return cs.f * math.sqrt((col + 1) * (col + 2))
        return 0.0
    if row == col - 2:
        return -cs.f * math.sqrt(col * (col - 1))
    return 0.0


def _full_element(cs: CoefficientSet, row: int, col: int) -> float:
    """<row| H_N |col> with both couplings kept, for arbitrary omega."""
    val = 0.0
    if row == col - 2:
        val += cs.U * math.sqrt(col * (col - 1)) * cs.L / 4.0
    if row == col + 2:
        val += cs.V * math.sqrt((col + 1) * (col + 2)) * cs.L / 4.0
    return val


def correction(
    params: TransformParams,
    mode: Mode,
    n: int,
    order: int,
    omega: float | None = None,
) -> float:
    """Energy correction of the given order by explicit summation.

    Sums the standard perturbation series over all intermediate states of a
    basis sized to hold every structurally reachable state.  At the mode
    frequency each term carries a vanishing one-way element; passing a
    detuned ``omega`` turns on the second coupling and order 2 becomes
    nonzero, which is what makes the vanishing testable.
    """
    if order not in (1, 2, 3):
        raise DomainError(f"explicit formulas cover orders 1..3, got {order}")
    if n < 0:
        raise DomainError("state index must be >= 0")
    freq = _mode_frequency(params, mode, omega)
    cs = coefficients(params, freq)
    n_basis = n + 2 * order + 4

    def e0(k: int) -> float:
        return cs.diag_coeff * (2 * k + 1)

    def elem(r: int, c: int) -> float:
        return _full_element(cs, r, c)

    def gap(k: int) -> float:
        d = e0(n) - e0(k)
        if d == 0.0:
            raise DomainError(f"degenerate unperturbed levels {n} and {k} at omega={freq.omega}")
        return d

    if order == 1:
        return elem(n, n)
    if order == 2:
        total = 0.0
        for k in range(n_basis):
            if k == n:
                continue
            num = elem(n, k) * elem(k, n)
            if num != 0.0:
                total += num / gap(k)
        return total
    total = 0.0
    for p in range(n_basis):
        if p == n:
            continue
        left = elem(n, p)
        if left == 0.0:
            continue
        for q in range(n_basis):
            if q == n:
                continue
            num = left * elem(p, q) * elem(q, n)
            if num != 0.0:
                total += num / (gap(p) * gap(q))
    first_order = elem(n, n)
    if first_order != 0.0:
        for p in range(n_basis):
            if p == n:
                continue
            num = elem(n, p) * elem(p, n)
            if num != 0.0:
                total -= first_order * num / gap(p) ** 2
    return total


def series_coefficients(
    params: TransformParams, mode: Mode, n: int, k_max: int
) -> SeriesWavefunction:
    """Series coefficients c_0..c_K from the eigenvalue recurrence.

    For omega1 the expansion contracts only when |f| < 1; at |f| >= 1, or
    whenever |c_k| grows for three consecutive steps, a
    DivergentSeriesWarning is issued (computation still proceeds, matching
    how the finite truncations are used).
    """
    if n < 0 or k_max < 0:
        raise DomainError("need n >= 0 and k_max >= 0")
    freq = _mode_frequency(params, mode, None)
    cs = coefficients(params, freq)
    f = cs.f
    terminated = False
    coeffs = [1.0]
    if mode is Mode.OMEGA1:
        if abs(f) >= 1.0 - 1e-9 and k_max > 8:
            warnings.warn(
                f"|f| = {abs(f):.6g} >= 1: omega1 series does not contract",
                DivergentSeriesWarning,
                stacklevel=2,
            )
        for k in range(1, k_max + 1):
            coeffs.append(coeffs[-1] * f * math.sqrt((n + 2 * k) * (n + 2 * k - 1)) / (2 * k))
    else:
        k_cap = min(k_max, n // 2)
        for k in range(1, k_cap + 1):
            coeffs.append(coeffs[-1] * f * math.sqrt((n - 2 * k + 2) * (n - 2 * k + 1)) / (2 * k))
        terminated = k_cap == n // 2
    growth = 0
    for k in range(1, len(coeffs)):
        growth = growth + 1 if abs(coeffs[k]) > abs(coeffs[k - 1]) else 0
        if growth >= 3:
            warnings.warn(
                f"series coefficients grew for {growth} consecutive orders "
                f"(n={n}, mode={mode.value}, |f|={abs(f):.6g})",
                DivergentSeriesWarning,
                stacklevel=2,
            )
            break
    return SeriesWavefunction(
        n=n,
        mode=mode,
        omega=freq.omega,
        coeffs=tuple(coeffs),
        k_max=len(coeffs) - 1,
        terminated=terminated,
    )


def _series_vector(series: SeriesWavefunction, n_basis: int) -> np.ndarray:
    k_used = len(series.coeffs) - 1
    if series.n + 2 * k_used + 2 >= n_basis:
        raise BasisTooSmall(
            f"need n_basis > n + 2*k + 2 = {series.n + 2 * k_used + 2}, got {n_basis}"
        )
    v = np.zeros(n_basis)
    for k, c in enumerate(series.coeffs):
        v[series.fock_index(k)] = c
    return v


def _auto_basis(n: int, k_max: int) -> int:
    return n + 2 * k_max + 4


def overlap_identities(
    params: TransformParams,
    mode: Mode,
    n: int,
    k_max: int,
    n_basis: int | None = None,
) -> tuple[float, float]:
    """Projection overlaps (<psi_n|Psi>, <psi_n|H|Psi>) of the series.

    The first is exactly c_0 = 1 by construction; the second equals
    -(n + 1/2) for every truncation order because the one-way coupling
    moves strictly away from <psi_n|.
    """
    series = series_coefficients(params, mode, n, k_max)
    if n_basis is None:
        n_basis = _auto_basis(n, k_max)
    v = _series_vector(series, n_basis)
    h = build_hamiltonian(params, _mode_frequency(params, mode, None), n_basis)
    norm_overlap = float(v[n])
    energy_overlap = float((h.entries.real @ v)[n])
    return norm_overlap, energy_overlap


def eigen_residual(
    params: TransformParams,
    mode: Mode,
    n: int,
    k_max: int,
    n_basis: int | None = None,
) -> float:
    """||H v - (-(n+1/2)) v|| / ||v|| for the truncated series vector.

    Zero (to roundoff) for a terminated omega2 series; for omega1 the only
    uncancelled term is the single overshoot past the last kept state, so
    the residual shrinks with k_max whenever the series contracts.
    """
    series = series_coefficients(params, mode, n, k_max)
    if n_basis is None:
        n_basis = _auto_basis(n, k_max)
    v = _series_vector(series, n_basis)
    h = build_hamiltonian(params, _mode_frequency(params, mode, None), n_basis)
    r = h.entries.real @ v - (-(n + 0.5)) * v
    return float(np.linalg.norm(r) / np.linalg.norm(v))


def perturbation_report(
    params: TransformParams, mode: Mode, n: int, k_max: int = 3
) -> PerturbationReport:
    """Corrections of orders 1..k_max plus the zeroth-order energy."""
    if not 1 <= k_max <= 3:
        raise DomainError("explicit correction formulas cover orders 1..3")
    freq = _mode_frequency(params, mode, None)
    cs = coefficients(params, freq)
    eps0 = cs.diag_coeff * (2 * n + 1)
    corr = tuple(correction(params, mode, n, order) for order in range(1, k_max + 1))
    return PerturbationReport(n=n, mode=mode, epsilon0=eps0, corrections=corr, k_max=k_max)
