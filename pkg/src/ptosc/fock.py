"""Truncated Fock-basis operator algebra.

Ladder, position and momentum operators for one bosonic mode, kept as dense
complex matrices over the lowest ``n_basis`` number states.  Truncation
corrupts operator identities only near the basis edge: [a, a+] fails in the
single corner entry, and products of two ladder operators corrupt a band of
width two, so identity checks exclude the last two rows/columns.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "FockBasisSpec",
    "OperatorMatrix",
    "build_ladder",
    "build_position",
    "build_momentum",
    "commutator",
    "dense_product",
    "dense_axpy",
]

#: rows/columns at the basis edge where two-ladder products are corrupted
TRUNCATION_BAND = 2


@dataclass(frozen=True)
class FockBasisSpec:
    """Size and scales of the truncated number basis.

    Parameters
    ----------
    n_basis : int
        Number of retained Fock states, at least 2.
    omega : float
        Basis frequency, > 0.  This is a basis parameter, not a physical
        observable; operators built at different omega are related by a
        Bogoliubov-type rescaling.
    scale : float
        Length scale entering x and p symmetrically, > 0.
    """

    n_basis: int
    omega: float = 1.0
    scale: float = 1.0

    def __post_init__(self):
        if int(self.n_basis) != self.n_basis or self.n_basis < 2:
            raise DomainError(f"n_basis must be an integer >= 2, got {self.n_basis}")
        if not self.omega > 0:
            raise DomainError(f"omega must be > 0, got {self.omega}")
        if not self.scale > 0:
            raise DomainError(f"scale must be > 0, got {self.scale}")


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense square complex matrix with a provenance label.

    Entries are stored as a read-only complex128 array; all operations are
    pure functions returning new matrices, so values can be shared freely
    across threads.
    """

    entries: np.ndarray
    label: str = ""

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.complex128, order="C")
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"operator must be a square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"operator {self.label!r} contains non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def conj_transpose(self) -> "OperatorMatrix":
        return OperatorMatrix(self.entries.conj().T, label=self.label + "+")


def build_ladder(spec: FockBasisSpec) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Annihilation and creation matrices (a, a+).

    a carries sqrt(1), ..., sqrt(N-1) on its first superdiagonal and a+ is
    its exact conjugate transpose.
    """
    off = np.sqrt(np.arange(1, spec.n_basis, dtype=np.float64))
    a = np.diag(off, 1).astype(np.complex128)
    lower = OperatorMatrix(a, label="a")
    return lower, lower.conj_transpose()


def build_position(spec: FockBasisSpec) -> OperatorMatrix:
    """Position operator x = scale * (a + a+) / sqrt(2*omega); real symmetric."""
    off = np.sqrt(np.arange(1, spec.n_basis, dtype=np.float64))
    coef = spec.scale / np.sqrt(2.0 * spec.omega)
    x = coef * (np.diag(off, 1) + np.diag(off, -1))
    return OperatorMatrix(x.astype(np.complex128), label="x")


def build_momentum(spec: FockBasisSpec) -> OperatorMatrix:
    """Momentum operator p = i * sqrt(omega/2) * (a+ - a) / scale.

    Hermitian with purely imaginary entries: +i*c on the subdiagonal,
    -i*c on the superdiagonal.
    """
    off = np.sqrt(np.arange(1, spec.n_basis, dtype=np.float64))
    coef = np.sqrt(spec.omega / 2.0) / spec.scale
    p = 1j * coef * (np.diag(off, -1) - np.diag(off, 1))
    return OperatorMatrix(p, label="p")


def _check_same_dim(a: OperatorMatrix, b: OperatorMatrix) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def commutator(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """[A, B] = AB - BA."""
    _check_same_dim(a, b)
    ent = a.entries @ b.entries - b.entries @ a.entries
    return OperatorMatrix(ent, label=f"[{a.label},{b.label}]")


def dense_product(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """Exact dense matrix product AB, no hidden normalization."""
    _check_same_dim(a, b)
    return OperatorMatrix(a.entries @ b.entries, label=f"{a.label}{b.label}")


def dense_axpy(alpha: complex, a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """alpha * A + B."""
    _check_same_dim(a, b)
    return OperatorMatrix(alpha * a.entries + b.entries, label=f"{alpha}*{a.label}+{b.label}")
