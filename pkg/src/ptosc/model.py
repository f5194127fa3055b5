"""Transformed-oscillator model.

The oscillator Hamiltonian (p^2 + x^2)/2 is rewritten in terms of the mixed
pair

    Y = x + i*lambda*p        (numerator of the transformed coordinate)
    R = p + i*beta*x          (numerator of the transformed momentum)

with the common normalization 1/sqrt(1 + lambda*beta) pulled out front, so

    H = 0.5 * L * (R^2 + Y^2),      L = 1/(1 + lambda*beta).

H is non-Hermitian but has purely real entries in the Fock basis.  Expressed
through ladder operators at basis frequency omega it splits into a number
part and a two-step part,

    H = diag_coeff*(2*a+a + 1) + (L/4)*(U*a^2 + V*(a+)^2),

and the frequency branches omega1 = (beta-1)/(1+lambda) (U = 0, needs
beta > 1) and omega2 = (1+beta)/(lambda-1) (V = 0, needs lambda > 1) make H
triangular with diagonal -(n + 1/2): the negative spectrum read off directly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, FrequencyDomainError, SingularTransform
from .fock import FockBasisSpec, OperatorMatrix, build_ladder, build_momentum, build_position

__all__ = [
    "TransformParams",
    "Mode",
    "FrequencyChoice",
    "CoefficientSet",
    "validate",
    "omega1",
    "omega2",
    "custom_frequency",
    "frequency_for_mode",
    "coefficients",
    "build_transformed_ops",
    "build_hamiltonian",
    "build_hamiltonian_split",
    "closed_form_spectrum",
]


@dataclass(frozen=True)
class TransformParams:
    """Mixing parameters of the coordinate/momentum transformation.

    ``lam`` mixes momentum into the coordinate, ``beta`` mixes coordinate
    into the momentum; both must be >= 0 and 1 + lam*beta must stay
    positive so the normalization sqrt(1 + lam*beta) is real.
    """

    lam: float
    beta: float
    scale: float = 1.0

    def __post_init__(self):
        if self.lam < 0 or self.beta < 0:
            raise DomainError(
                f"lambda and beta must be >= 0, got lambda={self.lam}, beta={self.beta}"
            )
        if 1.0 + self.lam * self.beta <= 0:
            raise SingularTransform(
                f"1 + lambda*beta must be > 0, got {1.0 + self.lam * self.beta}"
            )
        if not self.scale > 0:
            raise DomainError(f"scale must be > 0, got {self.scale}")


class Mode(enum.Enum):
    """Frequency-selection branch."""

    OMEGA1 = "omega1"  # zeroes the a^2 coefficient (U = 0)
    OMEGA2 = "omega2"  # zeroes the (a+)^2 coefficient (V = 0)
    CUSTOM = "custom"  # user-supplied basis frequency; H stays dense


@dataclass(frozen=True)
class FrequencyChoice:
    mode: Mode
    omega: float

    def __post_init__(self):
        if not self.omega > 0:
            raise FrequencyDomainError(f"omega must be > 0, got {self.omega}")


@dataclass(frozen=True)
class CoefficientSet:
    """Scalar coefficients of the Hamiltonian at one (params, omega) point.

    L          -- overall prefactor 1/(1 + lam*beta)
    diag_coeff -- coefficient of (2*a+a + 1); equals -1/2 on either
                  selected-frequency branch
    U          -- coefficient of a^2 (times L/4); zero at omega1
    V          -- coefficient of (a+)^2 (times L/4); zero at omega2;
                  U - V = 4*(lam + beta) identically
    f          -- ladder ratio -(lam+beta)/(1+lam*beta); the two-step part
                  reduces to f*(a+)^2 at omega1 and to (-f)*a^2 at omega2
    """

    L: float
    diag_coeff: float
    U: float
    V: float
    f: float


def validate(lam: float, beta: float, scale: float = 1.0) -> TransformParams:
    """Validate raw transformation parameters, raising structured errors."""
    return TransformParams(lam=lam, beta=beta, scale=scale)


def omega1(params: TransformParams) -> FrequencyChoice:
    """Frequency (beta-1)/(1+lambda) that kills the a^2 coefficient."""
    if params.beta <= 1.0:
        raise FrequencyDomainError(
            f"omega1 requires beta > 1: beta={params.beta} gives "
            f"(beta-1)/(1+lambda) = {(params.beta - 1.0) / (1.0 + params.lam)} <= 0"
        )
    return FrequencyChoice(Mode.OMEGA1, (params.beta - 1.0) / (1.0 + params.lam))


def omega2(params: TransformParams) -> FrequencyChoice:
    """Frequency (1+beta)/(lambda-1) that kills the (a+)^2 coefficient."""
    if params.lam <= 1.0:
        raise FrequencyDomainError(
            f"omega2 requires lambda > 1: lambda={params.lam} makes "
            f"(1+beta)/(lambda-1) non-positive or undefined"
        )
    return FrequencyChoice(Mode.OMEGA2, (1.0 + params.beta) / (params.lam - 1.0))


def custom_frequency(omega: float) -> FrequencyChoice:
    """A user-chosen basis frequency; neither ladder coefficient vanishes."""
    return FrequencyChoice(Mode.CUSTOM, omega)


def frequency_for_mode(params: TransformParams, mode: Mode, omega: float | None = None) -> FrequencyChoice:
    """Resolve a mode name (plus optional omega for CUSTOM) to a frequency."""
    if mode is Mode.OMEGA1:
        return omega1(params)
    if mode is Mode.OMEGA2:
        return omega2(params)
    if omega is None:
        raise FrequencyDomainError("custom mode requires an explicit omega")
    return custom_frequency(omega)


def coefficients(params: TransformParams, freq: FrequencyChoice) -> CoefficientSet:
    """Evaluate L, diag_coeff, U, V and f at one parameter point."""
    lam, beta, w = params.lam, params.beta, freq.omega
    one_plus = 1.0 + lam * beta
    base = -w * (1.0 - lam * lam) + (1.0 - beta * beta) / w
    return CoefficientSet(
        L=1.0 / one_plus,
        diag_coeff=((1.0 - lam * lam) * w + (1.0 - beta * beta) / w) / (4.0 * one_plus),
        U=base + 2.0 * (lam + beta),
        V=base - 2.0 * (lam + beta),
        f=-(lam + beta) / one_plus,
    )


def build_transformed_ops(
    params: TransformParams, freq: FrequencyChoice, n_basis: int
) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Matrices R = p + i*beta*x and Y = x + i*lambda*p.

    R has purely imaginary entries and Y purely real ones, exactly: x is
    real, p is imaginary, and multiplying by i swaps the two.
    """
    spec = FockBasisSpec(n_basis=n_basis, omega=freq.omega, scale=params.scale)
    x = build_position(spec)
    p = build_momentum(spec)
    r = OperatorMatrix(p.entries + 1j * params.beta * x.entries, label="R")
    y = OperatorMatrix(x.entries + 1j * params.lam * p.entries, label="Y")
    return r, y


def build_hamiltonian(
    params: TransformParams, freq: FrequencyChoice, n_basis: int
) -> OperatorMatrix:
    """H = 0.5 * L * (R^2 + Y^2); real entries, generally non-symmetric."""
    r, y = build_transformed_ops(params, freq, n_basis)
    ell = 1.0 / (1.0 + params.lam * params.beta)
    h = 0.5 * ell * (r.entries @ r.entries + y.entries @ y.entries)
    return OperatorMatrix(h, label="H")


def build_hamiltonian_split(
    params: TransformParams, freq: FrequencyChoice, n_basis: int
) -> OperatorMatrix:
    """H reassembled from its scalar coefficients in ladder form.

    diag_coeff*(2*a+a + 1) + (L/4)*(U*a^2 + V*(a+)^2).  Away from the
    two-wide truncation band this equals ``build_hamiltonian`` entrywise;
    at the basis edge the direct product form loses the last ladder
    coupling while this form does not.
    """
    spec = FockBasisSpec(n_basis=n_basis, omega=freq.omega, scale=params.scale)
    a, adag = build_ladder(spec)
    cs = coefficients(params, freq)
    number_part = cs.diag_coeff * (2.0 * (adag.entries @ a.entries) + np.eye(n_basis))
    two_step = (cs.L / 4.0) * (
        cs.U * (a.entries @ a.entries) + cs.V * (adag.entries @ adag.entries)
    )
    return OperatorMatrix(number_part + two_step, label="H_split")


def closed_form_spectrum(params: TransformParams, n: int) -> float:
    """Exact n-th eigenvalue -(n + 1/2) of the transformed oscillator.

    Expanding H gives A*p^2 + B*x^2 + C*(xp + px) with
    A*B - C^2 = 1/4 for every admissible (lam, beta), so the level spacing
    is exactly 1 independent of the parameters; on the branches that admit
    a positive selected frequency (beta > 1 or lambda > 1) the spectrum is
    the negative ladder.
    """
    if n < 0:
        raise DomainError(f"state index must be >= 0, got {n}")
    if not math.isfinite(params.lam + params.beta):
        raise DomainError("parameters must be finite")
    return -(n + 0.5)
