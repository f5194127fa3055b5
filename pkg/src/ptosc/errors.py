"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """A parameter lies outside the supported domain."""


class SingularTransform(DomainError):
    """The coordinate/momentum mixing is degenerate: 1 + lambda*beta <= 0."""


class FrequencyDomainError(DomainError):
    """The requested frequency branch is undefined for these parameters."""


class ConvergenceError(RuntimeError):
    """The QR iteration failed to deflate an eigenvalue.

    ``index`` is the position (in the working matrix) that got stuck.
    """

    def __init__(self, index: int, sweeps: int):
        self.index = index
        self.sweeps = sweeps
        super().__init__(
            f"eigenvalue at index {index} failed to deflate after {sweeps} QR sweeps"
        )


class SingularShift(RuntimeError):
    """Inverse iteration hit an exactly singular shifted matrix twice."""


class BasisTooSmall(ValueError):
    """The truncated basis cannot hold the requested series plus headroom."""


class GridTooNarrow(ValueError):
    """The evaluation grid does not reach past the classical turning point."""


class DivergentSeriesWarning(UserWarning):
    """The series coefficients are growing; the expansion is not contracting."""
