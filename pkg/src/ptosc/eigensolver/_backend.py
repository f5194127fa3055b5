"""Kernel backend selection: compiled extension if available, NumPy otherwise.

The two kernel modules implement the same algorithms with the same
operation order; ``PTOSC_BACKEND=py`` (or ``cy``) forces a choice at import
time, and :func:`use_backend` switches temporarily for tests and benchmarks.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _qr_py

_BACKENDS = {"py": _qr_py}

try:
    from . import _qr_cy

    _BACKENDS["cy"] = _qr_cy
except ImportError:
    _qr_cy = None

_env = os.environ.get("PTOSC_BACKEND", "").strip().lower()
if _env and _env not in _BACKENDS:
    raise ImportError(
        f"PTOSC_BACKEND={_env!r} is not available; choices: {sorted(_BACKENDS)}"
    )
_active_name = _env or ("cy" if "cy" in _BACKENDS else "py")


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def backend_name() -> str:
    """Name of the kernel set currently in use ('cy' or 'py')."""
    return _active_name


def kernels():
    """The active kernel module."""
    return _BACKENDS[_active_name]


@contextmanager
def use_backend(name: str):
    """Temporarily switch kernels; not safe to interleave across threads."""
    global _active_name
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choices: {sorted(_BACKENDS)}")
    previous = _active_name
    _active_name = name
    try:
        yield
    finally:
        _active_name = previous
