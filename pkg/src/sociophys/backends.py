"""Compute-kernel backend selection.

The hot paths (cascade propagation, exhaustive search, the tree DP fill) exist
twice: numba-accelerated in ``_kernels_numba`` and as line-for-line pure-numpy
twins in ``_kernels_numpy``.  Both produce bit-identical results; only speed
differs.  The active backend is chosen by the ``SOCIOPHYS_BACKEND`` environment
variable ("numba" or "numpy"), defaulting to numba when it imports, and can be
switched at runtime (tests and the backend benchmark do).
"""

from __future__ import annotations

import os
import warnings
from contextlib import contextmanager

from .errors import ContractError

ENV_VAR = "SOCIOPHYS_BACKEND"
BACKENDS = ("numba", "numpy")

_active: str | None = None


def _numba_importable() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _from_environment() -> str:
    requested = os.environ.get(ENV_VAR, "").strip().lower()
    if not requested:
        if _numba_importable():
            return "numba"
        warnings.warn("numba is not importable; falling back to the numpy backend")
        return "numpy"
    if requested not in BACKENDS:
        raise ContractError(
            f"{ENV_VAR}={requested!r} is not a known backend; choose from {BACKENDS}"
        )
    if requested == "numba" and not _numba_importable():
        raise ContractError(f"{ENV_VAR}=numba requested but numba is not importable")
    return requested


def active_backend() -> str:
    """Name of the backend currently in effect."""
    global _active
    if _active is None:
        _active = _from_environment()
    return _active


def set_backend(name: str) -> None:
    """Switch backends at runtime (overrides the environment choice)."""
    global _active
    if name not in BACKENDS:
        raise ContractError(f"unknown backend {name!r}; choose from {BACKENDS}")
    if name == "numba" and not _numba_importable():
        raise ContractError("backend 'numba' requested but numba is not importable")
    _active = name


@contextmanager
def use_backend(name: str):
    """Temporarily run under a specific backend."""
    previous = active_backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def kernels():
    """The kernel module for the active backend."""
    if active_backend() == "numba":
        from . import _kernels_numba as mod
    else:
        from . import _kernels_numpy as mod
    return mod
