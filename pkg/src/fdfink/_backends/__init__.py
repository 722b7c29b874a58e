"""Kernel backend selection.

``pure`` (NumPy) is always available; ``_fast`` is the Cython extension
built at install time. The active backend is chosen once at import and
can be forced with ``FDF_BACKEND=python`` or ``FDF_BACKEND=cython``.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import pure

try:
    from . import _fast
except ImportError:
    _fast = None

_BACKENDS = {"python": pure}
if _fast is not None:
    _BACKENDS["cython"] = _fast


def _initial() -> str:
    requested = os.environ.get("FDF_BACKEND", "").strip().lower()
    if requested:
        if requested not in _BACKENDS:
            raise RuntimeError(
                f"FDF_BACKEND={requested!r} is not available; "
                f"choices: {', '.join(sorted(_BACKENDS))}"
            )
        return requested
    return "cython" if "cython" in _BACKENDS else "python"


_active = _initial()


def kernels():
    """The module providing the active numeric kernels."""
    return _BACKENDS[_active]


def active_backend() -> str:
    return _active


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def set_backend(name: str) -> None:
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choices: {', '.join(sorted(_BACKENDS))}")
    _active = name


@contextmanager
def using_backend(name: str):
    """Temporarily switch kernels (benchmarks and tests)."""
    previous = _active
    set_backend(name)
    try:
        yield _BACKENDS[name]
    finally:
        set_backend(previous)
