"""Scan kernel backends.

Two interchangeable implementations of the subset-check kernels live here:
``_native`` (Cython) and ``vector`` (numpy). The native one is picked by
default when its extension module imported cleanly; ``PARITY_RAMSEY_BACKEND``
overrides the choice, and callers may pin one explicitly (the benchmark runs
both and compares).
"""
from __future__ import annotations

import os

from ..errors import ConfigurationError
from . import vector

try:
    from . import _native
except ImportError:  # pragma: no cover - depends on the build environment
    _native = None

_BACKENDS = {"vector": vector}
if _native is not None:
    _BACKENDS["native"] = _native


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def get_backend(name: str | None = None):
    """Resolve a backend module by name, or the default when name is None."""
    if name is None:
        name = os.environ.get("PARITY_RAMSEY_BACKEND") or (
            "native" if "native" in _BACKENDS else "vector"
        )
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown kernel backend {name!r}; available: {', '.join(available_backends())}"
        ) from None


DEFAULT_BACKEND = get_backend().BACKEND_NAME
