"""Hot kernels with a compiled backend and a pure-Python fallback.

The compiled module is used when importable unless ``DESIR_PURE_PYTHON`` is
set to a truthy value. ``get_backend`` returns either module explicitly.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # not built
    _ckernels = None

_FORCE_PURE = os.environ.get("DESIR_PURE_PYTHON", "").lower() in {"1", "true", "yes"}

if _ckernels is not None and not _FORCE_PURE:
    _impl: ModuleType = _ckernels
    BACKEND = "cython"
else:
    _impl = _pykernels
    BACKEND = "python"

OPTIMAL = _pykernels.OPTIMAL
UNBOUNDED = _pykernels.UNBOUNDED
ITERATION_CAP = _pykernels.ITERATION_CAP
FOUND = _pykernels.FOUND
EXHAUSTED = _pykernels.EXHAUSTED
NODE_CAP = _pykernels.NODE_CAP


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def get_backend(name: str | None = None) -> ModuleType:
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        if _ckernels is None:
            raise ImportError("compiled kernels are not built")
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


run_simplex = _impl.run_simplex
pivot = _impl.pivot
dominance_scan = _impl.dominance_scan
scaling_scan = _impl.scaling_scan
integer_search = _impl.integer_search
