"""Backend selection for the enumeration kernels.

The compiled extension is used when importable; ``ZETAFORGE_PURE=1``
forces the pure-Python backend.  Both expose ``fq_scan``, ``fq_values``
and ``zmod_lift`` with identical results.
"""
from __future__ import annotations

import os

from . import _pykernels

python_backend = _pykernels
compiled_backend = None

try:
    from . import _ckernels as compiled_backend  # type: ignore[no-redef]
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and not os.environ.get("ZETAFORGE_PURE"):
    default_backend = compiled_backend
else:
    default_backend = python_backend


def get_backend(name: str | None = None):
    if name is None:
        return default_backend
    if name == "python":
        return python_backend
    if name in ("cython", "compiled"):
        if compiled_backend is None:
            raise RuntimeError("compiled kernels are not built")
        return compiled_backend
    raise ValueError(f"unknown kernel backend {name!r}")


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if compiled_backend is not None else [])
