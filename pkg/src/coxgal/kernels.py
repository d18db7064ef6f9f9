"""Backend selection for the hot kernels.

The compiled ``_kernels`` extension is used when it imports; otherwise (or
when ``COXGAL_PURE_PYTHON=1``) the pure-Python versions are used.
"""
from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("COXGAL_PURE_PYTHON") == "1":
    _impl = _pykernels
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND: str = _impl.BACKEND
rank_mod_p = _impl.rank_mod_p
charpoly_mod_p = _impl.charpoly_mod_p
weyl_orbit = _impl.weyl_orbit


def backends() -> dict[str, object]:
    """All importable backends keyed by name (for cross-checks and benchmarks)."""
    out: dict[str, object] = {"python": _pykernels}
    try:
        from . import _kernels  # type: ignore[attr-defined]

        out["cython"] = _kernels
    except ImportError:
        pass
    return out
