"""Backend selection for the search kernels.

The compiled extension is used when it imports and ``EDGEMATCH_PURE`` is not
set to ``1``.  Inputs too wide for 64-bit masks, and counts that overflow
64 bits, are routed to the pure-Python kernels transparently.
"""

from __future__ import annotations

import os

from . import _kernels_py

_native = None
if os.environ.get("EDGEMATCH_PURE") != "1":
    try:
        from . import _kernels as _native  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - depends on the build
        _native = None

BACKEND = "cython" if _native is not None else "python"
_MAX_BITS = 63


def backends() -> dict:
    """Available kernel modules by name."""
    out = {"python": _kernels_py}
    if _native is not None:
        out["cython"] = _native
    return out


def _pick(backend):
    if backend is None:
        return _native or _kernels_py
    return backends()[backend]


def strip_count(npos, start_opts, succ, final_ok, limit=0, nbits=0, backend=None):
    mod = _pick(backend)
    if mod is not _kernels_py and nbits <= _MAX_BITS:
        try:
            return mod.strip_count(npos, start_opts, succ, final_ok, limit)
        except OverflowError:
            pass
    return _kernels_py.strip_count(npos, start_opts, succ, final_ok, limit)


def ham_count(n, out_nbrs, start, end, cycle, backend=None):
    mod = _pick(backend)
    if mod is not _kernels_py:
        try:
            return mod.ham_count(n, out_nbrs, start, end, cycle)
        except OverflowError:
            pass
    return _kernels_py.ham_count(n, out_nbrs, start, end, cycle)


def trail_count(nedges, arcs, start, alternate, backend=None):
    mod = _pick(backend)
    if mod is not _kernels_py and nedges <= _MAX_BITS:
        try:
            return mod.trail_count(nedges, arcs, start, alternate)
        except OverflowError:
            pass
    return _kernels_py.trail_count(nedges, arcs, start, alternate)
