"""Kernel backend selection.

The compiled core is used when it imports and ``VORONOIFAN_PURE_PYTHON`` is
unset; otherwise the pure-Python kernels. Inputs too large for the compiled
core's 64-bit arithmetic are always routed to Python.
"""
from __future__ import annotations

import os

from . import _kernels_py

_compiled = None
if not os.environ.get("VORONOIFAN_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:  # pragma: no cover - depends on the build
        _compiled = None

BACKEND = _compiled.BACKEND if _compiled is not None else _kernels_py.BACKEND

# keeps every product and partial sum well inside int64
_GRAM_LIMIT = 1 << 20
_BOUND_LIMIT = 1 << 40


def has_compiled() -> bool:
    return _compiled is not None


def short_vectors(gram, bound, backend: str | None = None):
    mod = _pick(backend)
    if mod is _compiled:
        if int(bound) > _BOUND_LIMIT or any(abs(v) > _GRAM_LIMIT for r in gram for v in r):
            mod = _kernels_py
    return mod.short_vectors(gram, bound)


def box_scan(lo, hi, height, level, ineqs, eqs, backend: str | None = None):
    mod = _pick(backend)
    if mod is _compiled:
        big = max([abs(v) for v in list(lo) + list(hi)] or [0])
        coef = max([abs(v) for r in list(ineqs) + list(eqs) + [height] for v in r] or [0])
        if big * coef * max(len(lo), 1) > _BOUND_LIMIT or abs(int(level)) > _BOUND_LIMIT:
            mod = _kernels_py
    return mod.box_scan(lo, hi, height, level, ineqs, eqs)


def _pick(backend):
    if backend == "python":
        return _kernels_py
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    return _compiled if _compiled is not None else _kernels_py


def adjacent_pairs(masks, pos, neg, need: int, backend: str | None = None):
    mod = _pick(backend)
    if mod is _compiled and any(m >> 64 for m in masks):
        mod = _kernels_py
    return mod.adjacent_pairs(masks, pos, neg, need)
