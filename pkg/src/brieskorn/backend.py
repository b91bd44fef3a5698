"""Kernel selection: compiled fast path with a pure-Python fallback.

The compiled kernel covers machine-size tuples (length <= 64, every
entry and intermediate lcm below 2**64); anything outside that window
falls back to exact arbitrary-precision arithmetic, so results are
always exact.  ``BRIESKORN_KERNEL=python|c`` pins a backend at import
time; :func:`set_backend` switches at runtime (used by tests and the
benchmark).
"""

from __future__ import annotations

import os

from . import _kernel as _pure

try:
    from . import _speedups as _compiled
except ImportError:  # pure-Python install
    _compiled = None

_IMPLS = {"python": _pure}
if _compiled is not None:
    _IMPLS["c"] = _compiled


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_IMPLS))


def _pick(name: str):
    if name == "auto":
        return _IMPLS.get("c", _pure)
    if name not in _IMPLS:
        raise ValueError(f"unknown kernel backend {name!r}; available: {available_backends()}")
    return _IMPLS[name]


_active = _pick(os.environ.get("BRIESKORN_KERNEL", "auto"))


def active_backend() -> str:
    return "c" if _active is _compiled else "python"


def set_backend(name: str) -> None:
    """Select ``"auto"``, ``"python"`` or ``"c"`` for subsequent calls."""
    global _active
    _active = _pick(name)


def invariant_core(entries):
    """Omit-one gcd/lcm bundle for a tuple; exact for arbitrary integers."""
    if _active is _pure:
        return _pure.invariant_core(entries)
    try:
        return _active.invariant_core(entries)
    except OverflowError:
        return _pure.invariant_core(entries)
