"""Kernel backend selection.

The compiled Cython extension is preferred when importable; the numpy
fallback implements identical contracts. Selection can be forced with the
REPISING_KERNELS environment variable ("compiled" or "fallback") or swapped
temporarily with `override(...)` (used by the benchmark suite).
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _fallback

try:
    from . import _core
except ImportError:  # extension not built
    _core = None

_forced = os.environ.get("REPISING_KERNELS", "")
if _forced == "fallback":
    _active = _fallback
elif _forced == "compiled":
    if _core is None:
        raise ImportError("REPISING_KERNELS=compiled but the extension is not built")
    _active = _core
elif _forced:
    raise ImportError(f"unknown REPISING_KERNELS value {_forced!r}")
else:
    _active = _core if _core is not None else _fallback


def active():
    """Module providing attach/release/brute."""
    return _active


def backend_name() -> str:
    return _active.BACKEND


def available() -> dict:
    out = {"fallback": _fallback}
    if _core is not None:
        out["compiled"] = _core
    return out


@contextmanager
def override(name: str):
    """Temporarily select a backend by name."""
    global _active
    try:
        chosen = available()[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available") from None
    previous = _active
    _active = chosen
    try:
        yield chosen
    finally:
        _active = previous
