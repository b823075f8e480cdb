"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``FANOCHECK_PURE=1`` to force the pure kernels (used by the benchmark
and by tests that pin down behavioural equality of the two implementations).
The compiled kernels refuse inputs outside their packed monomial range by
raising ``KernelLimit``; the wrappers here fall back to pure transparently,
so callers always get an answer and always the same one.
"""

from __future__ import annotations

import os

from . import pure as _pure
from .common import ExtField, count_projective, projective_points, smallest_nonresidue

_compiled = None
if os.environ.get("FANOCHECK_PURE") != "1":
    try:
        from . import _speed as _compiled
    except ImportError:
        _compiled = None


def implementation() -> str:
    return "compiled" if _compiled is not None else "pure"


def _is_limit(exc: Exception) -> bool:
    return _compiled is not None and isinstance(exc, _compiled.KernelLimit)


class AutoReducer:
    """Reducer that starts compiled and replays onto pure if limits are hit."""

    def __init__(self, p: int, nvars: int):
        self.p = p
        self.nvars = nvars
        self._added: list[dict] = []
        self._r = None
        if _compiled is not None:
            try:
                self._r = _compiled.Reducer(p, nvars)
            except _compiled.KernelLimit:
                self._r = None
        if self._r is None:
            self._r = _pure.Reducer(p, nvars)

    def _switch_to_pure(self):
        r = _pure.Reducer(self.p, self.nvars)
        for terms in self._added:
            r.add(terms)
        self._r = r

    def add(self, terms: dict) -> None:
        self._added.append(terms)
        try:
            self._r.add(terms)
        except Exception as exc:
            if not _is_limit(exc):
                raise
            self._switch_to_pure()
            # the failed add was recorded; the replay above included it

    def reduce(self, terms: dict) -> dict:
        try:
            return self._r.reduce(terms)
        except Exception as exc:
            if not _is_limit(exc):
                raise
            self._switch_to_pure()
            return self._r.reduce(terms)


def zeros_projective(gens: list[dict], nvars: int, p: int, ext: int = 1, limit: int = -1):
    """Count (and partially list) projective zeros over F_p or F_{p^2}."""
    if _compiled is not None:
        try:
            return _compiled.zeros_projective(gens, nvars, p, ext, limit)
        except _compiled.KernelLimit:
            pass
    return _pure.zeros_projective(gens, nvars, p, ext, limit)


__all__ = [
    "AutoReducer",
    "ExtField",
    "count_projective",
    "implementation",
    "projective_points",
    "smallest_nonresidue",
    "zeros_projective",
]
