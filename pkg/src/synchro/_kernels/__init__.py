"""Kernel backend selection.

The env var SYNCHRO_BACKEND picks the implementation:

    numba   compile the kernels with numba @njit(nogil=True) [default]
    pure    run the identical source uncompiled (portable, much slower)

With "numba" requested but numba missing, we fall back to pure with a
one-line warning on stderr. ``backend()`` returns a namespace exposing
hom_search / clique_search / pair_closure / block_parent plus ``name``.
"""

import os
import sys
from types import SimpleNamespace

from . import impl

_cached = None


def _build(name):
    if name == "numba":
        from numba import njit

        decorate = njit(nogil=True, cache=True)
    else:
        def decorate(f):
            return f

    hom_search, clique_search, pair_closure, block_parent = impl.make_kernels(decorate)
    return SimpleNamespace(
        name=name,
        hom_search=hom_search,
        clique_search=clique_search,
        pair_closure=pair_closure,
        block_parent=block_parent,
    )


def backend():
    global _cached
    if _cached is None:
        choice = os.environ.get("SYNCHRO_BACKEND", "numba").strip().lower()
        if choice not in ("numba", "pure"):
            raise ValueError(f"SYNCHRO_BACKEND must be 'numba' or 'pure', got {choice!r}")
        if choice == "numba":
            try:
                _cached = _build("numba")
            except ImportError:
                print("synchro: numba unavailable, using pure backend", file=sys.stderr)
                _cached = _build("pure")
        else:
            _cached = _build("pure")
    return _cached


def force_backend(name):
    """Swap the active backend; used by tests and the benchmark script."""
    global _cached
    if name not in ("numba", "pure"):
        raise ValueError(name)
    _cached = _build(name)
    return _cached
