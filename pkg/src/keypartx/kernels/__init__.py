"""Hot inner loops: lexicon edit distance, k-core peeling, Leiden moves.

Two interchangeable backends exist. ``KEYPARTX_BACKEND=numpy`` forces the
pure-numpy path; otherwise numba is used when it imports cleanly.
"""
import os

from . import _numpy as numpy_backend

BACKEND_ENV = "KEYPARTX_BACKEND"


def _load():
    wanted = os.environ.get(BACKEND_ENV, "numba").strip().lower()
    if wanted == "numpy":
        return "numpy", numpy_backend
    try:
        from . import _numba
    except ImportError:
        return "numpy", numpy_backend
    return "numba", _numba


BACKEND, _impl = _load()

osa_distances = _impl.osa_distances
core_mask = _impl.core_mask
move_nodes = _impl.move_nodes
refine_nodes = _impl.refine_nodes


def get_backend(name):
    """Kernel module for ``name`` ("numba" or "numpy"), for tests and benchmarks."""
    if name == "numpy":
        return numpy_backend
    from . import _numba

    return _numba
