"""Hot-loop kernels with a compiled core and a pure-Python fallback.

The compiled module is used when it imports; setting ``TIGHTHAM_PURE_PYTHON=1``
forces the fallback. Both expose ``hamilton_cycle``, ``count_absorbers`` and
``purge_removed`` with identical results.
"""
import os

from . import _pykernels as python_backend

try:
    if os.environ.get("TIGHTHAM_PURE_PYTHON"):
        raise ImportError("pure-Python kernels requested")
    from . import _ckernels as compiled_backend
except ImportError:
    compiled_backend = None

active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = active.BACKEND

hamilton_cycle = active.hamilton_cycle
count_absorbers = active.count_absorbers
purge_removed = active.purge_removed
