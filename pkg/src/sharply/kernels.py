"""Backend selection for the hot loops.

The compiled extension is used when it was built and ``SHARPLY_PURE_PYTHON``
is unset; otherwise the pure-Python fallback is used. Both expose the same
functions and must agree on every input.
"""
import os

from sharply import _pykernels
from sharply._pykernels import ClosureOverflow

_backend = _pykernels
BACKEND = "python"

if not os.environ.get("SHARPLY_PURE_PYTHON"):
    try:
        from sharply import _ckernels as _backend  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        pass

closure = _backend.closure
tuple_orbit_size = _backend.tuple_orbit_size
assoc_failure = _backend.assoc_failure
right_dist_failure = _backend.right_dist_failure

__all__ = [
    "BACKEND",
    "ClosureOverflow",
    "closure",
    "tuple_orbit_size",
    "assoc_failure",
    "right_dist_failure",
]
