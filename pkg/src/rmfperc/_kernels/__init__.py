"""Survival sweep kernels: compiled extension with pure-numpy fallback.

The compiled Cython core is used when it was built; otherwise the numpy
implementation takes over with identical semantics.  ``get_backend``
exposes both for benchmarking and cross-checking.
"""

from . import sweep_numpy

try:
    from . import _sweep_cy

    DEFAULT_BACKEND = _sweep_cy
except ImportError:  # extension not built
    _sweep_cy = None
    DEFAULT_BACKEND = sweep_numpy

BACKEND_NAME = DEFAULT_BACKEND.BACKEND_NAME

LATTICE_SQUARE = sweep_numpy.LATTICE_SQUARE
LATTICE_ALT = sweep_numpy.LATTICE_ALT
MODE_RMF = sweep_numpy.MODE_RMF
MODE_COUPLED = sweep_numpy.MODE_COUPLED
DCODE_GENERIC = sweep_numpy.DCODE_GENERIC


def available_backends():
    out = {"numpy": sweep_numpy}
    if _sweep_cy is not None:
        out["cython"] = _sweep_cy
    return out


def get_backend(name=None):
    """Return a kernel module by name (default: the fastest available)."""
    if name is None or name == "default":
        return DEFAULT_BACKEND
    backends = available_backends()
    if name not in backends:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {sorted(backends)}")
    return backends[name]
