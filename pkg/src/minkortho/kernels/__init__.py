"""Hot numeric kernels behind a backend switch.

``MINKORTHO_BACKEND=numpy`` selects the pure-numpy path; the default is the
numba path, falling back to numpy when numba cannot be imported. Both expose

    norm_many(kind, p, facets, angles, xs, ys)
    residual_many(kind, p, facets, angles, tri, xs, ys)
    descend(kind, p, facets, angles, tri, starts, iterations, step, penalty, xtol)
    polish(kind, p, facets, angles, tri, pts, iterations)
"""

import importlib
import os
import warnings
from types import ModuleType

_BACKENDS = {"numba": "._jit", "numpy": "._numpy"}
_cache: dict[str, ModuleType] = {}


def get_backend(name: str) -> ModuleType:
    if name not in _BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}; expected one of {sorted(_BACKENDS)}")
    if name not in _cache:
        _cache[name] = importlib.import_module(_BACKENDS[name], __name__)
    return _cache[name]


def _select() -> tuple[str, ModuleType]:
    requested = os.environ.get("MINKORTHO_BACKEND", "numba").strip().lower()
    if requested == "numba":
        try:
            return "numba", get_backend("numba")
        except ImportError:
            warnings.warn("numba unavailable; using the numpy kernels", RuntimeWarning)
            return "numpy", get_backend("numpy")
    return requested, get_backend(requested)


BACKEND, _impl = _select()

norm_many = _impl.norm_many
residual_many = _impl.residual_many
descend = _impl.descend
polish = _impl.polish
