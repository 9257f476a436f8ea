"""Hot-loop kernels with a compiled core and a numpy fallback.

The compiled Cython extension is preferred when importable; otherwise the
numpy implementation is used transparently.  Set ``UFLAB_FORCE_FALLBACK=1``
to skip the compiled core (used by the benchmark and the agreement tests).
"""

import os

from . import _fallback

FLAG_C1 = _fallback.FLAG_C1
FLAG_C2 = _fallback.FLAG_C2
FLAG_C3 = _fallback.FLAG_C3
FLAG_U1 = _fallback.FLAG_U1
FLAG_U2 = _fallback.FLAG_U2
FLAG_PROPER = _fallback.FLAG_PROPER

FLAG_C123 = FLAG_C1 | FLAG_C2 | FLAG_C3
FLAG_ULTRA_U = FLAG_U1 | FLAG_U2 | FLAG_PROPER

_impl = _fallback
if os.environ.get("UFLAB_FORCE_FALLBACK") != "1":
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        pass

BACKEND = _impl.BACKEND
classify_families = _impl.classify_families


def available_backends():
    """Return {name: classify_families} for every importable backend."""
    backends = {_fallback.BACKEND: _fallback.classify_families}
    try:
        from . import _core

        backends[_core.BACKEND] = _core.classify_families
    except ImportError:
        pass
    return backends
