"""Kernel backend selection.

Hot inner loops exist twice: a numba ``@njit`` build and a pure-numpy
fallback.  The environment variable ``TRAPSCATTER_BACKEND`` picks one:

* ``numba``  - require numba, fail loudly if it is missing
* ``numpy``  - force the fallback even when numba is installed
* ``auto``   - (default) numba when importable, numpy otherwise
"""

import os
import warnings

_requested = os.environ.get("TRAPSCATTER_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    warnings.warn(
        f"unknown TRAPSCATTER_BACKEND={_requested!r}, falling back to 'auto'",
        stacklevel=1,
    )
    _requested = "auto"

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False

if _requested == "numba" and not HAVE_NUMBA:
    raise ImportError(
        "TRAPSCATTER_BACKEND=numba but numba is not importable; "
        "install numba or set TRAPSCATTER_BACKEND=numpy"
    )

USE_NUMBA = HAVE_NUMBA if _requested == "auto" else (_requested == "numba")
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(*args, **kwargs):
    """``numba.njit`` when the numba backend is active, identity otherwise."""
    if USE_NUMBA:
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)
    if args and callable(args[0]):
        return args[0]

    def deco(fn):
        return fn

    return deco
