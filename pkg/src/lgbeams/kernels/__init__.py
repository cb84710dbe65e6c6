"""Kernel backend selection.

The compiled Cython kernel is used when the extension built; otherwise the
numpy fallback takes over transparently.  Set ``LGBEAMS_KERNELS=numpy`` to
force the fallback or ``LGBEAMS_KERNELS=compiled`` to require the extension
(raising if it is missing).
"""

import os

from . import numpy_backend

_requested = os.environ.get("LGBEAMS_KERNELS", "auto").lower()

if _requested not in ("auto", "compiled", "numpy"):
    raise ValueError(
        f"LGBEAMS_KERNELS must be 'auto', 'compiled' or 'numpy', got {_requested!r}"
    )

_impl = numpy_backend
if _requested in ("auto", "compiled"):
    try:
        from . import _lgcore as _impl  # type: ignore[no-redef]
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "LGBEAMS_KERNELS=compiled but the _lgcore extension is not "
                "built; reinstall the package with a C compiler available"
            ) from None

lg_mode_samples = _impl.lg_mode_samples


def backend_name() -> str:
    """Name of the active kernel backend: 'compiled' or 'numpy'."""
    return _impl.name


def available_backends() -> dict:
    """All importable backends, keyed by name (for tests and benchmarks)."""
    found = {numpy_backend.name: numpy_backend}
    try:
        from . import _lgcore
        found[_lgcore.name] = _lgcore
    except ImportError:
        pass
    return found
