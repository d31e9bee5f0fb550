"""Backend selection for the hot kernels.

The compiled extension ``stminor._core`` is used when it imports; otherwise
the numpy implementations in ``stminor._core_py`` take over.  Setting
``STMINOR_BACKEND=python`` forces the fallback.
"""

import os

from . import _core_py

BACKEND = "python"
_impl = _core_py

if os.environ.get("STMINOR_BACKEND", "").lower() != "python":
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on build
        _impl = _core_py

ec_ap_many = _impl.ec_ap_many
clenshaw_u = _impl.clenshaw_u

__all__ = ["BACKEND", "ec_ap_many", "clenshaw_u", "_core_py"]
