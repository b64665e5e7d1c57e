"""Backend selection for the field-arithmetic hot kernel.

The compiled extension ``torscat._gfcore`` is used when available; the
numpy implementation in ``_gfpure`` is the fallback.  Set
``TORSCAT_PURE=1`` to force the fallback (used by the benchmark and by
the backend-parity tests).
"""

from __future__ import annotations

import os

from . import _gfpure

if os.environ.get("TORSCAT_PURE"):
    _impl = _gfpure
else:
    try:
        from . import _gfcore as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _gfpure

rref = _impl.rref


def backend_name():
    return "compiled" if _impl.__name__.endswith("_gfcore") else "pure"
