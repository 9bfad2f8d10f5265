"""Kernel dispatch: the compiled extension when importable, else pure Python.

Set ``EQTT_PURE_PYTHON=1`` to force the fallback.
"""

import os

BACKEND = "python"

if os.environ.get("EQTT_PURE_PYTHON"):
    from eqtt import _pykernels as _impl
else:
    try:
        from eqtt import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        from eqtt import _pykernels as _impl

close_subgroup = _impl.close_subgroup
transporter_count = _impl.transporter_count
is_normalized_by = _impl.is_normalized_by

__all__ = ["BACKEND", "close_subgroup", "transporter_count", "is_normalized_by"]
