"""Backend selection for the integer kernels.

The compiled extension is used when it was built; otherwise the pure-Python
module is loaded. Set ``GAMEAXIOMS_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("GAMEAXIOMS_PURE_PYTHON"):
    from gameaxioms import _pykernels as _impl
else:
    try:
        from gameaxioms import _ckernels as _impl
    except ImportError:
        from gameaxioms import _pykernels as _impl

BACKEND = "cython" if _impl.__name__.endswith("_ckernels") else "python"

common_denominator = _impl.common_denominator
dot = _impl.dot
matvec = _impl.matvec
outer_flat = _impl.outer_flat
pivot = _impl.pivot
scaled_difference = _impl.scaled_difference
own_action_dependence = _impl.own_action_dependence

__all__ = [
    "BACKEND",
    "common_denominator",
    "dot",
    "matvec",
    "outer_flat",
    "own_action_dependence",
    "pivot",
    "scaled_difference",
]
