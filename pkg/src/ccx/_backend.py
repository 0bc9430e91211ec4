"""Pick the elimination kernel at import time.

The compiled kernel is used when it was built and ``CCX_PURE_PYTHON`` is not
set.  It works on machine integers, so an ``OverflowError`` from it sends that
single call to the bigint kernel; results never depend on which one ran.
"""

from __future__ import annotations

import os

from . import _kernel_py

_compiled = None
if not os.environ.get("CCX_PURE_PYTHON"):
    try:
        from . import _kernel_c as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = _compiled.BACKEND if _compiled is not None else _kernel_py.BACKEND

# Above this many dense cells the compiled kernel's dense buffer costs more
# than it saves on our very sparse matrices.
_DENSE_LIMIT = 6_000_000


def echelon(rows, ncols, reduced=True):
    if _compiled is not None and len(rows) * ncols <= _DENSE_LIMIT:
        try:
            return _compiled.echelon(rows, ncols, reduced)
        except OverflowError:
            pass
    return _kernel_py.echelon(rows, ncols, reduced)


def rank(rows, ncols):
    if _compiled is not None and len(rows) * ncols <= _DENSE_LIMIT:
        try:
            return _compiled.rank(rows, ncols)
        except OverflowError:
            pass
    return _kernel_py.rank(rows, ncols)


def kernels():
    """All importable kernel modules, compiled first (for tests and benchmarks)."""
    found = [_kernel_py]
    try:
        from . import _kernel_c

        found.insert(0, _kernel_c)
    except ImportError:
        pass
    return found
