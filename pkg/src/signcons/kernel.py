"""Select the search kernel: compiled extension if importable, else pure Python.

Set ``SIGNCONS_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernel

if os.environ.get("SIGNCONS_PURE_PYTHON", "") not in ("", "0"):
    solve = _pykernel.solve
    BACKEND = "python"
else:
    try:
        from ._ckernel import solve  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        solve = _pykernel.solve
        BACKEND = "python"

SAT = _pykernel.SAT
UNSAT = _pykernel.UNSAT
BUDGET = _pykernel.BUDGET

__all__ = ["solve", "BACKEND", "SAT", "UNSAT", "BUDGET"]
