"""Kernel backend selection.

Imports the compiled kernels when the extension built, otherwise the
pure-Python twins.  HULLATTACK_PURE=1 forces the pure backend; both
backends produce identical output, so callers never need to care.
"""

import os

from . import _core_py

xgcd = _core_py.xgcd

if os.environ.get("HULLATTACK_PURE"):
    BACKEND = "pure"
    hnf_rows = _core_py.hnf_rows
    lll_rows = _core_py.lll_rows
else:
    try:
        from . import _core_cy

        BACKEND = "compiled"
        hnf_rows = _core_cy.hnf_rows
        lll_rows = _core_cy.lll_rows
    except ImportError:
        BACKEND = "pure"
        hnf_rows = _core_py.hnf_rows
        lll_rows = _core_py.lll_rows
