"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy implementations in ``_pykernels`` take over.  Setting
``ADDPOSET_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

_compiled = None
if not os.environ.get("ADDPOSET_PURE_PYTHON"):
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

_impl = _compiled if _compiled is not None else _pykernels
BACKEND = "cython" if _compiled is not None else "python"

AXIOMS = _pykernels.AXIOMS
words_for = _pykernels.words_for
unpack = _pykernels.unpack
pack = _pykernels.pack

subset_table = _impl.subset_table
transpose_table = _impl.transpose_table
axiom_scan = _impl.axiom_scan
order_preserving = _impl.order_preserving
incidence_inverse = _impl.incidence_inverse


def implementations() -> dict:
    """Both backends keyed by name, for tests and benchmarks."""
    out = {"python": _pykernels}
    if _compiled is not None:
        out["cython"] = _compiled
    return out
