"""Kernel backend selection: compiled extension if built, NumPy otherwise.

Set ``ATTRTOPO_PURE=1`` to force the fallback (used by the benchmark and the
backend-equivalence tests).
"""

import os

from . import _pure

if os.environ.get("ATTRTOPO_PURE"):
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"

hausdorff_to_subset = _impl.hausdorff_to_subset
single_linkage_labels = _impl.single_linkage_labels

__all__ = ["BACKEND", "hausdorff_to_subset", "single_linkage_labels"]
