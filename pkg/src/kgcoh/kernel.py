"""Backend selection for the word rewriting kernel.

The compiled module is used when it imports cleanly; setting
``KGCOH_PURE=1`` forces the pure-Python fallback.  Tables passed to the
kernel must be ``array('l')`` instances so both backends accept them.
"""

import os
from array import array

from . import _kernel_py

if os.environ.get("KGCOH_PURE") == "1":
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernel_py

BACKEND = "cython" if _impl is not _kernel_py else "python"

sort_word = _impl.sort_word
rewrite_word = _impl.rewrite_word


def table(values) -> array:
    return array("l", values)
