"""Kernel backend selection.

The compiled backend is preferred when the extension built; the pure
Python backend is always available.  Set PSINDEX_KERNELS=python to force
the fallback, PSINDEX_KERNELS=c to require the extension.
"""

import os

from . import _pykernels

_forced = os.environ.get("PSINDEX_KERNELS", "").strip().lower()

if _forced in ("python", "py", "pure"):
    _impl = _pykernels
elif _forced == "c":
    from . import _ckernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.NAME

pack_codes = _impl.pack_codes
extract_span = _impl.extract_span
span_lcp = _impl.span_lcp
long_lcp = _impl.long_lcp
count_entry_prefix = _impl.count_entry_prefix
scan_matches = _impl.scan_matches


def set_backend(name):
    """Swap the active backend at runtime (used by the benchmark script)."""
    global _impl, BACKEND
    global pack_codes, extract_span, span_lcp, long_lcp
    global count_entry_prefix, scan_matches
    if name in ("python", "py", "pure"):
        _impl = _pykernels
    elif name == "c":
        from . import _ckernels
        _impl = _ckernels
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    BACKEND = _impl.NAME
    pack_codes = _impl.pack_codes
    extract_span = _impl.extract_span
    span_lcp = _impl.span_lcp
    long_lcp = _impl.long_lcp
    count_entry_prefix = _impl.count_entry_prefix
    scan_matches = _impl.scan_matches
    return BACKEND
