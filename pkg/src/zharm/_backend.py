"""Import-time selection of the recurrence backend.

The compiled extension is preferred; environments without a C toolchain
fall back to the pure-Python implementation transparently.  Benchmarks
and tests import both modules directly.
"""

try:
    from ._core import miller_row

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    from ._core_py import miller_row

    BACKEND = "python"

__all__ = ["miller_row", "BACKEND"]
