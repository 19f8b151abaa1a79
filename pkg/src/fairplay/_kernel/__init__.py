"""Simulation kernel with backend selection at import time.

Prefers the compiled Cython extension; falls back to the pure-Python
implementation when the extension is unavailable or when the environment
variable ``FAIRPLAY_PURE=1`` forces the fallback. Both backends produce
bit-identical results for identical inputs.
"""

import os

from . import pure

if os.environ.get("FAIRPLAY_PURE") == "1":
    _impl = pure
    BACKEND = "pure"
else:
    try:
        from . import engine as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = pure
        BACKEND = "pure"

run_scenario = _impl.run_scenario
withdrawn_score_sums = _impl.withdrawn_score_sums

__all__ = ["BACKEND", "run_scenario", "withdrawn_score_sums", "pure"]
