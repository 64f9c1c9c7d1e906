"""Pick the level-DP backend at import time.

``SHELLKIT_BACKEND`` may force ``compiled`` or ``python``; the default uses
the Cython kernel when it was built and falls back silently otherwise.
"""
from __future__ import annotations

import os

from . import _fallback

try:
    from . import _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _fallback}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled


def get(name: str | None = None):
    name = name or os.environ.get("SHELLKIT_BACKEND") or "auto"
    if name == "auto":
        return BACKENDS.get("compiled", _fallback)
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None


HAVE_COMPILED = _compiled is not None
