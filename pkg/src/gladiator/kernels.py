"""Kernel backend selection.

The compiled extension (_kernels_c) is preferred when importable; the
pure backend (_kernels_py) is a drop-in replacement. Selection can be
forced with GLADIATOR_KERNELS=c|py (default: auto). BACKEND names the
choice; both backends replay identical random streams, so switching
never changes simulation results.
"""

from __future__ import annotations

import os

from . import _kernels_py

_choice = os.environ.get("GLADIATOR_KERNELS", "auto").strip().lower()

if _choice in ("auto", "", "c", "compiled", "fast"):
    try:
        from . import _kernels_c as _impl
        BACKEND = "compiled"
    except ImportError:
        if _choice in ("c", "compiled", "fast"):
            raise
        _impl = _kernels_py
        BACKEND = "pure"
elif _choice in ("py", "python", "pure"):
    _impl = _kernels_py
    BACKEND = "pure"
else:
    raise RuntimeError(
        f"GLADIATOR_KERNELS={_choice!r} not understood (use auto, c, or py)"
    )

POLICY_FIXED = _kernels_py.POLICY_FIXED
POLICY_BENCH = _kernels_py.POLICY_BENCH
POLICY_RANDOM = _kernels_py.POLICY_RANDOM

duel_win_prob = _impl.duel_win_prob
geom_loss_prob = _impl.geom_loss_prob
betainc_int = _impl.betainc_int
simulate_win_count = _impl.simulate_win_count
