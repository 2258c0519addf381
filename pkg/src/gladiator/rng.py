"""Counter-based random streams built on SplitMix64.

Every Monte Carlo routine in this package draws from one scheme:

    key(seed, trial)   = mix64(seed + (trial + 1) * GOLDEN)
    bits(seed, t, k)   = mix64(key(seed, t) + (k + 1) * GOLDEN)
    u01                = (bits >> 11) * 2**-53          in [0, 1)
    exponential        = -log1p(-u01)

mix64 is the SplitMix64 finalizer (Steele, Lea & Flood), so draw k of
trial t is a pure function of (seed, trial, k). Consequences we rely on:

- trials form independent substreams: a battle can consume a variable
  number of draws without shifting any other trial's stream;
- the compiled and pure kernels replay identical streams bit for bit;
- sharding trials across workers cannot change results.

All arithmetic is mod 2**64. Scalar and numpy-vectorized forms are kept
in lockstep; test_kernels locks their equality.
"""

from __future__ import annotations

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15

_INV_2_53 = 1.0 / 9007199254740992.0  # 2**-53


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def normalize_seed(seed: int) -> int:
    """Map any Python int (negatives included) onto the uint64 seed space."""
    return seed & MASK64


def trial_key(seed: int, trial: int) -> int:
    return mix64((normalize_seed(seed) + ((trial + 1) * GOLDEN)) & MASK64)


def draw_bits(key: int, index: int) -> int:
    return mix64((key + ((index + 1) * GOLDEN)) & MASK64)


def draw_u01(key: int, index: int) -> float:
    """Uniform draw in [0, 1) at position `index` of the keyed stream."""
    return (draw_bits(key, index) >> 11) * _INV_2_53


# ---------------------------------------------------------------------------
# Vectorized forms. uint64 arithmetic wraps mod 2**64 in numpy, matching the
# scalar masking above.
# ---------------------------------------------------------------------------

def _mix64_vec(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(0xBF58476D1CE4E5B9)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def trial_keys_vec(seed: int, trials: np.ndarray) -> np.ndarray:
    """Per-trial stream keys for an array of trial indices."""
    t = trials.astype(np.uint64)
    base = np.uint64(normalize_seed(seed))
    return _mix64_vec(base + (t + np.uint64(1)) * np.uint64(GOLDEN))


def draw_bits_vec(keys: np.ndarray, index) -> np.ndarray:
    """Draws at position `index` (scalar or array) for an array of keys."""
    if isinstance(index, (int, np.integer)):
        # exact Python arithmetic; numpy warns on scalar uint64 overflow
        offset = np.uint64(((int(index) + 1) * GOLDEN) & MASK64)
        return _mix64_vec(keys + offset)
    idx = np.asarray(index, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return _mix64_vec(keys + (idx + np.uint64(1)) * np.uint64(GOLDEN))


def draw_u01_vec(keys: np.ndarray, index) -> np.ndarray:
    return (draw_bits_vec(keys, index) >> np.uint64(11)) * _INV_2_53
