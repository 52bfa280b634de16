"""Counter-based deterministic randomness keyed by vertex identity.

Every random quantity in this package is a pure function of a 64-bit seed
and a canonical encoding of a vertex key.  This lets infinite graphs be
streamed level by level and lets independent workers evaluate the same
field without storing it or coordinating consumption order.

The mixer is the SplitMix64 finalizer.  Keys are absorbed one 64-bit word
at a time, so a vertex deep in a tree can reuse the absorbed state of its
parent.  The scalar and vectorized variants below, and the compiled kernel
in ``_kernels``, implement bit-identical arithmetic.
"""

from __future__ import annotations

import numpy as np

MASK = (1 << 64) - 1

_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
FINAL_TAG = 0x2545F4914F6CDD1D

_U53_INV = 2.0 ** -53


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer."""
    z = (z + _GOLDEN) & MASK
    z = ((z ^ (z >> 30)) * _MIX1) & MASK
    z = ((z ^ (z >> 27)) * _MIX2) & MASK
    return z ^ (z >> 31)


def init_state(seed: int) -> int:
    return mix64(seed & MASK)


def absorb(state: int, word: int) -> int:
    return mix64(state ^ (word & MASK))


def finalize(state: int) -> int:
    return mix64(state ^ FINAL_TAG)


def unit_open(h: int) -> float:
    """Map a 64-bit hash to the open interval (0, 1)."""
    return ((h >> 11) + 0.5) * _U53_INV


# Vectorized counterparts on uint64 arrays.  Unsigned overflow wraps,
# which is exactly the modular arithmetic we want.

_GOLDEN_U = np.uint64(_GOLDEN)
_MIX1_U = np.uint64(_MIX1)
_MIX2_U = np.uint64(_MIX2)
_FINAL_U = np.uint64(FINAL_TAG)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)


def mix64_vec(z: np.ndarray) -> np.ndarray:
    z = z + _GOLDEN_U
    z = (z ^ (z >> _S30)) * _MIX1_U
    z = (z ^ (z >> _S27)) * _MIX2_U
    return z ^ (z >> _S31)


def init_state_vec(seeds) -> np.ndarray:
    return mix64_vec(np.asarray(seeds, dtype=np.uint64))


def absorb_vec(state: np.ndarray, word) -> np.ndarray:
    return mix64_vec(state ^ np.asarray(word, dtype=np.uint64))


def finalize_vec(state: np.ndarray) -> np.ndarray:
    return mix64_vec(state ^ _FINAL_U)


def unit_open_vec(h: np.ndarray) -> np.ndarray:
    return ((h >> _S11).astype(np.float64) + 0.5) * _U53_INV


def hash_words(seed: int, words) -> int:
    """Hash a seed and a sequence of 64-bit words to one 64-bit value."""
    state = init_state(seed)
    for w in words:
        state = absorb(state, w)
    return finalize(state)


def derive_run_seeds(seed_base: int, stream: int, count: int) -> np.ndarray:
    """Per-run seeds: run ``i`` of stream ``e`` gets hash(base, e, i)."""
    state = absorb(init_state(seed_base), stream)
    runs = np.arange(count, dtype=np.uint64)
    return finalize_vec(absorb_vec(np.full(count, state, dtype=np.uint64), runs))
