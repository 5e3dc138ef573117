"""Pinned splitmix64 generator used by the Gibbs sampler.

Plain 64-bit integer arithmetic, so assignment sequences are identical on
every platform. The same constants are inlined in the numba sweep kernel;
the Python generator here must stay in lockstep with it.
"""

from __future__ import annotations

import numpy as np

SPLITMIX_C1 = np.uint64(0x9E3779B97F4A7C15)
SPLITMIX_C2 = np.uint64(0xBF58476D1CE4E5B9)
SPLITMIX_C3 = np.uint64(0x94D049BB133111EB)

_MASK = (1 << 64) - 1
_INV_2_53 = 1.0 / 9007199254740992.0


def splitmix64_stream(state: np.ndarray):
    """Yield floats in [0, 1); advances state[0] (uint64 array of size 1)."""
    while True:
        s = (int(state[0]) + int(SPLITMIX_C1)) & _MASK
        state[0] = np.uint64(s)
        z = s
        z = ((z ^ (z >> 30)) * int(SPLITMIX_C2)) & _MASK
        z = ((z ^ (z >> 27)) * int(SPLITMIX_C3)) & _MASK
        z = z ^ (z >> 31)
        yield (z >> 11) * _INV_2_53
