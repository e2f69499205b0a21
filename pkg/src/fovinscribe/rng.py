"""Counter-based SplitMix64 stream, vectorised with numpy.

Output ``i`` (0-based) of a stream seeded with ``s`` is the SplitMix64 mix of
``s + (i + 1) * 0x9E3779B97F4A7C15 mod 2**64``, so draws are identical on
every platform and can be generated in blocks.
"""

from __future__ import annotations

import numpy as np

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


class SplitMix64:
    def __init__(self, seed: int):
        self.seed = int(seed) % 2**64
        self.counter = 0

    def next_u64(self, size: int) -> np.ndarray:
        steps = np.arange(self.counter + 1, self.counter + size + 1, dtype=np.uint64)
        self.counter += size
        with np.errstate(over="ignore"):
            z = np.uint64(self.seed) + steps * _GAMMA
            z = (z ^ (z >> np.uint64(30))) * _M1
            z = (z ^ (z >> np.uint64(27))) * _M2
        return z ^ (z >> np.uint64(31))

    def uniform(self, size: int) -> np.ndarray:
        """Doubles in [0, 1) built from the top 53 bits."""
        return (self.next_u64(size) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def normal(self, size: int) -> np.ndarray:
        """Standard normals by Box-Muller; consumes ``2 * size`` raw draws."""
        u = self.uniform(2 * size)
        u1, u2 = 1.0 - u[0::2], u[1::2]
        return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)
