"""Deterministic counter-based random streams.

Every draw index under a stream key owns an independent counter "lane": the
j-th raw value of lane ``k`` is ``mix64(lane_key(k) + GOLDEN * (j + 1))``, a
pure function of ``(key, k, j)``.  Consequently the same seed produces the
same draws whether they are generated one at a time, in batches, in chunks,
or on several workers; ordering and chunk layout cannot change a single bit.

The mixer is the SplitMix64 finalizer; lane/spawn derivation uses two
distinct odd increments so child streams and draw lanes live in separate
counter domains.
"""
from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

# Weyl increments (odd, fixed): GOLDEN is the SplitMix64 gamma, SPAWN a
# second unrelated odd constant reserved for substream derivation.
GOLDEN = 0x9E3779B97F4A7C15
SPAWN = 0xD1B54A32D192ED03

_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB

_NP_M1 = np.uint64(_M1)
_NP_M2 = np.uint64(_M2)
_NP_30 = np.uint64(30)
_NP_27 = np.uint64(27)
_NP_31 = np.uint64(31)
_NP_11 = np.uint64(11)

# Raw lane value reserved for the shape<1 gamma boost; rejection rounds
# start at value index 1 (see betadist._gamma_lanes).
_INV_2_53 = 2.0 ** -53


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer (pure Python, wraps mod 2^64)."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _M1) & _MASK64
    z = ((z ^ (z >> 27)) * _M2) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_key(key: int, index: int) -> int:
    """Key of draw lane ``index`` under ``key``."""
    return mix64(key + GOLDEN * (index + 1))


def spawn_key(key: int, index: int) -> int:
    """Key of child stream ``index`` under ``key`` (separate domain from lanes)."""
    return mix64(key + SPAWN * (index + 1))


def derive_seed(key: int, index: int) -> int:
    """Derived seed truncated to 53 bits.

    Seeds that cross the JSON boundary must survive a round trip through
    JavaScript numbers, so every seed the package generates stays within
    the exact-integer range of a double.
    """
    return derive_key(key, index) >> 11


def _mix64_array(z: np.ndarray) -> np.ndarray:
    # uint64 array ops wrap silently; scalars would warn, so callers add
    # precomputed python-int offsets cast to np.uint64.
    z = (z ^ (z >> _NP_30)) * _NP_M1
    z = (z ^ (z >> _NP_27)) * _NP_M2
    return z ^ (z >> _NP_31)


def lane_keys(key: int, start: int, n: int) -> np.ndarray:
    """Keys of lanes ``start .. start+n-1`` under ``key`` as a uint64 array."""
    base = (key + GOLDEN * (start + 1)) & _MASK64
    idx = np.arange(n, dtype=np.uint64) * np.uint64(GOLDEN)
    return _mix64_array(np.uint64(base) + idx)


def lane_values(keys: np.ndarray, j: int) -> np.ndarray:
    """Raw 64-bit value ``j`` of each lane in ``keys``."""
    off = np.uint64((GOLDEN * (j + 1)) & _MASK64)
    return _mix64_array(keys + off)


def lane_uniforms(keys: np.ndarray, j: int) -> np.ndarray:
    """Value ``j`` of each lane mapped to a double strictly inside (0,1)."""
    v = lane_values(keys, j)
    return ((v >> _NP_11).astype(np.float64) + 0.5) * _INV_2_53


def lane_normals(keys: np.ndarray, j: int) -> np.ndarray:
    """Standard normal per lane via Box-Muller on values ``j`` and ``j+1``."""
    u1 = lane_uniforms(keys, j)
    u2 = lane_uniforms(keys, j + 1)
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)


class RandomStream:
    """A seeded stream of draws over counter lanes.

    The stream holds a key and a lane counter; each draw consumes one lane.
    ``spawn(i)`` derives an independent child stream, so a root seed fans out
    into reproducible per-purpose streams (e.g. one for the null-prior draws,
    one for the Type II draws).
    """

    __slots__ = ("key", "_counter")

    def __init__(self, seed: int, _key: int | None = None):
        if not isinstance(seed, int):
            raise TypeError("seed must be an integer")
        self.key = (seed & _MASK64) if _key is None else (_key & _MASK64)
        self._counter = 0

    def spawn(self, index: int) -> "RandomStream":
        """Independent substream ``index`` of this stream's key."""
        return RandomStream(0, _key=spawn_key(self.key, index))

    @property
    def position(self) -> int:
        """Number of lanes consumed so far."""
        return self._counter

    def take_lanes(self, n: int) -> np.ndarray:
        """Consume ``n`` lanes and return their keys."""
        if n < 0:
            raise ValueError("n must be non-negative")
        keys = lane_keys(self.key, self._counter, n)
        self._counter += n
        return keys

    def uniforms(self, n: int) -> np.ndarray:
        """``n`` doubles uniform on (0,1), one lane each."""
        return lane_uniforms(self.take_lanes(n), 0)

    def uniform(self) -> float:
        return float(self.uniforms(1)[0])

    def normals(self, n: int) -> np.ndarray:
        """``n`` standard normals, one lane each."""
        return lane_normals(self.take_lanes(n), 0)

    def normal(self) -> float:
        return float(self.normals(1)[0])
