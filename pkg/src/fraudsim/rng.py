"""Counter-based random numbers for the market simulation.

Every draw is a pure function of (seed, counter), so price processes can be
evaluated at any tick in any order and golden values survive re-implementation
in another language. The generator is SplitMix64 (Steele/Lea/Vigna): evaluating
counter n is equivalent to calling the canonical next() on a state initialised
to `seed` n+1 times.

Normal deviates come from the Box-Muller transform applied to two consecutive
SplitMix64 outputs mapped into (0, 1].
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(seed: int, counter: int) -> int:
    """Return the counter-th SplitMix64 output for `seed` as an unsigned 64-bit int."""
    z = (seed + (counter + 1) * _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def uniform01(seed: int, counter: int) -> float:
    """Uniform draw in (0, 1]; never exactly 0 so log() is always safe."""
    return (splitmix64(seed, counter) + 1) / 2.0**64


def normal(seed: int, counter: int) -> float:
    """Standard normal deviate; consumes SplitMix64 counters 2c and 2c+1."""
    u1 = uniform01(seed, 2 * counter)
    u2 = uniform01(seed, 2 * counter + 1)
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def derive_seed(seed: int, *words: int) -> int:
    """Stable child seed from a parent seed and integer context words.

    Used to give every stock / schedule its own independent stream without
    threading generator state through the scenario builder.
    """
    z = seed & _MASK64
    for w in words:
        z = splitmix64(z, w)
    return z
