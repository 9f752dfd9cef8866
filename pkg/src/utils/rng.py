"""Seeded SplitMix64 generator.

Every random choice in the engine goes through this generator so that a run
is fully determined by its seed and replays identically on any platform.
"""

from typing import List

MASK64 = (1 << 64) - 1


class SplitMix64:
    """64-bit multiply-xorshift generator (Steele, Lea and Flood's SplitMix)."""

    def __init__(self, seed: int = 0):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def vector(self, n: int, q: int) -> List[int]:
        return [self.below(q) for _ in range(n)]
