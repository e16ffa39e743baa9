"""Portable 64-bit linear congruential generator.

Multiplier 6364136223846793005 and increment 1442695040888963407 (Knuth's
MMIX constants). Outputs use the high 32 bits of the state, so sampled
censuses reproduce bit-for-bit in any language with 64-bit arithmetic.
"""

from typing import List

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK = (1 << 64) - 1


class Lcg64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next_u32(self) -> int:
        self.state = (self.state * MULTIPLIER + INCREMENT) & MASK
        return self.state >> 32

    def below(self, bound: int) -> int:
        """A value in [0, bound); plain modulo reduction."""
        return self.next_u32() % bound

    def residues(self, q: int, count: int) -> List[int]:
        return [self.below(q) for _ in range(count)]
