"""SplitMix64 generator and seed mixing.

The generator is counter based: output ``k`` (1-based) is the finalizer
applied to ``seed + k * GOLDEN``. ``mix(seed, i)`` is therefore the
``(i + 1)``-th output of ``SplitMix64(seed)``, computed in O(1).
"""

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def _finalize(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix(seed: int, index: int) -> int:
    """Derive an independent 64-bit seed for replicate ``index``."""
    return _finalize((seed + (index + 1) * GOLDEN) & MASK64)


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return _finalize(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` (Lemire's multiply-and-reject)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        m = self.next_u64() * bound
        low = m & MASK64
        if low < bound:
            threshold = (-bound) % bound
            while low < threshold:
                m = self.next_u64() * bound
                low = m & MASK64
        return m >> 64

    def bit(self) -> int:
        return self.next_u64() >> 63

    def random(self) -> float:
        """Uniform float in ``[0, 1)`` with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, last index down to 1."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
