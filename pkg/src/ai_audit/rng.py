"""Deterministic random number generation for shuffles, bots and seed derivation.

Everything random in this package flows through :class:`GameRng`, a splitmix64
generator. The algorithm is fixed and documented here (rather than delegating
to ``random.Random``) so that a seed, a shuffle order, or a derived sub-seed
means the same thing on every platform and in every release:

    state' = (state + 0x9E3779B97F4A7C15) mod 2^64
    output = mix64(state')

where ``mix64`` is the splitmix64 finalizer. Bounded draws use rejection
sampling so they are unbiased for any bound.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """splitmix64 finalizer: avalanche a 64-bit value."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def split_seed(base_seed: int, index: int) -> int:
    """Derive the ``index``-th sub-seed from ``base_seed``.

    Fixed rule: ``mix64(mix64(base_seed) ^ mix64(index + 1))``. Used for
    per-game seeds in simulation plans and per-seat bot seeds, so that reports
    and logs can name a single base seed.
    """
    return mix64(mix64(base_seed) ^ mix64((index + 1) & _MASK64))


class GameRng:
    """splitmix64 stream with shuffle/choice helpers.

    The full generator state is the single integer :attr:`state`, which makes
    it trivial to serialize inside a game state and to resume exactly.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        return mix64(self.state)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n). Rejection sampling keeps it unbiased."""
        if n <= 0:
            raise ValueError("randbelow() bound must be positive")
        limit = _MASK64 + 1 - ((_MASK64 + 1) % n)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle (descending index order)."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def choice(self, items):
        if not items:
            raise ValueError("choice() from empty sequence")
        return items[self.randbelow(len(items))]

    def random(self) -> float:
        """Float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) / (1 << 53)
