"""splitmix64 generator: determinism, range soundness, shuffle behavior."""

from hypothesis import given, strategies as st

from ai_audit.rng import GameRng, mix64, split_seed


def test_same_seed_same_stream():
    a = GameRng(123)
    b = GameRng(123)
    assert [a.next_u64() for _ in range(20)] == [b.next_u64() for _ in range(20)]


def test_known_mix64_values_frozen():
    # Regression anchors so the stream can never silently change. The first
    # draw from seed 0 matches the reference splitmix64 stream.
    assert mix64(0) == 0
    assert mix64(1) == 0x5692161D100B05E5
    assert GameRng(0).next_u64() == 0xE220A8397B1DCDAF


def test_split_seed_distinct_and_stable():
    seeds = {split_seed(42, i) for i in range(1000)}
    assert len(seeds) == 1000
    assert split_seed(42, 7) == split_seed(42, 7)
    assert split_seed(42, 7) != split_seed(43, 7)


def test_shuffle_is_a_permutation():
    rng = GameRng(9)
    items = list(range(40))
    rng.shuffle(items)
    assert sorted(items) == list(range(40))
    assert items != list(range(40))


def test_shuffle_deterministic():
    a, b = GameRng(5), GameRng(5)
    xs, ys = list(range(16)), list(range(16))
    a.shuffle(xs)
    b.shuffle(ys)
    assert xs == ys


@given(st.integers(min_value=0, max_value=2**64 - 1), st.integers(1, 1000))
def test_randbelow_in_range(seed, bound):
    rng = GameRng(seed)
    for _ in range(5):
        assert 0 <= rng.randbelow(bound) < bound


@given(st.integers(min_value=0, max_value=2**64 - 1))
def test_random_unit_interval(seed):
    value = GameRng(seed).random()
    assert 0.0 <= value < 1.0


def test_randbelow_covers_small_range():
    rng = GameRng(1)
    seen = {rng.randbelow(3) for _ in range(200)}
    assert seen == {0, 1, 2}
