from lossnet.rng import (
    STREAM_ARRIVALS,
    STREAM_DELAYS,
    RandomStream,
    mix64,
    substream_state,
)


def test_known_sequence_from_seed_1234567():
    # reference outputs of the standard splitmix64 stream
    s = RandomStream(1234567)
    assert [s.next_u64() for _ in range(4)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
        4593380528125082431,
    ]


def test_known_sequence_from_seed_0():
    s = RandomStream(0)
    assert [s.next_u64() for _ in range(3)] == [
        16294208416658607535,
        7960286522194355700,
        487617019471545679,
    ]


def test_mix64_fixed_points():
    assert mix64(0) == 0
    assert mix64(1) == 6238072747940578789


def test_outputs_fit_in_64_bits():
    s = RandomStream(2**64 - 1)
    for _ in range(100):
        assert 0 <= s.next_u64() < 2**64


def test_doubles_in_unit_interval():
    s = RandomStream(99)
    xs = [s.next_double() for _ in range(10000)]
    assert all(0.0 <= x < 1.0 for x in xs)
    mean = sum(xs) / len(xs)
    assert abs(mean - 0.5) < 0.02


def test_same_state_same_stream():
    a = RandomStream(314159)
    b = RandomStream(314159)
    assert [a.next_u64() for _ in range(50)] == [b.next_u64() for _ in range(50)]


def test_substreams_are_distinct():
    seen = set()
    for rep in range(20):
        for stream in range(5):
            seen.add(substream_state(42, rep, stream))
    assert len(seen) == 100


def test_substream_derivation_is_stable():
    assert substream_state(42, 0, STREAM_ARRIVALS) == 6332618229526065668
    assert substream_state(42, 0, 1) == 17630415256238047317
    assert substream_state(42, 1, STREAM_ARRIVALS) == 18201609923829866926


def test_neighboring_seeds_decorrelated():
    # crude but effective: streams from adjacent seeds should not track
    a = RandomStream.from_seed(1000, 0, 0)
    b = RandomStream.from_seed(1001, 0, 0)
    matches = sum(
        (a.next_double() < 0.5) == (b.next_double() < 0.5) for _ in range(1000)
    )
    assert 350 < matches < 650


def test_doubles_do_not_collide():
    # 53-bit resolution: a thousand consecutive draws should all differ
    s = RandomStream(7)
    xs = {s.next_double() for _ in range(1000)}
    assert len(xs) == 1000
