import random

import pytest

# the running example: 0010, 0100, 0111, 1101
FOUR = [0b0010, 0b0100, 0b0111, 0b1101]

# keys whose trie holds the handle/extent pairs 0010 -> 001001 and
# 00100110 -> 00100110100100
FIG_W = 16
FIG_KEYS = [0b0010010000000000, 0b0010011010010001, 0b0010011010010010]

SIZES = (1, 2, 3, 5, 17, 64, 200)


def random_sets(count, w=8, seed=0, sizes=SIZES):
    rng = random.Random(seed)
    return [sorted(rng.sample(range(1 << w), sizes[i % len(sizes)])) for i in range(count)]


@pytest.fixture
def four():
    return list(FOUR)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
