import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def integer_partitions(n, largest=None):
    """Partitions of n as non-increasing size tuples."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - k, k):
            yield (k,) + rest


def random_labelled_partition(shape, rng):
    labels = list(rng.permutation(sum(shape)) + 1)
    parts, start = [], 0
    for size in shape:
        parts.append(sorted(int(q) for q in labels[start:start + size]))
        start += size
    return parts


def as_set_partition(parts):
    return frozenset(frozenset(p) for p in parts)


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
