import random
from itertools import combinations

import pytest

from focal_lab.core import QaryCode, UniformFamily


def brute_focal_exists(items, r, kind):
    """Definition-level oracle: scan every focus and every (r-1)-set of other members."""
    items = [tuple(x) for x in items]
    for a, focus in enumerate(items):
        others = [x for i, x in enumerate(items) if i != a]
        for members in combinations(others, r - 1):
            if kind == "family":
                counts = [sum(v in m for m in members) for v in focus]
            else:
                counts = [sum(m[i] == focus[i] for m in members) for i in range(len(focus))]
            if all(c >= r - 2 for c in counts):
                return True
    return False


def random_family(rng: random.Random, n: int, k: int, size: int) -> UniformFamily:
    pool = list(combinations(range(1, n + 1), k))
    return UniformFamily(n, k, tuple(rng.sample(pool, min(size, len(pool)))))


def random_code(rng: random.Random, n: int, q: int, size: int) -> QaryCode:
    words = set()
    while len(words) < min(size, q ** n):
        words.add(tuple(rng.randint(1, q) for _ in range(n)))
    return QaryCode(n, q, tuple(words))


@pytest.fixture
def rng():
    return random.Random(12345)
