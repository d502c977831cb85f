from __future__ import annotations

import random

import pytest

from lcsk import Problem, validate


def random_problem(
    rng: random.Random,
    max_n: int = 40,
    sigmas: tuple[int, ...] = (1, 2, 4, 20),
    k_max: int = 8,
    min_n: int = 0,
) -> Problem:
    sigma = rng.choice(sigmas)
    m = rng.randint(min_n, max_n)
    n = rng.randint(min_n, max_n)
    k = rng.randint(1, k_max)
    a = "".join(chr(97 + rng.randrange(sigma)) for _ in range(m))
    b = "".join(chr(97 + rng.randrange(sigma)) for _ in range(n))
    return validate(a, b, k)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
