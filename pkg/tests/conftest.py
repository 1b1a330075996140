import random

import pytest

from gammahg.dwork import build_basis
from gammahg.gamma import make_gamma
from gammahg.toric import import_model

# the model matrices used throughout the worked examples
CURVE_A = [[1, 1, 1, 1], [2, 0, 2, 1], [0, 3, 2, 0], [0, 1, 1, 0]]
CHEB_A = [
    [1, 1, 1, 1, 1],
    [1, 0, 5, 0, 0],
    [1, 0, 0, 3, 0],
    [1, 0, 0, 0, 2],
    [0, -1, 0, 0, 0],
]

CURVE_GAMMA = (-5, -2, 3, 4)
CHEB_GAMMA = (-30, -1, 6, 10, 15)


@pytest.fixture(scope="session")
def curve_model():
    return import_model(make_gamma(CURVE_GAMMA), CURVE_A)


@pytest.fixture(scope="session")
def cheb_model():
    return import_model(make_gamma(CHEB_GAMMA), CHEB_A)


@pytest.fixture(scope="session")
def curve_basis(curve_model):
    return build_basis(curve_model)


@pytest.fixture(scope="session")
def cheb_basis(cheb_model):
    return build_basis(cheb_model)


def random_gamma(rng: random.Random, length_range=(3, 8), bound=30, prime=True, nontrivial=True):
    """A random valid gamma vector (entries nonzero, sum zero), optionally prime
    and with a nontrivial family parameter."""
    from gammahg.errors import TrivialSystem
    from gammahg.gamma import family_parameter

    while True:
        l = rng.randint(*length_range)
        entries = [rng.choice([x for x in range(-bound, bound + 1) if x != 0]) for _ in range(l - 1)]
        last = -sum(entries)
        if last == 0 or abs(last) > bound:
            continue
        entries.append(last)
        g = make_gamma(entries)
        if prime and not g.is_prime:
            continue
        if nontrivial:
            try:
                family_parameter(g)
            except TrivialSystem:
                continue
        return g
