import random

import pytest

from thetakit import ModularParameter


@pytest.fixture
def rng():
    return random.Random(20240811)


def random_tau(rng, re=(-0.5, 0.5), im=(0.5, 2.0)):
    return ModularParameter(complex(rng.uniform(*re), rng.uniform(*im)))


def random_point(rng, box=1.0):
    return complex(rng.uniform(-box, box), rng.uniform(-box, box))
