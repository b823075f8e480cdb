import random

import pytest

from fanocheck.fields import Field


@pytest.fixture
def F5():
    return Field.prime(5)


@pytest.fixture
def F101():
    return Field.prime(101)


@pytest.fixture
def QQ():
    return Field.rationals()


@pytest.fixture
def rng():
    return random.Random(0xFA70)
