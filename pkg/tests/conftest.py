import pytest

import config
from groups import AbelianGroup, symmetric_group
from hadamard import Twist

# Initialize the configuration before running tests
config.initialize()


def make_twist(H, K, phases, right_action=None) -> Twist:
    return Twist.from_phases(H, K, phases, right_action=right_action)


@pytest.fixture
def z2():
    return AbelianGroup([2])


@pytest.fixture
def z3():
    return AbelianGroup([3])


@pytest.fixture
def z2z2():
    return AbelianGroup([2, 2])


@pytest.fixture
def s3():
    return symmetric_group(3)


@pytest.fixture
def index4():
    """Twist (0, 0, 0, delta) over Z2 x Z2, delta given in turns"""
    def build(delta: str) -> Twist:
        return make_twist(AbelianGroup([2]), AbelianGroup([2]), ["0", "0", "0", delta])
    return build


@pytest.fixture
def fourier6():
    """Twist (0, 0, 0, 0, chi, xi) over Z2 x Z3"""
    def build(chi: str, xi: str) -> Twist:
        return make_twist(AbelianGroup([2]), AbelianGroup([3]), ["0"] * 4 + [chi, xi])
    return build


@pytest.fixture
def twist_16_7():
    group = AbelianGroup([2, 2])
    return make_twist(group, group, ["0"] * 15 + ["1/2"])


@pytest.fixture
def z3z3():
    def build(xi: str) -> Twist:
        return make_twist(AbelianGroup([3]), AbelianGroup([3]), ["0"] * 8 + [xi])
    return build


@pytest.fixture
def s3_twist(s3):
    return make_twist(AbelianGroup([2]), s3, ["0"] * 11 + ["1/4"])
