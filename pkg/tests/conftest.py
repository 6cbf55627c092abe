"""
Fixtures over the hand-built nets of ``tests.nets``.
"""

import pytest

from src.core.net import Net
from tests.nets import axiom_net, box_net, four_boxes_net, g_double_prime, g_prime, nested_net, shared_quest_net


@pytest.fixture
def ax() -> Net:
    return axiom_net()


@pytest.fixture
def boxed() -> Net:
    return box_net()


@pytest.fixture
def shared() -> Net:
    return shared_quest_net()


@pytest.fixture
def nested() -> Net:
    return nested_net()


@pytest.fixture
def gp() -> Net:
    return g_prime()


@pytest.fixture
def gpp() -> Net:
    return g_double_prime()


@pytest.fixture
def four_boxes() -> Net:
    return four_boxes_net()
