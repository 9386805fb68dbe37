"""Tests for the chain L_0 ⊃ L_1 ⊃ L_2 in rank two
"""
import pytest

from .. import chain_configuration
from . import CommonLLIConfigurationTestSuite


@pytest.fixture()
def configuration():
    return chain_configuration()


@pytest.fixture()
def expected():
    return {'d_v': {0: 1, 1: 0, 2: 1},
            'strata': {1: 5},
            'components': {1: 3}}


class TestChainConfiguration(CommonLLIConfigurationTestSuite):
    pass
