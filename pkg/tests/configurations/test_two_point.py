"""Tests for the two-point configuration L_1 = R^4, L_2 = t^-1 R e_1 + R e_2 + R e_3 + R e_4
"""
import pytest

from linkedgrass.rep import build_M, require_lli
from linkedgrass.strata import enumerate_strata, stratum_decomposition, stratum_dim
from linkedgrass.types import StrataTuple

from .. import two_point_configuration
from . import CommonLLIConfigurationTestSuite


@pytest.fixture()
def configuration():
    return two_point_configuration()


@pytest.fixture()
def expected():
    return {'d_v': {0: 3, 1: 1},
            'strata': {1: 3, 2: 3, 3: 3},
            'components': {1: 2, 2: 2, 3: 2}}


class TestTwoPointConfiguration(CommonLLIConfigurationTestSuite):

    def test_rank_two_strata(self, configuration):
        geometry = require_lli(build_M(configuration))
        strata = enumerate_strata(2, geometry, {0: 3, 1: 1})
        assert [s.as_tuple() for s in strata] == [(1, 0), (1, 1), (2, 0)]

    def test_rank_two_dimensions(self, configuration):
        geometry = require_lli(build_M(configuration))
        dims = {}
        for values in [(1, 0), (1, 1), (2, 0)]:
            stratum = StrataTuple.from_sequence([(0, 1), (1, 0)], values)
            dims[values] = stratum_dim(stratum_decomposition(stratum, 2, geometry), {0: 3, 1: 1}, geometry)
        assert dims == {(1, 0): 3, (1, 1): 4, (2, 0): 4}
