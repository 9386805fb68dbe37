"""Tests for configurations built from small trees
"""
import pytest

from linkedgrass.rep import build_M, require_lli
from linkedgrass.strata import components, r1_components_meet

from .. import small_trees, tree_configuration
from . import CommonLLIConfigurationTestSuite

TREES = small_trees()


@pytest.fixture(params=TREES, ids=['tree{}'.format(i) for i in range(len(TREES))])
def tree(request):
    return request.param


@pytest.fixture()
def configuration(tree):
    return tree_configuration(tree)


@pytest.fixture()
def expected(tree):
    return {'d_v': {v: 1 for v in tree.nodes},
            'strata': {},
            'components': {1: len(tree)}}


class TestTreeConfigurations(CommonLLIConfigurationTestSuite):

    ORACLE_FIELD = 2
    MAX_RANK = 1

    def test_associated_tree_is_the_input_tree(self, tree, configuration):
        geometry = require_lli(build_M(configuration))
        assert sorted(tuple(sorted(e)) for e in geometry.tree.edges) == sorted(tuple(sorted(e)) for e in tree.edges)

    def test_rank_one_components_are_the_vertices(self, tree, configuration):
        geometry = require_lli(build_M(configuration))
        labels = components(1, geometry, {v: 1 for v in tree.nodes})
        assert sorted(label.as_tuple().index(1) for label in labels) == sorted(tree.nodes)

    def test_rank_one_components_meet_along_edges(self, tree, configuration):
        geometry = require_lli(build_M(configuration))
        d_v = {v: 1 for v in tree.nodes}
        for u in tree.nodes:
            for v in tree.nodes:
                if u < v:
                    assert r1_components_meet(u, v, geometry, d_v) == tree.has_edge(u, v)
