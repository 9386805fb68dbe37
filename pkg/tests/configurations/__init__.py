from typing import Dict, Optional

import numpy as np
import pytest

from linkedgrass import exc
from linkedgrass.dvr import LatticeConfiguration
from linkedgrass.rep import (ambient_multiplicities, build_M, decompose, is_projective, is_subrep, lift_to_subrep,
                             local_linear_independence, require_lli)
from linkedgrass.strata import (brute_force_points, component_strata, components, enumerate_strata, maximal_strata,
                                oracle_report, phi, realize_stratum, stratum_decomposition, stratum_dim)


class CommonLLIConfigurationTestSuite(object):
    """Checks every locally linearly independent configuration must pass

    Concrete classes provide a `configuration` fixture and an `expected`
    fixture with the multiplicities `d_v` and, per rank, the number of
    `strata` and `components`.
    """

    ORACLE_FIELD = 3
    MAX_RANK = None  # type: Optional[int]

    @classmethod
    def ranks(cls, configuration):
        # type: (LatticeConfiguration) -> range
        top = configuration.d if cls.MAX_RANK is None else min(configuration.d, cls.MAX_RANK + 1)
        return range(1, top)

    def test_configuration_is_convex_and_lli(self, configuration):
        # type: (LatticeConfiguration) -> None
        assert configuration.is_convex()
        verdicts, overall = local_linear_independence(configuration)
        assert overall
        assert all(verdicts.values())

    def test_ambient_multiplicities(self, configuration, expected):
        # type: (LatticeConfiguration, Dict) -> None
        d_v = ambient_multiplicities(build_M(configuration))
        assert d_v == expected['d_v']
        assert sum(d_v.values()) == configuration.d

    def test_ambient_representation_is_projective(self, configuration):
        rep = build_M(configuration)
        assert is_projective(rep, rep.full())

    def test_strata_and_component_counts(self, configuration, expected):
        geometry = require_lli(build_M(configuration))
        d_v = expected['d_v']
        for r, count in expected['strata'].items():
            assert len(enumerate_strata(r, geometry, d_v)) == count
        for r, count in expected['components'].items():
            assert len(components(r, geometry, d_v)) == count

    def test_components_are_the_maximal_strata(self, configuration):
        geometry = require_lli(build_M(configuration))
        d_v = ambient_multiplicities(build_M(configuration))
        for r in self.ranks(configuration):
            strata = enumerate_strata(r, geometry, d_v)
            tops = sorted(component_strata(label, geometry) for label in components(r, geometry, d_v))
            assert maximal_strata(strata) == tops

    def test_components_have_pure_dimension(self, configuration):
        geometry = require_lli(build_M(configuration))
        d_v = ambient_multiplicities(build_M(configuration))
        for r in self.ranks(configuration):
            for label in components(r, geometry, d_v):
                decomposition = stratum_decomposition(component_strata(label, geometry), r, geometry)
                assert decomposition.is_projective
                assert stratum_dim(decomposition, d_v, geometry) == r * (configuration.d - r)

    def test_non_maximal_strata_are_smaller(self, configuration):
        geometry = require_lli(build_M(configuration))
        d_v = ambient_multiplicities(build_M(configuration))
        for r in self.ranks(configuration):
            tops = set(component_strata(label, geometry) for label in components(r, geometry, d_v))
            for stratum in enumerate_strata(r, geometry, d_v):
                if stratum not in tops:
                    decomposition = stratum_decomposition(stratum, r, geometry)
                    assert stratum_dim(decomposition, d_v, geometry) < r * (configuration.d - r)

    def test_realized_points_have_the_requested_type(self, configuration):
        geometry = require_lli(build_M(configuration))
        d_v = ambient_multiplicities(build_M(configuration))
        for r in self.ranks(configuration):
            for stratum in enumerate_strata(r, geometry, d_v):
                point = realize_stratum(stratum, r, configuration, seed=1)
                assert point.dimension_vector == [r] * len(configuration)
                assert is_subrep(point.rep, point)
                assert phi(point.rep, point) == stratum
                assert decompose(point.rep, point) == stratum_decomposition(stratum, r, geometry)

    def test_component_witnesses_are_projective(self, configuration):
        geometry = require_lli(build_M(configuration))
        d_v = ambient_multiplicities(build_M(configuration))
        for r in self.ranks(configuration):
            for label in components(r, geometry, d_v):
                point = realize_stratum(component_strata(label, geometry), r, configuration)
                assert is_projective(point.rep, point)
                assert decompose(point.rep, point).vertex_multiplicities == label

    def test_lift_recovers_component_points(self, configuration):
        geometry = require_lli(build_M(configuration))
        d_v = ambient_multiplicities(build_M(configuration))
        for r in self.ranks(configuration):
            for label in components(r, geometry, d_v):
                point = realize_stratum(component_strata(label, geometry), r, configuration)
                for v in point.rep.vertices:
                    lifted = lift_to_subrep(point.rep, {v: point[v]})
                    assert lifted[v] == point[v]
                    assert lifted.dimension_vector == [r] * len(configuration)
                    assert is_subrep(point.rep, lifted)

    @pytest.mark.parametrize('seed', range(5))
    def test_lift_from_random_vertex_sets(self, configuration, seed):
        rng = np.random.default_rng(seed)
        geometry = require_lli(build_M(configuration))
        d_v = ambient_multiplicities(build_M(configuration))
        for r in self.ranks(configuration):
            labels = components(r, geometry, d_v)
            label = labels[int(rng.integers(len(labels)))]
            point = realize_stratum(component_strata(label, geometry), r, configuration, seed=seed)
            vertices = point.rep.vertices
            size = int(rng.integers(1, len(vertices) + 1))
            kept = sorted(int(v) for v in rng.choice(vertices, size=size, replace=False))
            lifted = lift_to_subrep(point.rep, {v: point[v] for v in kept})
            assert all(lifted[v] == point[v] for v in kept)
            assert lifted.dimension_vector == [r] * len(configuration)
            assert is_subrep(point.rep, lifted)

    def test_decomposition_of_sampled_points(self, configuration):
        rng = np.random.default_rng(7)
        for r in self.ranks(configuration):
            points = brute_force_points(configuration, r, q=self.ORACLE_FIELD)
            for index in rng.choice(len(points), size=min(20, len(points)), replace=False):
                point = points[int(index)]
                geometry = require_lli(point.rep)
                decomposition = decompose(point.rep, point)
                vertex = decomposition.vertex_multiplicities.values
                edge = decomposition.edge_multiplicities.values
                assert decomposition == stratum_decomposition(phi(point.rep, point), r, geometry)
                for u in geometry.vertices:
                    half_trees = sum(m for e, m in edge.items() if u in geometry.half_tree[e])
                    assert sum(vertex.values()) + half_trees == r
                for s, t in geometry.oriented_edges:
                    assert edge[(s, t)] == edge[(t, s)]
                    assert edge[(s, t)] >= 0

    def test_brute_force_agrees_with_prediction(self, configuration):
        for r in self.ranks(configuration):
            report = oracle_report(configuration, r, q=self.ORACLE_FIELD)
            assert report['q'] == self.ORACLE_FIELD
            assert report['inadmissible'] == []
            assert report['image_matches']
            assert report['components_match']

    def test_inadmissible_tuple_cannot_be_realized(self, configuration):
        geometry = require_lli(build_M(configuration))
        d_v = ambient_multiplicities(build_M(configuration))
        stratum = enumerate_strata(1, geometry, d_v)[0]
        with pytest.raises(exc.PreconditionFailed):
            realize_stratum(stratum, configuration.d + 1, configuration)
