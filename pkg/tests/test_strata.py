"""Tests for the stratification of the special fiber
"""
import pytest

from linkedgrass import exc
from linkedgrass.linalg import Subspace
from linkedgrass.rep import SubRep, build_M, require_lli
from linkedgrass.strata import (admissible, brute_force_points, closure_leq, component_strata, components,
                                enumerate_strata, grassmannian_points, oracle_report, phi, realize_stratum, specialize,
                                strata_summary, stratum_decomposition)
from linkedgrass.types import ComponentLabel, StrataTuple

from . import two_point_configuration

EDGES = [(0, 1), (1, 0)]


def stratum(*values):
    return StrataTuple.from_sequence(EDGES, values)


@pytest.fixture()
def two_point():
    return build_M(two_point_configuration())


@pytest.mark.parametrize('d,r,q,count', [
    (3, 1, 2, 7),
    (4, 2, 2, 35),
    (4, 2, 3, 130),
    (4, 0, 2, 1),
    (4, 4, 5, 1),
])
def test_grassmannian_point_counts(d, r, q, count):
    points = list(grassmannian_points(d, r, q))
    assert len(points) == count
    assert len(set(points)) == count
    assert all(point.dim == r for point in points)


def test_admissibility(two_point):
    geometry = require_lli(two_point)
    d_v = {0: 3, 1: 1}
    assert admissible(stratum(1, 0), 2, geometry, d_v)
    assert not admissible(stratum(0, 0), 2, geometry, d_v)
    assert not admissible(stratum(2, 1), 2, geometry, d_v)
    assert not admissible(stratum(1, 0), 5, geometry, d_v)
    assert not admissible(StrataTuple({(0, 1): 1}), 2, geometry, d_v)


def test_decomposition_of_a_stratum(two_point):
    geometry = require_lli(two_point)
    decomposition = stratum_decomposition(stratum(1, 0), 2, geometry)
    assert decomposition.vertex_multiplicities.values == {0: 1, 1: 0}
    assert decomposition.edge_multiplicities.values == {(0, 1): 1, (1, 0): 1}
    assert decomposition.summands() == [('P', 0, 1), ('R', (0, 1), 1), ('R', (1, 0), 1)]


def test_components_and_generic_tuples(two_point):
    geometry = require_lli(two_point)
    labels = components(2, geometry, {0: 3, 1: 1})
    assert [label.as_tuple() for label in labels] == [(1, 1), (2, 0)]
    assert component_strata(ComponentLabel({0: 1, 1: 1}), geometry) == stratum(1, 1)
    assert component_strata(ComponentLabel({0: 2, 1: 0}), geometry) == stratum(2, 0)


def test_no_strata_outside_the_grassmannian(two_point):
    geometry = require_lli(two_point)
    assert enumerate_strata(5, geometry, {0: 3, 1: 1}) == []
    assert components(5, geometry, {0: 3, 1: 1}) == []


def test_closure_order():
    assert closure_leq(stratum(1, 0), stratum(2, 0))
    assert closure_leq(stratum(1, 0), stratum(1, 1))
    assert not closure_leq(stratum(2, 0), stratum(1, 1))
    with pytest.raises(ValueError):
        closure_leq(stratum(1, 0), StrataTuple({(0, 2): 1, (2, 0): 0}))


def test_phi_requires_a_subrepresentation(two_point):
    with pytest.raises(exc.NotSubrepresentation):
        phi(two_point, [Subspace.zero(4, 2), Subspace([[1, 0, 0, 0]], 4, 2)])


def test_specialize_trades_r_summands_for_a_projective(two_point):
    point = SubRep(two_point, [Subspace([[1, 0, 0, 0], [0, 1, 0, 0]], 4, 2),
                               Subspace([[0, 1, 0, 0], [0, 0, 1, 0]], 4, 2)])
    assert phi(two_point, point) == stratum(1, 0)
    special = specialize(two_point, point, (0, 1))
    assert special.dimension_vector == [2, 2]
    assert phi(two_point, special) == stratum(2, 0)
    assert special[1] == point[1]


def test_specialize_needs_both_edge_summands(two_point):
    point = realize_stratum(stratum(2, 0), 2, two_point)
    with pytest.raises(exc.PreconditionFailed):
        specialize(point.rep, point, (0, 1))
    with pytest.raises(ValueError):
        specialize(point.rep, point, (0, 0))


def test_realize_inadmissible_tuple(two_point):
    with pytest.raises(exc.PreconditionFailed):
        realize_stratum(stratum(0, 0), 2, two_point)


def test_brute_force_rank_one_count():
    points = brute_force_points(two_point_configuration(), 1)
    assert len(points) == 29
    report = oracle_report(two_point_configuration(), 1)
    counts = {tuple(sorted(entry['tuple'].items())): entry['points'] for entry in report['strata']}
    assert counts == {(('0->1', 0), ('1->0', 0)): 7,
                      (('0->1', 0), ('1->0', 1)): 8,
                      (('0->1', 1), ('1->0', 0)): 14}
    assert report['points'] == 29
    assert report['image_matches']
    assert report['components_match']


def test_brute_force_budget():
    with pytest.raises(exc.BudgetExceeded):
        brute_force_points(two_point_configuration(), 1, budget=10)


def test_brute_force_in_another_characteristic():
    report = oracle_report(two_point_configuration(), 1, q=3)
    assert report['q'] == 3
    assert report['image_matches']


def test_strata_summary(two_point):
    summary = strata_summary(two_point, 2)
    assert [entry['tuple'] for entry in summary] == [{'0->1': 1, '1->0': 0}, {'0->1': 1, '1->0': 1},
                                                     {'0->1': 2, '1->0': 0}]
    assert [entry['dimension'] for entry in summary] == [3, 4, 4]
    assert [entry['component'] for entry in summary] == [False, True, True]
    assert summary[0]['summands'][1] == {'kind': 'R', 'index': [0, 1], 'multiplicity': 1}
