"""Tests for twists, twist closures and tropical hulls
"""
import pytest

from linkedgrass.tropical import (DualGraph, TwistCoeffs, apply_twists, auto_concentrate, hull_condition,
                                  integral_tropical_hull, is_concentrated, negative_twist, normalize, tropical_report,
                                  twist, twist_closure, twist_closure_vectors, twist_graph, twist_vector)

W0 = (1, 1, 1)

CONCENTRATED = [(3, 0, 0), (0, 3, 0), (0, 0, 3)]

CLOSURE = {(1, 1, 1), (-1, 2, 2), (2, -1, 2), (2, 2, -1), (3, 0, 0), (0, 3, 0), (0, 0, 3)}


@pytest.fixture()
def triangle():
    return DualGraph(3, [(0, 1), (0, 2), (1, 2)])


def test_laplacian(triangle):
    assert triangle.laplacian().tolist() == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    assert triangle.to_dict()['edges'][0] == {'source': 0, 'target': 1, 'count': 1}


def test_parallel_edges():
    graph = DualGraph.from_multiplicities(2, {(0, 1): 3})
    assert graph.multiplicity(0, 1) == 3
    assert twist(graph, (2, 2), 0) == (-1, 5)


@pytest.mark.parametrize('size,edges', [
    (0, []),
    (2, [(0, 0), (0, 1)]),
    (2, [(0, 2)]),
    (3, [(0, 1)]),
])
def test_invalid_dual_graphs(size, edges):
    with pytest.raises(ValueError):
        DualGraph(size, edges)


def test_twists(triangle):
    assert twist(triangle, W0, 0) == (-1, 2, 2)
    assert negative_twist(triangle, twist(triangle, W0, 0), 0) == W0
    assert apply_twists(triangle, W0, (0, 1, 1)) == (3, 0, 0)
    assert apply_twists(triangle, W0, (2, 2, 2)) == W0


def test_normalize():
    assert normalize([3, 5, 4]) == (0, 2, 1)
    assert normalize([-1, 0]) == (0, 1)


def test_twist_vectors(triangle):
    assert twist_vector(triangle, W0, (3, 0, 0)) == (0, 1, 1)
    assert twist_vector(triangle, W0, W0) == (0, 0, 0)
    assert twist_vector(DualGraph(1, []), (4,), (4,)) == (0,)


def test_unreachable_multidegrees():
    graph = DualGraph.from_multiplicities(2, {(0, 1): 2})
    with pytest.raises(ValueError):
        twist_vector(graph, (1, 1), (2, 0))
    with pytest.raises(ValueError):
        twist_vector(graph, (1, 1), (2, 1))


def test_concentration(triangle):
    assert all(is_concentrated(triangle, w, v) for v, w in enumerate(CONCENTRATED))
    assert not is_concentrated(triangle, W0, 0)


def test_twist_coefficients(triangle):
    coeffs = TwistCoeffs.from_multidegrees(triangle, W0, CONCENTRATED)
    assert coeffs.rows() == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert coeffs == TwistCoeffs([[5, 6, 6], [1, 0, 1], [1, 1, 0]])
    with pytest.raises(ValueError):
        TwistCoeffs([[0, 1]])


def test_twist_closure(triangle):
    coeffs = TwistCoeffs.from_multidegrees(triangle, W0, CONCENTRATED)
    assert len(twist_closure_vectors(coeffs)) == 7
    assert set(twist_closure(triangle, W0, coeffs)) == CLOSURE
    assert hull_condition(coeffs)


def test_closure_equals_hull(triangle):
    coeffs = TwistCoeffs.from_multidegrees(triangle, W0, CONCENTRATED)
    hull = integral_tropical_hull(coeffs.rows())
    assert hull == twist_closure_vectors(coeffs)


def test_hull_of_collinear_points():
    assert integral_tropical_hull([(0, 0), (0, 3)]) == [(0, 0), (0, 1), (0, 2), (0, 3)]
    assert integral_tropical_hull([(0, 0, 0)]) == [(0, 0, 0)]
    with pytest.raises(ValueError):
        integral_tropical_hull([])


def test_hull_condition_fails():
    # a[2][0] - a[2][1] < a[0][0] - a[0][1]
    assert not hull_condition(TwistCoeffs([[0, 0, 1], [1, 0, 1], [0, 1, 0]]))


def test_auto_concentrate(triangle):
    assert auto_concentrate(triangle, CONCENTRATED, 1)[0] == (5, -1, -1)
    assert auto_concentrate(triangle, CONCENTRATED, 0) == CONCENTRATED
    with pytest.raises(ValueError):
        auto_concentrate(triangle, CONCENTRATED, -1)


def test_twist_graph(triangle):
    coeffs = TwistCoeffs.from_multidegrees(triangle, W0, CONCENTRATED)
    graph = twist_graph(triangle, W0, twist_closure_vectors(coeffs))
    assert graph.number_of_nodes() == 7
    assert graph.has_edge(W0, (-1, 2, 2))
    assert graph.edges[W0, (-1, 2, 2)]['vertex'] == 0
    assert graph.has_edge((2, -1, 2), (0, 0, 3))


def test_tropical_report(triangle):
    report = tropical_report(triangle, W0, CONCENTRATED)
    assert report['is_concentrated'] == [True, True, True]
    assert report['hull_condition']
    assert report['closure_equals_hull']
    assert set(tuple(w) for w in report['closure']) == CLOSURE
    assert report['twist_coefficients'] == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
