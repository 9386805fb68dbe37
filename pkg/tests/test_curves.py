"""Tests for sections and twist maps on rational nodal curves
"""
import pytest

from linkedgrass import exc
from linkedgrass.curves import (Node, RationalNodalCurve, curve_example_report, cycle_curve, example_shift,
                                gamma_s_exponents, h0, special_fiber_rep, twist_map, twist_paths_agree)
from linkedgrass.rep import local_linear_independence
from linkedgrass.tropical import TwistCoeffs, negative_twist

W0 = (1, 1, 1)


@pytest.fixture()
def triangle_curve():
    return cycle_curve(1, 1, 1)


def concentrated_coeffs(curve, w0=W0):
    graph = curve.dual_graph()
    return TwistCoeffs.from_multidegrees(graph, w0, [negative_twist(graph, w0, v) for v in graph.vertices])


def test_cycle_curve(triangle_curve):
    assert triangle_curve.genus() == 1
    assert triangle_curve.p == 7
    assert [(n.first, n.first_point, n.second, n.second_point) for n in triangle_curve.nodes] == [
        (0, 0, 1, 0), (0, 1, 2, 0), (1, 1, 2, 1)]
    assert triangle_curve.node_polynomial(2, 0) == [1, 6]
    assert triangle_curve.dual_graph().laplacian().tolist() == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]


def test_curve_validation():
    with pytest.raises(ValueError):
        cycle_curve(4, 4, 0, p=7)
    with pytest.raises(ValueError):
        cycle_curve(-1, 1, 1)
    with pytest.raises(ValueError):
        RationalNodalCurve(2, [Node(0, 0, 1, 0), Node(0, 0, 1, 1)], 5)
    with pytest.raises(ValueError):
        RationalNodalCurve(2, [Node(0, 0, 1, 0, constant=5)], 5)
    with pytest.raises(ValueError):
        RationalNodalCurve(2, [Node(0, 0, 1, 0)], 4)


def test_sections(triangle_curve):
    sections = h0(triangle_curve, W0)
    assert sections.dim == 3
    assert sections.h1() == 0


def test_sections_of_negative_degree(triangle_curve):
    sections = h0(triangle_curve, (-1, 0, 0))
    assert sections.dim == 0
    assert sections.h1() == 1


def test_example_shift(triangle_curve):
    assert example_shift(triangle_curve, W0) == (0, 0, 0)
    assert example_shift(cycle_curve(2, 2, 2), W0) == (2, 2, 2)


@pytest.mark.parametrize('u', [0, 1, 2])
def test_twist_from_w0_is_an_isomorphism(triangle_curve, u):
    assert twist_map(triangle_curve, W0, u).is_invertible()


def test_twist_orders_agree(triangle_curve):
    assert twist_paths_agree(triangle_curve, W0, (0, 0, 0), (1, 1, 0))
    with pytest.raises(ValueError):
        twist_paths_agree(triangle_curve, W0, (0, 0, 0), (1, 1, 1))


def test_special_fiber(triangle_curve):
    fiber = special_fiber_rep(triangle_curve, W0, concentrated_coeffs(triangle_curve))
    assert len(fiber.multidegrees) == 7
    assert len(fiber.members) == 4
    assert fiber.rep.dims == [3, 3, 3, 3]
    assert fiber.merge_map[fiber.index_of(W0)] == fiber.merge_map[fiber.index_of((-1, 2, 2))]


def test_special_fiber_requires_hull_condition(triangle_curve):
    with pytest.raises(exc.PreconditionFailed):
        special_fiber_rep(triangle_curve, W0, TwistCoeffs([[0, 0, 1], [1, 0, 1], [0, 1, 0]]))


def test_gamma_s_configuration(triangle_curve):
    configuration = gamma_s_exponents(triangle_curve, W0, concentrated_coeffs(triangle_curve))
    assert len(configuration) == 4
    assert configuration.d == 3
    assert local_linear_independence(configuration)[1]


def test_curve_example_report():
    report = curve_example_report(1, 1, 1)
    assert report['h0'] == [3] * 7
    assert report['expected_h0'] == 3
    assert report['h1_vanishes']
    assert report['is_concentrated'] == [True, True, True]
    assert report['boundary_isomorphisms'] == [True, True, True]
    assert report['image_dims'] == report['expected_image_dims'] == [2, 2, 2]
    assert report['kernel_images_independent']
    assert len(report['classes']) == 4
    assert report['locally_linearly_independent']
    assert report['star']
    assert len(report['exponents']) == 4
