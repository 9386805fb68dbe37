"""Tests for representations of the quiver of a configuration
"""
import numpy as np
import pytest

from linkedgrass import exc
from linkedgrass.dvr import config_local_model
from linkedgrass.linalg import FieldMatrix, Subspace
from linkedgrass.rep import (SubRep, ambient_multiplicities, apartment_exponents, build_M, chain_rep, decompose,
                             generate, global_basis, hom_dim, is_projective, is_subrep, iter_paths,
                             linked_chain_equivalence, local_linear_independence, relation_report, require_lli)
from linkedgrass.strata import phi

from . import chain_configuration, two_point_configuration

G = [[1, 0], [0, 0]]
H = [[0, 0], [0, 1]]


@pytest.fixture()
def two_point():
    return build_M(two_point_configuration())


def test_ambient_representation_shape(two_point):
    assert two_point.dims == [4, 4]
    assert sorted(two_point.maps) == [(0, 1), (1, 0)]
    assert two_point.maps[(0, 1)].rank() == 3
    assert two_point.maps[(1, 0)].rank() == 1


def test_relations_hold(two_point):
    assert not any(entry['violation'] for entry in relation_report(two_point))
    assert not any(entry['violation'] for entry in relation_report(build_M(chain_configuration())))


def test_iter_paths():
    quiver = build_M(chain_configuration()).quiver
    paths = list(iter_paths(quiver, 2))
    assert (0, 1) in paths
    assert (0, 1, 2) in paths
    assert (0, 1, 0) in paths
    assert all(2 <= len(path) <= 3 for path in paths)


def test_local_linear_independence(two_point):
    verdicts, overall = local_linear_independence(two_point)
    assert overall
    assert verdicts == {0: True, 1: True}


def test_three_cycle_is_not_lli():
    configuration = config_local_model(3, 3)
    verdicts, overall = local_linear_independence(configuration)
    assert not overall
    with pytest.raises(exc.NotLocallyIndependent):
        require_lli(build_M(configuration))


def test_subrepresentation_check(two_point):
    e = [[1, 0, 0, 0], [0, 1, 0, 0]]
    assert not is_subrep(two_point, [Subspace(e, 4, 2), Subspace([[0, 0, 1, 0], [0, 0, 0, 1]], 4, 2)])
    assert is_subrep(two_point, [Subspace(e, 4, 2), Subspace(e, 4, 2)])


def test_decompose_full_and_zero(two_point):
    full = decompose(two_point, two_point.full())
    assert full.vertex_multiplicities.values == {0: 3, 1: 1}
    assert full.is_projective
    zero = decompose(two_point, two_point.zero())
    assert zero.summands() == []
    assert ambient_multiplicities(two_point) == {0: 3, 1: 1}


def test_decompose_non_projective_point(two_point):
    # P_0 generated by e_2, plus e_1 and e_3 killed by the arrows leaving them
    line = Subspace([[0, 1, 0, 0]], 4, 2)
    point = SubRep(two_point, [Subspace([[1, 0, 0, 0], [0, 1, 0, 0]], 4, 2), line + Subspace([[0, 0, 1, 0]], 4, 2)])
    assert is_subrep(two_point, point)
    decomposition = decompose(two_point, point)
    assert not decomposition.is_projective
    assert decomposition.edge_multiplicities.values == {(0, 1): 1, (1, 0): 1}
    assert decomposition.vertex_multiplicities.values == {0: 1, 1: 0}
    assert phi(two_point, point).values == {(0, 1): 1, (1, 0): 0}


def test_decompose_rejects_non_subrepresentations(two_point):
    spaces = [Subspace.zero(4, 2), Subspace([[1, 0, 0, 0]], 4, 2)]
    with pytest.raises(exc.NotSubrepresentation):
        decompose(two_point, spaces)


def test_generate(two_point):
    point = generate(two_point, [(0, [0, 1, 0, 0])])
    assert point.dimension_vector == [1, 1]
    assert point[1] == Subspace([[0, 1, 0, 0]], 4, 2)
    assert is_projective(two_point, point)
    assert decompose(two_point, point).vertex_multiplicities.values == {0: 1, 1: 0}


@pytest.mark.parametrize('seed', range(25))
def test_decompose_random_generated_subreps(seed):
    rng = np.random.default_rng(seed)
    rep = build_M(two_point_configuration(3))
    geometry = require_lli(rep)
    generators = []
    for _ in range(int(rng.integers(1, 4))):
        v = int(rng.integers(2))
        vector = rng.integers(0, 3, size=rep.dims[v])
        while not vector.any():
            vector = rng.integers(0, 3, size=rep.dims[v])
        generators.append((v, vector.tolist()))
    subrep = generate(rep, generators)
    decomposition = decompose(rep, subrep)
    vertex = decomposition.vertex_multiplicities.values
    edge = decomposition.edge_multiplicities.values
    assert min(vertex.values()) >= 0
    assert min(edge.values()) >= 0
    for u in geometry.vertices:
        assert sum(vertex.values()) + sum(m for e, m in edge.items() if u in geometry.half_tree[e]) == subrep[u].dim
    if len(set(subrep.dimension_vector)) == 1:
        assert edge[(0, 1)] == edge[(1, 0)]


def test_global_basis_and_apartment(two_point):
    zeta = global_basis(two_point)
    assert [len(zeta[v]) for v in sorted(zeta)] == [3, 1]
    columns, rows = apartment_exponents(two_point)
    assert len(columns) == 4
    assert rows == [[0, 0, 0, 1], [0, 0, 0, 0]]


def test_hom_dimensions(two_point):
    assert hom_dim(two_point, two_point) == 16
    point = generate(two_point, [(1, [1, 0, 0, 0])])
    assert hom_dim(point.as_rep(), two_point) == 4


def test_chain_rep():
    rep = chain_rep([FieldMatrix(G, 2)], [FieldMatrix(H, 2)], 2)
    assert rep.dims == [2, 2]
    assert rep.quiver.sorted_arrows() == [(0, 1), (1, 0)]


def test_linked_chain_equivalence():
    configuration = linked_chain_equivalence([FieldMatrix(G, 2)], [FieldMatrix(H, 2)], 2)
    assert len(configuration) == 2
    assert configuration.d == 2
    assert configuration.is_convex()


@pytest.mark.parametrize('g,h', [
    ([[1, 0], [0, 1]], [[0, 0], [0, 0]]),
    ([[1, 0], [0, 0]], [[1, 0], [0, 0]]),
    ([[1, 0], [0, 0]], [[0, 0], [0, 0]]),
])
def test_linked_chain_equivalence_rejects_non_linked_chains(g, h):
    with pytest.raises(exc.PreconditionFailed):
        linked_chain_equivalence([FieldMatrix(g, 2)], [FieldMatrix(h, 2)], 2)
