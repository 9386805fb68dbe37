"""Shared configurations and test suites
"""
from typing import Dict, List

import networkx as nx

from linkedgrass.dvr import LatticeConfiguration, config_from_exponents, config_from_tree

TWO_POINT_EXPONENTS = [[0, 0, 0, 0], [-1, 0, 0, 0]]

CHAIN_EXPONENTS = [[0, 0], [1, 0], [2, 0]]

# The center is the standard lattice; each leaf keeps one basis vector and scales the others by t
STAR_EXPONENTS = [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]]


def two_point_configuration(p=2):
    # type: (int) -> LatticeConfiguration
    """L_1 standard and L_2 = t^-1 R e_1 + R e_2 + R e_3 + R e_4
    """
    return config_from_exponents(TWO_POINT_EXPONENTS, p)


def chain_configuration(p=2):
    # type: (int) -> LatticeConfiguration
    return config_from_exponents(CHAIN_EXPONENTS, p)


def star_configuration(p=2):
    # type: (int) -> LatticeConfiguration
    return config_from_exponents(STAR_EXPONENTS, p)


def small_trees():
    # type: () -> List[nx.Graph]
    """Every tree shape on at most five vertices, vertices labelled 0..n-1
    """
    shapes = [nx.path_graph(2), nx.path_graph(3), nx.path_graph(4), nx.star_graph(3),
              nx.path_graph(5), nx.star_graph(4)]
    fork = nx.Graph([(0, 1), (1, 2), (2, 3), (2, 4)])
    shapes.append(fork)
    return shapes


def tree_configuration(tree, p=2):
    # type: (nx.Graph, int) -> LatticeConfiguration
    return config_from_tree(tree, 0, p)


def expected_counts(strata, components):
    # type: (Dict[int, int], Dict[int, int]) -> Dict[str, Dict[int, int]]
    return {'strata': strata, 'components': components}
