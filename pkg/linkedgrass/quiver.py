"""The quiver with relations of a convex configuration and its path algebra

A path is zero in the algebra exactly when its weight exceeds the minimal
shift between its endpoints, so the relation ideal is never materialised.
Arrows only need the length-two test: if a path i -> k -> ... -> j has weight
n[i][j], the triangle inequality forces n[i][k] + n[k][j] = n[i][j].
"""
import logging
from typing import Dict, FrozenSet, List, Optional, Sequence, Set

import networkx as nx
import numpy as np

from linkedgrass import exc
from linkedgrass.dvr import LatticeClass, LatticeConfiguration, intersect
from linkedgrass.types import AlgebraBasisElem, Edge

_log = logging.getLogger(__name__)


class WeightedQuiver(object):
    """Vertices 0..|I|-1, the shift matrix n and the arrows of Q(Γ)
    """
    n = None  # type: np.ndarray
    arrows = None  # type: Set[Edge]
    labels = None  # type: List[str]

    def __init__(self, n, labels=None):
        # type: (np.ndarray, Optional[Sequence[str]]) -> None
        self.n = np.array(n, dtype=np.int64)
        size = self.n.shape[0]
        self.labels = list(labels) if labels is not None else [str(i) for i in range(size)]
        self.arrows = set()
        for i in range(size):
            for j in range(size):
                if i == j:
                    continue
                if not any(self.n[i, k] + self.n[k, j] == self.n[i, j] for k in range(size) if k not in (i, j)):
                    self.arrows.add((i, j))

    @property
    def vertices(self):
        # type: () -> List[int]
        return list(range(self.n.shape[0]))

    def __len__(self):
        return self.n.shape[0]

    def weight(self, i, j):
        # type: (int, int) -> int
        return int(self.n[i, j])

    def sorted_arrows(self):
        # type: () -> List[Edge]
        return sorted(self.arrows)

    def to_digraph(self):
        # type: () -> nx.DiGraph
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_weighted_edges_from((i, j, self.weight(i, j)) for i, j in self.arrows)
        return graph

    def to_dict(self):
        return {'vertices': self.labels,
                'arrows': [{'source': i, 'target': j, 'weight': self.weight(i, j)} for i, j in self.sorted_arrows()],
                'algebra_dim': algebra_dim(self)}

    def __repr__(self):
        return '<WeightedQuiver |I|={} arrows={}>'.format(len(self), self.sorted_arrows())


def build_quiver(configuration):
    # type: (LatticeConfiguration) -> WeightedQuiver
    return WeightedQuiver(configuration.n, configuration.labels)


def path_weight(quiver, path):
    # type: (WeightedQuiver, Sequence[int]) -> int
    """Sum of n over consecutive vertices of a path of arrows
    """
    if not path:
        raise ValueError("A path has at least one vertex")
    total = 0
    for i, j in zip(path, path[1:]):
        if (i, j) not in quiver.arrows:
            raise ValueError("({}, {}) is not an arrow of the quiver".format(i, j))
        total += quiver.weight(i, j)
    return total


def path_is_zero(quiver, path):
    # type: (WeightedQuiver, Sequence[int]) -> bool
    return path_weight(quiver, path) > quiver.weight(path[0], path[-1])


def compose(quiver, first, second):
    # type: (WeightedQuiver, AlgebraBasisElem, AlgebraBasisElem) -> Optional[AlgebraBasisElem]
    """second * first: l_{i,j} when the weights add up, None for the zero product
    """
    if first.target != second.source:
        raise ValueError("Cannot compose {!r} with {!r}: middle vertices differ".format(first, second))
    if first.is_idempotent:
        return second
    if second.is_idempotent:
        return first
    i, k, j = first.source, first.target, second.target
    if quiver.weight(i, k) + quiver.weight(k, j) == quiver.weight(i, j):
        return AlgebraBasisElem(i, j)
    return None


def algebra_dim(quiver):
    # type: (WeightedQuiver) -> int
    return len(quiver) ** 2


def algebra_basis(quiver):
    # type: (WeightedQuiver) -> List[AlgebraBasisElem]
    return [AlgebraBasisElem(i, j) for i in quiver.vertices for j in quiver.vertices]


def minimal_path(quiver, source, target):
    # type: (WeightedQuiver, int, int) -> List[int]
    """A path of arrows of weight n[source][target]

    Weights may be negative but every cycle has positive weight, so
    Bellman-Ford applies.
    """
    if source == target:
        return [source]
    path = nx.bellman_ford_path(quiver.to_digraph(), source, target)
    weight = path_weight(quiver, path)
    if weight != quiver.weight(source, target):
        raise exc.VerificationMismatch("No path of minimal weight {} from {} to {} (best is {})".format(
            quiver.weight(source, target), source, target, weight))
    return path


def has_minimal_paths(quiver):
    # type: (WeightedQuiver) -> bool
    """Every ordered pair is joined by a path realising its minimal shift
    """
    graph = quiver.to_digraph()
    for source in quiver.vertices:
        lengths = nx.single_source_bellman_ford_path_length(graph, source)
        for target in quiver.vertices:
            if lengths.get(target) != quiver.weight(source, target):
                return False
    return True


def double_tree(quiver):
    # type: (WeightedQuiver) -> Optional[nx.Graph]
    """The tree T when every arrow comes with its reverse and the underlying graph is a tree
    """
    if any((j, i) not in quiver.arrows for i, j in quiver.arrows):
        return None
    tree = nx.Graph()
    tree.add_nodes_from(quiver.vertices)
    tree.add_edges_from(quiver.arrows)
    if not nx.is_tree(tree):
        return None
    return tree


def compose_cross_check(configuration, i, middle, j):
    # type: (LatticeConfiguration, int, int, int) -> bool
    """Decide whether l_{middle,j} * l_{i,middle} vanishes from the lattices alone

    With [L_k] = [t^n L_middle ∩ t L_j] the class next to L_middle on its
    segment towards L_j, the product vanishes iff l_{i,middle} factors
    through k.
    """
    if i == middle or middle == j:
        return False
    n = configuration.n
    source = configuration.representatives[middle].scaled(int(n[middle, j]))
    target = configuration.representatives[j].scaled(1)
    k = configuration.index_of(LatticeClass(intersect(source, target)))
    if k is None:
        raise exc.NotConvex("[t^n L_{} ∩ t L_{}] is not in the configuration".format(middle, j))
    return bool(n[i, k] + n[k, middle] == n[i, middle])


class DoubleTreeGeom(object):
    """The tree T of a locally linearly independent configuration with its half-trees

    For an oriented edge e = (s, t), `half_tree[e]` is A_e, the vertices whose
    path to s avoids t; `out_edges[v]` is the set of oriented edges leaving v.
    """
    tree = None  # type: nx.Graph
    oriented_edges = None  # type: List[Edge]
    half_tree = None  # type: Dict[Edge, FrozenSet[int]]
    out_edges = None  # type: Dict[int, List[Edge]]

    def __init__(self, tree):
        # type: (nx.Graph) -> None
        self.tree = tree
        self.oriented_edges = sorted([(s, t) for s, t in tree.edges] + [(t, s) for s, t in tree.edges])
        self.half_tree = {}
        for s, t in self.oriented_edges:
            cut = tree.copy()
            cut.remove_edge(s, t)
            self.half_tree[(s, t)] = frozenset(nx.node_connected_component(cut, s))
        self.out_edges = {v: [e for e in self.oriented_edges if e[0] == v] for v in tree.nodes}

    @classmethod
    def from_quiver(cls, quiver):
        # type: (WeightedQuiver) -> DoubleTreeGeom
        tree = double_tree(quiver)
        if tree is None:
            raise exc.NotLocallyIndependent("The quiver is not a double tree")
        return cls(tree)

    @property
    def vertices(self):
        # type: () -> List[int]
        return sorted(self.tree.nodes)

    def in_edges(self, v):
        # type: (int) -> List[Edge]
        return [(t, s) for s, t in self.out_edges[v]]

    def half_tree_sum(self, edge, values):
        # type: (Edge, Dict[int, int]) -> int
        return sum(values[v] for v in self.half_tree[edge])

    def __repr__(self):
        return '<DoubleTreeGeom edges={}>'.format(sorted(self.tree.edges))
