"""Twists of multidegrees on the dual graph of a nodal curve

A multidegree w obtained from w0 by twisting x_j times at v_j is w0 - L x,
where L is the Laplacian of the dual graph. The twist vector x is defined up
to adding multiples of the all-ones vector; it is normalised to have minimum
zero and identified with a lattice point of tropical projective space.
"""
import itertools
import logging
from typing import Dict, Iterable, List, Sequence, Set, Tuple

import networkx as nx
import numpy as np
import sympy

_log = logging.getLogger(__name__)

Multidegree = Tuple[int, ...]

TwistVector = Tuple[int, ...]


class DualGraph(object):
    """Vertices 0..n with n_{i,j} parallel edges between components i and j
    """
    graph = None  # type: nx.MultiGraph

    def __init__(self, size, edges):
        # type: (int, Iterable[Tuple[int, int]]) -> None
        if size < 1:
            raise ValueError("A dual graph has at least one vertex")
        self.graph = nx.MultiGraph()
        self.graph.add_nodes_from(range(size))
        for i, j in edges:
            if i == j:
                raise ValueError("Loops are not supported (vertex {})".format(i))
            if not (0 <= i < size and 0 <= j < size):
                raise ValueError("Edge ({}, {}) leaves the vertex range".format(i, j))
            self.graph.add_edge(i, j)
        if not nx.is_connected(self.graph):
            raise ValueError("The dual graph must be connected")

    @classmethod
    def from_multiplicities(cls, size, multiplicities):
        # type: (int, Dict[Tuple[int, int], int]) -> DualGraph
        edges = []  # type: List[Tuple[int, int]]
        for (i, j), count in sorted(multiplicities.items()):
            edges.extend([(i, j)] * int(count))
        return cls(size, edges)

    @property
    def vertices(self):
        # type: () -> List[int]
        return list(range(self.graph.number_of_nodes()))

    def __len__(self):
        return self.graph.number_of_nodes()

    def multiplicity(self, i, j):
        # type: (int, int) -> int
        return self.graph.number_of_edges(i, j)

    def degree(self, v):
        # type: (int) -> int
        return self.graph.degree(v)

    def laplacian(self):
        # type: () -> np.ndarray
        size = len(self)
        matrix = np.zeros((size, size), dtype=np.int64)
        for i in range(size):
            for j in range(size):
                matrix[i, j] = self.degree(i) if i == j else -self.multiplicity(i, j)
        return matrix

    def to_dict(self):
        return {'vertices': len(self),
                'edges': [{'source': i, 'target': j, 'count': self.multiplicity(i, j)}
                          for i, j in sorted(set((min(e), max(e)) for e in self.graph.edges()))]}

    def __repr__(self):
        return '<DualGraph |V|={} |E|={}>'.format(len(self), self.graph.number_of_edges())


def _as_multidegree(values):
    # type: (Iterable) -> Multidegree
    return tuple(int(v) for v in values)


def twist(graph, w, v):
    # type: (DualGraph, Sequence[int], int) -> Multidegree
    """Raise the degree at every neighbour of v by the number of shared edges, lower it at v by deg(v)
    """
    return _as_multidegree(np.array(w, dtype=np.int64) - graph.laplacian()[:, v])


def negative_twist(graph, w, v):
    # type: (DualGraph, Sequence[int], int) -> Multidegree
    return _as_multidegree(np.array(w, dtype=np.int64) + graph.laplacian()[:, v])


def apply_twists(graph, w0, x):
    # type: (DualGraph, Sequence[int], Sequence[int]) -> Multidegree
    """w0 twisted x_j times at every v_j
    """
    return _as_multidegree(np.array(w0, dtype=np.int64) - graph.laplacian().dot(np.array(x, dtype=np.int64)))


def normalize(x):
    # type: (Sequence[int]) -> TwistVector
    """The representative of x modulo the all-ones vector with minimum zero
    """
    low = min(x)
    return tuple(int(value - low) for value in x)


def twist_vector(graph, w0, w):
    # type: (DualGraph, Sequence[int], Sequence[int]) -> TwistVector
    """The normalised x with w = w0 - L x

    Raises ValueError when w is not reachable from w0 by twists.
    """
    if len(w0) != len(graph) or len(w) != len(graph):
        raise ValueError("Multidegrees must have {} entries".format(len(graph)))
    if sum(w0) != sum(w):
        raise ValueError("Twists preserve the total degree: {} != {}".format(sum(w0), sum(w)))
    if len(graph) == 1:
        return (0,)
    laplacian = sympy.Matrix(graph.laplacian().tolist())
    difference = sympy.Matrix([int(a) - int(b) for a, b in zip(w0, w)])
    # The Laplacian of a connected graph has kernel spanned by the all-ones vector; fixing x_0 = 0
    # leaves the invertible reduced Laplacian.
    reduced = laplacian[1:, 1:].LUsolve(difference[1:, :])
    if any(not value.is_integer for value in reduced):
        raise ValueError("{} is not obtained from {} by twists".format(list(w), list(w0)))
    return normalize([0] + [int(value) for value in reduced])


def is_concentrated(graph, w, v):
    # type: (DualGraph, Sequence[int], int) -> bool
    """Whether some ordering of the vertices starting at v makes every later vertex negative
    after the negative twists at all earlier vertices
    """
    laplacian = graph.laplacian()
    everything = frozenset(graph.vertices)
    failed = set()  # type: Set[frozenset]

    def search(done, current):
        if done == everything:
            return True
        if done in failed:
            return False
        for u in sorted(everything - done):
            if current[u] < 0 and search(done | {u}, current + laplacian[:, u]):
                return True
        failed.add(done)
        return False

    start = np.array(w, dtype=np.int64) + laplacian[:, v]
    return search(frozenset([v]), start)


class TwistCoeffs(object):
    """a[i][j] >= 0: the concentrated multidegree w_{v_i} is w0 twisted a[i][j] times at v_j
    """
    a = None  # type: np.ndarray

    def __init__(self, a):
        self.a = np.array(a, dtype=np.int64)
        if self.a.ndim != 2 or self.a.shape[0] != self.a.shape[1]:
            raise ValueError("Twist coefficients form a square matrix, got shape {}".format(self.a.shape))
        self.a = np.array([normalize(row) for row in self.a], dtype=np.int64).reshape(self.a.shape)

    @classmethod
    def from_multidegrees(cls, graph, w0, concentrated):
        # type: (DualGraph, Sequence[int], Sequence[Sequence[int]]) -> TwistCoeffs
        if len(concentrated) != len(graph):
            raise ValueError("Expecting one concentrated multidegree per vertex")
        return cls([twist_vector(graph, w0, w) for w in concentrated])

    def __len__(self):
        return self.a.shape[0]

    def rows(self):
        # type: () -> List[TwistVector]
        return [tuple(int(x) for x in row) for row in self.a]

    def __eq__(self, other):
        if not isinstance(other, TwistCoeffs):
            return NotImplemented
        return bool(np.array_equal(self.a, other.a))

    def __repr__(self):
        return '<TwistCoeffs {}>'.format(self.a.tolist())


def hull_condition(coeffs):
    # type: (TwistCoeffs) -> bool
    """a[k][i] - a[k][j] >= a[i][i] - a[i][j] for all i, j, k

    Equivalent to the twist closure being the integral tropical hull of the
    concentrated multidegrees.
    """
    a = coeffs.a
    size = len(coeffs)
    return all(a[k, i] - a[k, j] >= a[i, i] - a[i, j]
               for i in range(size) for j in range(size) for k in range(size))


def twist_closure_vectors(coeffs):
    # type: (TwistCoeffs) -> List[TwistVector]
    """Normalised x with x_i - x_j >= a[i][i] - a[i][j] for all i, j

    With x_0 = 0 the inequalities for the pairs (0, j) and (j, 0) confine
    x_j to [a[j][j] - a[j][0], a[0][j] - a[0][0]]. An inconsistent system
    gives no points.
    """
    a = coeffs.a
    size = len(coeffs)
    ranges = [range(0, 1)] + [range(int(a[j, j] - a[j, 0]), int(a[0, j] - a[0, 0]) + 1) for j in range(1, size)]
    points = set()
    for x in itertools.product(*ranges):
        if all(x[i] - x[j] >= a[i, i] - a[i, j] for i in range(size) for j in range(size)):
            points.add(normalize(x))
    if not points:
        _log.warning("The twist coefficients admit no multidegree")
    return sorted(points)


def twist_closure(graph, w0, coeffs):
    # type: (DualGraph, Sequence[int], TwistCoeffs) -> List[Multidegree]
    """The multidegrees from which every w_v is reached without twisting at v
    """
    return [apply_twists(graph, w0, x) for x in twist_closure_vectors(coeffs)]


def _min_combination(first, second, shift):
    # type: (TwistVector, TwistVector, int) -> TwistVector
    return normalize([min(a + shift, b) for a, b in zip(first, second)])


def integral_tropical_hull(points):
    # type: (Iterable[Sequence[int]]) -> List[TwistVector]
    """Smallest set of lattice points containing `points` that is closed under min(x + λ, y)

    Only shifts λ strictly between the extreme coordinate differences of a
    pair can produce a new point, so the closure is reached in finitely many
    rounds.
    """
    hull = set(normalize(p) for p in points)
    if not hull:
        raise ValueError("Expecting at least one point")
    pending = True
    while pending:
        pending = False
        current = sorted(hull)
        for first, second in itertools.permutations(current, 2):
            differences = [b - a for a, b in zip(first, second)]
            for shift in range(min(differences), max(differences) + 1):
                candidate = _min_combination(first, second, shift)
                if candidate not in hull:
                    hull.add(candidate)
                    pending = True
    return sorted(hull)


def auto_concentrate(graph, concentrated, k):
    # type: (DualGraph, Sequence[Sequence[int]], int) -> List[Multidegree]
    """Apply k further negative twists at v to every w_v
    """
    if k < 0:
        raise ValueError("Expecting a non-negative number of twists")
    result = []
    for v, w in enumerate(concentrated):
        current = _as_multidegree(w)
        for _ in range(k):
            current = negative_twist(graph, current, v)
        result.append(current)
    return result


def twist_graph(graph, w0, vectors):
    # type: (DualGraph, Sequence[int], Sequence[TwistVector]) -> nx.DiGraph
    """The given multidegrees with an edge w -> w' whenever a single twist turns w into w'
    """
    result = nx.DiGraph()
    members = {apply_twists(graph, w0, x): x for x in vectors}
    result.add_nodes_from(members)
    for w in members:
        for v in graph.vertices:
            target = twist(graph, w, v)
            if target in members and target != w:
                result.add_edge(w, target, vertex=v)
    return result


def tropical_report(graph, w0, concentrated, extra_twists=0):
    # type: (DualGraph, Sequence[int], Sequence[Sequence[int]], int) -> Dict[str, object]
    """Twist closure, tropical hull and the hull condition for a choice of concentrated multidegrees
    """
    if extra_twists:
        concentrated = auto_concentrate(graph, concentrated, extra_twists)
    coeffs = TwistCoeffs.from_multidegrees(graph, w0, concentrated)
    closure = twist_closure_vectors(coeffs)
    hull = integral_tropical_hull(coeffs.rows())
    edges = twist_graph(graph, w0, closure).edges(data='vertex')
    return {
        'concentrated': [list(w) for w in concentrated],
        'is_concentrated': [is_concentrated(graph, w, v) for v, w in enumerate(concentrated)],
        'twist_coefficients': coeffs.a.tolist(),
        'closure': [list(apply_twists(graph, w0, x)) for x in closure],
        'hull': [list(apply_twists(graph, w0, x)) for x in hull],
        'hull_condition': hull_condition(coeffs),
        'closure_in_hull': set(closure) <= set(hull),
        'closure_equals_hull': set(closure) == set(hull),
        'twist_edges': [{'source': list(s), 'target': list(t), 'vertex': v} for s, t, v in sorted(edges)],
    }
