"""Representations of the quiver of a configuration over F_p

The ambient representation M_Γ puts the reduction L_i / t L_i at every
vertex and the maps f_{i,j} on the arrows. Subrepresentations of dimension
vector (r, ..., r) are the points of the special fiber of the linked
Grassmannian.
"""
import logging
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from linkedgrass import exc
from linkedgrass.dvr import Lattice, LatticeConfiguration, LaurentMatrix, induced_map
from linkedgrass.linalg import FieldMatrix, Subspace
from linkedgrass.quiver import DoubleTreeGeom, WeightedQuiver, build_quiver, double_tree, minimal_path, path_is_zero
from linkedgrass.types import Decomposition, Edge

_log = logging.getLogger(__name__)

_UNSET = object()


class QuiverRep(object):
    """A representation of a weighted quiver: a dimension per vertex and a matrix per arrow

    `pair_maps` optionally holds f_{i,j} for non-adjacent pairs as well; when
    absent, f_{i,j} is the composite along a path of minimal weight.
    """
    quiver = None  # type: WeightedQuiver
    dims = None  # type: List[int]
    maps = None  # type: Dict[Edge, FieldMatrix]
    p = None  # type: int

    def __init__(self, quiver, dims, maps, p, pair_maps=None):
        # type: (WeightedQuiver, Sequence[int], Dict[Edge, FieldMatrix], int, Optional[Dict[Edge, FieldMatrix]]) -> None
        self.quiver = quiver
        self.dims = [int(d) for d in dims]
        self.p = p
        if len(self.dims) != len(quiver):
            raise ValueError("Expecting {} dimensions, got {}".format(len(quiver), len(self.dims)))
        self.maps = {}
        for arrow in quiver.sorted_arrows():
            if arrow not in maps:
                raise ValueError("Missing map for arrow {}".format(arrow))
            self.maps[arrow] = self._checked(arrow, maps[arrow])
        self._pair_maps = {e: self._checked(e, m) for e, m in (pair_maps or {}).items()}
        self._geometry = _UNSET  # type: Any
        self._lli = None  # type: Optional[Tuple[Dict[int, bool], bool]]

    def _checked(self, edge, matrix):
        # type: (Edge, FieldMatrix) -> FieldMatrix
        source, target = edge
        if matrix.shape != (self.dims[target], self.dims[source]):
            raise ValueError("Map {} has shape {}, expecting {}".format(
                edge, matrix.shape, (self.dims[target], self.dims[source])))
        return matrix

    @property
    def vertices(self):
        # type: () -> List[int]
        return self.quiver.vertices

    def identity(self, v):
        # type: (int) -> FieldMatrix
        return FieldMatrix.identity(self.dims[v], self.p)

    def path_map(self, path):
        # type: (Sequence[int]) -> FieldMatrix
        """Composite of the arrow maps along a vertex sequence
        """
        result = self.identity(path[0])
        for edge in zip(path, path[1:]):
            if edge not in self.maps:
                raise ValueError("{} is not an arrow".format(edge))
            result = self.maps[edge] @ result
        return result

    def pair_map(self, source, target):
        # type: (int, int) -> FieldMatrix
        """f_{source,target}
        """
        if source == target:
            return self.identity(source)
        if (source, target) in self.maps:
            return self.maps[(source, target)]
        if (source, target) not in self._pair_maps:
            self._pair_maps[(source, target)] = self.path_map(minimal_path(self.quiver, source, target))
        return self._pair_maps[(source, target)]

    @property
    def geometry(self):
        # type: () -> Optional[DoubleTreeGeom]
        if self._geometry is _UNSET:
            tree = double_tree(self.quiver)
            self._geometry = DoubleTreeGeom(tree) if tree is not None else None
        return self._geometry

    def full(self):
        # type: () -> SubRep
        return SubRep(self, [Subspace.full(d, self.p) for d in self.dims])

    def zero(self):
        # type: () -> SubRep
        return SubRep(self, [Subspace.zero(d, self.p) for d in self.dims])

    def to_dict(self):
        return {'dims': self.dims,
                'maps': [{'source': s, 'target': t, 'matrix': m.tolist()} for (s, t), m in sorted(self.maps.items())]}

    def __repr__(self):
        return '<QuiverRep dims={} arrows={}>'.format(self.dims, self.quiver.sorted_arrows())


class SubRep(object):
    """A subspace of the ambient space at every vertex
    """
    rep = None  # type: QuiverRep
    spaces = None  # type: List[Subspace]

    def __init__(self, rep, spaces):
        # type: (QuiverRep, Sequence[Subspace]) -> None
        if len(spaces) != len(rep.dims):
            raise ValueError("Expecting {} subspaces, got {}".format(len(rep.dims), len(spaces)))
        for v, space in enumerate(spaces):
            if space.ambient_dim != rep.dims[v]:
                raise ValueError("Subspace at vertex {} lives in dimension {}, expecting {}".format(
                    v, space.ambient_dim, rep.dims[v]))
        self.rep = rep
        self.spaces = list(spaces)

    @classmethod
    def from_bases(cls, rep, bases):
        # type: (QuiverRep, Sequence[Sequence[Sequence[int]]]) -> SubRep
        return cls(rep, [Subspace(basis, rep.dims[v], rep.p) for v, basis in enumerate(bases)])

    @property
    def dimension_vector(self):
        # type: () -> List[int]
        return [space.dim for space in self.spaces]

    def __getitem__(self, v):
        # type: (int) -> Subspace
        return self.spaces[v]

    def as_rep(self):
        # type: () -> QuiverRep
        """The subrepresentation as a representation in its own right, in the canonical bases
        """
        maps = {}
        for (s, t), matrix in self.rep.maps.items():
            target_basis = FieldMatrix(self.spaces[t].basis.array.T, self.rep.p,
                                       shape=(self.rep.dims[t], self.spaces[t].dim))
            columns = []
            for vector in self.spaces[s].vectors:
                coordinates = target_basis.solve(matrix.apply(vector))
                if coordinates is None:
                    raise exc.NotSubrepresentation("Arrow ({}, {}) leaves the subrepresentation".format(s, t))
                columns.append(coordinates)
            entries = np.array(columns, dtype=np.int64).T if columns else np.zeros((self.spaces[t].dim, 0))
            maps[(s, t)] = FieldMatrix(entries, self.rep.p, shape=(self.spaces[t].dim, self.spaces[s].dim))
        return QuiverRep(self.rep.quiver, self.dimension_vector, maps, self.rep.p)

    def to_dict(self):
        return {'dimension_vector': self.dimension_vector,
                'bases': [space.basis.tolist() for space in self.spaces]}

    def __eq__(self, other):
        if not isinstance(other, SubRep):
            return NotImplemented
        return self.spaces == other.spaces

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(tuple(self.spaces))

    def __repr__(self):
        return '<SubRep {}>'.format(self.dimension_vector)


SubRepLike = Union[SubRep, Sequence[Subspace]]


def _spaces(subrep):
    # type: (SubRepLike) -> List[Subspace]
    return subrep.spaces if isinstance(subrep, SubRep) else list(subrep)


def iter_paths(quiver, max_arrows):
    # type: (WeightedQuiver, int) -> Iterator[Tuple[int, ...]]
    """All arrow paths with 1..max_arrows arrows, in lexicographic order
    """
    successors = {v: sorted(t for s, t in quiver.arrows if s == v) for v in quiver.vertices}
    stack = [(v,) for v in reversed(quiver.vertices)]
    while stack:
        path = stack.pop()
        if len(path) > 1:
            yield path
        if len(path) <= max_arrows:
            stack.extend(path + (t,) for t in reversed(successors[path[-1]]))


def relation_report(rep):
    # type: (QuiverRep) -> List[Dict[str, Any]]
    """Check the relations of the bound quiver on paths of up to |I| arrows

    Paths of non-minimal weight must compose to zero and non-zero composites
    of minimal paths must agree with f_{s,t}. A minimal path composing to
    zero is reported without being a violation.
    """
    report = []
    for path in iter_paths(rep.quiver, len(rep.quiver)):
        composite = rep.path_map(path)
        source, target = path[0], path[-1]
        if path_is_zero(rep.quiver, path):
            if not composite.is_zero():
                report.append({'path': list(path), 'kind': 'non-minimal path does not vanish', 'violation': True})
        elif composite.is_zero():
            report.append({'path': list(path), 'kind': 'minimal path vanishes', 'violation': False})
        elif source != target and composite != rep.pair_map(source, target):
            report.append({'path': list(path), 'kind': 'minimal composites differ', 'violation': True})
    return report


def build_M(configuration):
    # type: (LatticeConfiguration) -> QuiverRep
    """The ambient representation M_Γ
    """
    quiver = build_quiver(configuration)
    size = len(configuration)
    pair_maps = {(i, j): induced_map(configuration, i, j) for i in range(size) for j in range(size) if i != j}
    rep = QuiverRep(quiver, [configuration.d] * size, {a: pair_maps[a] for a in quiver.arrows}, configuration.p,
                    pair_maps=pair_maps)
    violations = [entry for entry in relation_report(rep) if entry['violation']]
    if violations:
        raise exc.VerificationMismatch("M_Γ violates {} relations, first: {}".format(len(violations), violations[0]))
    return rep


def is_subrep(rep, subrep):
    # type: (QuiverRep, SubRepLike) -> bool
    spaces = _spaces(subrep)
    return all(spaces[t].contains_subspace(spaces[s].image(matrix)) for (s, t), matrix in rep.maps.items())


def adjacent_vertices(rep, v):
    # type: (QuiverRep, int) -> List[int]
    """Classes at distance one from v: n[v][i] + n[i][v] == 1
    """
    n = rep.quiver.n
    return [i for i in rep.vertices if i != v and n[v, i] + n[i, v] == 1]


def local_linear_independence(rep_or_configuration):
    # type: (Union[QuiverRep, LatticeConfiguration]) -> Tuple[Dict[int, bool], bool]
    """Per-vertex verdicts and the overall one

    At every vertex the images f_{i,v} of the adjacent classes must be
    linearly independent: their dimensions add up to the dimension of their sum.
    """
    rep = rep_or_configuration
    if isinstance(rep, LatticeConfiguration):
        rep = build_M(rep)
    if rep._lli is not None:
        return rep._lli
    verdicts = {}
    for v in rep.vertices:
        images = [Subspace.image_of(rep.pair_map(i, v)) for i in adjacent_vertices(rep, v)]
        total = Subspace.zero(rep.dims[v], rep.p)
        for image in images:
            total = total + image
        verdicts[v] = sum(image.dim for image in images) == total.dim
    rep._lli = (verdicts, all(verdicts.values()))
    return rep._lli


def require_lli(rep):
    # type: (QuiverRep) -> DoubleTreeGeom
    geometry = rep.geometry
    if geometry is None or not local_linear_independence(rep)[1]:
        raise exc.NotLocallyIndependent("The configuration is not locally linearly independent")
    return geometry


def decompose(rep, subrep):
    # type: (QuiverRep, SubRepLike) -> Decomposition
    """Multiplicities of P_v and R_e in a subrepresentation of an LLI ambient representation
    """
    geometry = require_lli(rep)
    spaces = _spaces(subrep)
    if not is_subrep(rep, spaces):
        raise exc.NotSubrepresentation("The subspaces are not stable under the arrow maps")
    kernels = {e: spaces[e[0]].restricted_kernel(rep.maps[e]).dim for e in geometry.oriented_edges}
    vertex = {v: spaces[v].dim - sum(kernels[e] for e in geometry.out_edges[v]) for v in geometry.vertices}
    edge = {(s, t): kernels[(s, t)] - spaces[t].image(rep.maps[(t, s)]).dim for s, t in geometry.oriented_edges}

    for u in geometry.vertices:
        expected = sum(vertex.values()) + sum(m for e, m in edge.items() if u in geometry.half_tree[e])
        if expected != spaces[u].dim:
            raise exc.VerificationMismatch("Summands account for dimension {} at vertex {}, found {}".format(
                expected, u, spaces[u].dim))
    if len(set(space.dim for space in spaces)) == 1:
        for s, t in geometry.oriented_edges:
            if edge[(s, t)] != edge[(t, s)]:
                raise exc.VerificationMismatch("r_e differs on the two orientations of edge {}".format((s, t)))
    return Decomposition(vertex, edge)


def is_projective(rep, subrep):
    # type: (QuiverRep, SubRepLike) -> bool
    return decompose(rep, subrep).is_projective


def ambient_multiplicities(rep):
    # type: (QuiverRep) -> Dict[int, int]
    """d_v, the multiplicity of P_v in M_Γ
    """
    return dict(decompose(rep, rep.full()).vertex_multiplicities.values)


def generate(rep, generators):
    # type: (QuiverRep, Sequence[Tuple[int, Sequence[int]]]) -> SubRep
    """Smallest subrepresentation containing the given (vertex, vector) pairs
    """
    vectors = {w: [] for w in rep.vertices}  # type: Dict[int, List[np.ndarray]]
    for v, vector in generators:
        for w in rep.vertices:
            vectors[w].append(rep.pair_map(v, w).apply(vector))
    return SubRep(rep, [Subspace(vectors[w], rep.dims[w], rep.p) for w in rep.vertices])


def lift_to_subrep(rep, partial):
    # type: (QuiverRep, Dict[int, Subspace]) -> SubRep
    """Extend r-dimensional subspaces given on some vertices to an r-dimensional subrepresentation

    Starts from the largest candidate W_u = {x : f_{u,v}(x) in V_v for v in the
    given vertices} and shrinks it one adjacent pair at a time. A shrunk
    space is the span of the incoming images completed by the earliest
    canonical basis vectors of the old space.
    """
    geometry = require_lli(rep)
    if not partial:
        raise ValueError("Expecting subspaces on at least one vertex")
    r_values = set(space.dim for space in partial.values())
    if len(r_values) != 1:
        raise ValueError("The given subspaces must all have the same dimension")
    r = r_values.pop()

    current = {}  # type: Dict[int, Subspace]
    for u in rep.vertices:
        space = Subspace.full(rep.dims[u], rep.p)
        for v, target in partial.items():
            space = space.intersection(target.preimage(rep.pair_map(u, v)))
        if space.dim < r:
            raise exc.PreconditionFailed("W_{} has dimension {} < {}".format(u, space.dim, r))
        current[u] = space

    while True:
        pair = next(((u1, u2) for u1, u2 in geometry.oriented_edges
                     if current[u1].dim == r and current[u2].dim > r), None)
        if pair is None:
            break
        u2 = pair[1]
        incoming = Subspace.zero(rep.dims[u2], rep.p)
        for s, t in geometry.in_edges(u2):
            incoming = incoming + current[s].image(rep.maps[(s, t)])
        if incoming.dim > r:
            raise exc.VerificationMismatch("Incoming images at vertex {} have dimension {} > {}".format(
                u2, incoming.dim, r))
        extra = incoming.extend_within(current[u2], r - incoming.dim)
        current[u2] = Subspace(incoming.vectors + extra, rep.dims[u2], rep.p)
        _log.debug("Shrunk W_%d to dimension %d", u2, current[u2].dim)

    result = SubRep(rep, [current[u] for u in rep.vertices])
    if any(dim != r for dim in result.dimension_vector) or not is_subrep(rep, result):
        raise exc.VerificationMismatch("Lifting produced {}".format(result.dimension_vector))
    return result


def global_basis(rep):
    # type: (QuiverRep) -> Dict[int, List[np.ndarray]]
    """Vectors zeta_v at every vertex whose images f_{v,u}(zeta_v) form a basis at every vertex u

    zeta_v completes the sum of the kernels of the outgoing arrows; this
    works exactly when the representation is projective.
    """
    geometry = require_lli(rep)
    zeta = {}
    for v in geometry.vertices:
        kernels = Subspace.zero(rep.dims[v], rep.p)
        for e in geometry.out_edges[v]:
            kernels = kernels + Subspace.kernel_of(rep.maps[e])
        zeta[v] = kernels.complement()
    for u in rep.vertices:
        images = [rep.pair_map(v, u).apply(z) for v in geometry.vertices for z in zeta[v]]
        if len(images) != rep.dims[u] or Subspace(images, rep.dims[u], rep.p).dim != rep.dims[u]:
            raise exc.VerificationMismatch("Global vectors do not form a basis at vertex {}".format(u))
    return zeta


def apartment_exponents(rep):
    # type: (QuiverRep) -> Tuple[List[Tuple[int, int]], List[List[int]]]
    """Exponent rows realising a projective LLI representation in one apartment

    Columns are indexed by (v, i) for the i-th global vector at v and
    E[k][(v, i)] = n[v][k].
    """
    zeta = global_basis(rep)
    columns = [(v, i) for v in sorted(zeta) for i in range(len(zeta[v]))]
    n = rep.quiver.n
    rows = [[int(n[v, k]) for v, _ in columns] for k in rep.vertices]
    return columns, rows


def hom_dim(source, target):
    # type: (QuiverRep, QuiverRep) -> int
    """dim Hom(source, target) for two representations of the same quiver
    """
    if source.quiver.arrows != target.quiver.arrows:
        raise ValueError("Representations of different quivers")
    offsets = {}
    total = 0
    for v in source.vertices:
        offsets[v] = total
        total += target.dims[v] * source.dims[v]
    equations = []
    for (s, t), source_map in sorted(source.maps.items()):
        target_map = target.maps[(s, t)]
        for row in range(target.dims[t]):
            for col in range(source.dims[s]):
                equation = np.zeros(total, dtype=np.int64)
                # (target_map @ phi_s)[row, col]
                for k in range(target.dims[s]):
                    equation[offsets[s] + k * source.dims[s] + col] += target_map.array[row, k]
                # - (phi_t @ source_map)[row, col]
                for k in range(source.dims[t]):
                    equation[offsets[t] + row * source.dims[t] + k] -= source_map.array[k, col]
                equations.append(equation)
    if not equations:
        return total
    return total - FieldMatrix(equations, source.p, shape=(len(equations), total)).rank()


def rank_profile(rep):
    # type: (QuiverRep) -> Tuple[Tuple[int, ...], Tuple[Tuple[Tuple[int, ...], int], ...]]
    """Dimension vector and the ranks of all path composites with up to |I| arrows
    """
    ranks = tuple((path, rep.path_map(path).rank()) for path in iter_paths(rep.quiver, len(rep.quiver)))
    return tuple(rep.dims), ranks


def is_isomorphic_profile(first, second):
    # type: (QuiverRep, QuiverRep) -> bool
    return rank_profile(first) == rank_profile(second)


def chain_quiver(length):
    # type: (int) -> WeightedQuiver
    """The quiver of a convex chain of `length` classes with L_0 ⊂ L_1 ⊂ ... ⊂ t^-1 L_0
    """
    return WeightedQuiver([[max(i - j, 0) for j in range(length)] for i in range(length)])


def chain_rep(g_maps, h_maps, p):
    # type: (Sequence[FieldMatrix], Sequence[FieldMatrix], int) -> QuiverRep
    """g_i : E_i -> E_i+1 and h_i : E_i+1 -> E_i as a representation of the chain quiver
    """
    if len(g_maps) != len(h_maps):
        raise ValueError("Expecting as many g maps as h maps")
    length = len(g_maps) + 1
    d = g_maps[0].rows if g_maps else 0
    maps = {}
    for i, (g, h) in enumerate(zip(g_maps, h_maps)):
        maps[(i, i + 1)] = g
        maps[(i + 1, i)] = h
    return QuiverRep(chain_quiver(length), [d] * length, maps, p)


def linked_chain_equivalence(g_maps, h_maps, p):
    # type: (Sequence[FieldMatrix], Sequence[FieldMatrix], int) -> LatticeConfiguration
    """A convex chain of lattices whose ambient representation is the given 0-linked chain

    Picks at every E_j vectors complementing the images of its neighbours,
    transports them to E_1 along the h maps and lets L_i be spanned by
    t^-min(i, j) times the vectors coming from E_j.
    """
    if not g_maps:
        raise exc.PreconditionFailed("A linked chain needs at least two spaces")
    d = g_maps[0].rows
    for i, (g, h) in enumerate(zip(g_maps, h_maps)):
        if g.shape != (d, d) or h.shape != (d, d):
            raise ValueError("All maps of a linked chain must be {0}x{0}".format(d))
        if not (g @ h).is_zero() or not (h @ g).is_zero():
            raise exc.PreconditionFailed("g_{0} h_{0} and h_{0} g_{0} must vanish".format(i + 1))
        if g.rank() + h.rank() != d:
            raise exc.PreconditionFailed("rank g_{0} + rank h_{0} must be {1}".format(i + 1, d))
        if g.is_invertible() or h.is_invertible():
            raise exc.PreconditionFailed("Step {} is an isomorphism; merge the two spaces first".format(i + 1))
    for i in range(len(g_maps) - 1):
        if (g_maps[i + 1] @ g_maps[i]).rank() != g_maps[i].rank():
            raise exc.PreconditionFailed("rank drops along g_{} g_{}".format(i + 2, i + 1))
        if (h_maps[i] @ h_maps[i + 1]).rank() != h_maps[i + 1].rank():
            raise exc.PreconditionFailed("rank drops along h_{} h_{}".format(i + 1, i + 2))

    length = len(g_maps) + 1
    columns = []  # type: List[np.ndarray]
    exponents_source = []  # type: List[int]
    for j in range(length):
        neighbours = Subspace.zero(d, p)
        if j < length - 1:
            neighbours = neighbours + Subspace.kernel_of(g_maps[j])
        if j > 0:
            neighbours = neighbours + Subspace.kernel_of(h_maps[j - 1])
        for vector in neighbours.complement():
            transported = vector
            for k in reversed(range(j)):
                transported = h_maps[k].apply(transported)
            columns.append(transported)
            exponents_source.append(j + 1)
    if len(columns) != d or Subspace(columns, d, p).dim != d:
        raise exc.PreconditionFailed("The adapted vectors do not form a basis of E_1")

    basis = LaurentMatrix(np.array(columns, dtype=np.int64).T.tolist(), p)
    rows = [[-min(i, j) for j in exponents_source] for i in range(1, length + 1)]
    configuration = LatticeConfiguration([Lattice(basis.scale_columns(row)) for row in rows], apartment=rows)
    if len(configuration) != length:
        raise exc.VerificationMismatch("The chain collapsed to {} classes".format(len(configuration)))
    if not is_isomorphic_profile(build_M(configuration), chain_rep(g_maps, h_maps, p)):
        raise exc.VerificationMismatch("The constructed chain does not reproduce the given maps")
    return configuration
