"""Global sections on nodal curves with rational components over F_p

A section of a line bundle of multidegree m is a polynomial of degree <= m_i
on every component Z_i (nothing on components of negative degree), subject
to value_i(P) = C * value_j(Q) at every node joining P on Z_i with Q on Z_j.

Twisting by x_v copies of Z_v is tracked by the twist vector x: the bundle
L_{w0}(sum x_v Z_v) has multidegree w0 - L x and the gluing constant at a node
between Z_i and Z_j is c * prod g_v^(x_v - x_i) over the other components,
where g_v = Π_{v,i}(P) / Π_{v,j}(Q) and Π_{v,i} is the monic polynomial on Z_i
vanishing at its nodes with Z_v. With these constants the reduction of t^n
from Λ_x to Λ_y is multiplication by prod Π_{v,i}^{m_v} on the components with
m_i = 0 and zero elsewhere, where m = y - x + n and n = max(x - y).
"""
import itertools
import logging
from typing import Any, Dict, List, Optional, Sequence

import networkx as nx
import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_eval, gf_mul, gf_pow, gf_strip

from linkedgrass import exc
from linkedgrass.dvr import LatticeConfiguration, config_from_exponents
from linkedgrass.linalg import FieldMatrix, Subspace
from linkedgrass.quiver import WeightedQuiver
from linkedgrass.rep import (QuiverRep, apartment_exponents, build_M, is_isomorphic_profile, local_linear_independence,
                             relation_report)
from linkedgrass.tropical import (DualGraph, Multidegree, TwistCoeffs, TwistVector, apply_twists, hull_condition,
                                  is_concentrated, negative_twist, twist, twist_closure_vectors)
from linkedgrass.util import check_prime

_log = logging.getLogger(__name__)

DEFAULT_PRIME = 7

Shift = Optional[Sequence[int]]


class Node(object):
    """Point `first_point` of component `first` glued to point `second_point` of component `second`
    """
    first = None  # type: int
    first_point = None  # type: int
    second = None  # type: int
    second_point = None  # type: int
    constant = None  # type: int

    def __init__(self, first, first_point, second, second_point, constant=1):
        self.first = int(first)
        self.first_point = int(first_point)
        self.second = int(second)
        self.second_point = int(second_point)
        self.constant = int(constant)

    def point_on(self, component):
        # type: (int) -> int
        return self.first_point if component == self.first else self.second_point

    def joins(self, a, b):
        # type: (int, int) -> bool
        return {self.first, self.second} == {a, b}

    def to_dict(self):
        return {'first': self.first, 'first_point': self.first_point,
                'second': self.second, 'second_point': self.second_point, 'constant': self.constant}

    def __repr__(self):
        return '<Node Z_{}({}) ~ Z_{}({})>'.format(self.first, self.first_point, self.second, self.second_point)


class RationalNodalCurve(object):
    """Projective lines Z_0..Z_k glued at nodes with finite coordinates in F_p
    """
    size = None  # type: int
    nodes = None  # type: List[Node]
    p = None  # type: int

    def __init__(self, size, nodes, p=DEFAULT_PRIME):
        # type: (int, Sequence[Node], int) -> None
        check_prime(p)
        self.size = size
        self.nodes = list(nodes)
        self.p = p
        seen = {i: set() for i in range(size)}  # type: Dict[int, set]
        for node in self.nodes:
            if node.constant % p == 0:
                raise ValueError("Gluing constants must be units, got {} at {!r}".format(node.constant, node))
            for component, point in ((node.first, node.first_point), (node.second, node.second_point)):
                if not 0 <= point < p:
                    raise ValueError("Node points must lie in F_{}, got {}".format(p, point))
                if point in seen[component]:
                    raise ValueError("Two nodes at point {} of component {}".format(point, component))
                seen[component].add(point)
        self._graph = DualGraph(size, [(node.first, node.second) for node in self.nodes])

    def dual_graph(self):
        # type: () -> DualGraph
        return self._graph

    def node_polynomial(self, v, i):
        # type: (int, int) -> List[int]
        """Π_{v,i}: the monic polynomial on Z_i vanishing at the nodes Z_i shares with Z_v
        """
        poly = [1]
        for node in self.nodes:
            if node.joins(v, i):
                poly = gf_mul(poly, [1, (-node.point_on(i)) % self.p], self.p, ZZ)
        return [int(c) for c in poly]

    def gluing_constant(self, node, x):
        # type: (Node, Sequence[int]) -> int
        i, j = node.first, node.second
        constant = node.constant % self.p
        for v in range(self.size):
            if v in (i, j):
                continue
            numerator = int(gf_eval(self.node_polynomial(v, i), node.first_point, self.p, ZZ))
            denominator = int(gf_eval(self.node_polynomial(v, j), node.second_point, self.p, ZZ))
            g = numerator * pow(denominator, -1, self.p) % self.p
            constant = constant * pow(g, int(x[v]) - int(x[i]), self.p) % self.p
        return constant

    def genus(self):
        # type: () -> int
        return len(self.nodes) - self.size + 1

    def to_dict(self):
        return {'components': self.size, 'p': self.p, 'nodes': [node.to_dict() for node in self.nodes]}

    def __repr__(self):
        return '<RationalNodalCurve components={} nodes={} p={}>'.format(self.size, len(self.nodes), self.p)


class SectionSpace(object):
    """A basis of global sections, as rows of coefficient vectors

    The coefficients of the polynomial on Z_i, lowest degree first, occupy
    positions offsets[i]..offsets[i] + degrees[i].
    """
    curve = None  # type: RationalNodalCurve
    degrees = None  # type: Multidegree
    x = None  # type: TwistVector
    basis = None  # type: FieldMatrix
    offsets = None  # type: List[int]

    def __init__(self, curve, degrees, x, basis, offsets):
        self.curve = curve
        self.degrees = tuple(int(d) for d in degrees)
        self.x = tuple(int(v) for v in x)
        self.basis = basis
        self.offsets = offsets

    @property
    def dim(self):
        # type: () -> int
        return self.basis.rows

    @property
    def ambient_dim(self):
        # type: () -> int
        return self.basis.cols

    def slots(self, i):
        # type: (int) -> int
        return max(self.degrees[i] + 1, 0)

    def component(self, vector, i):
        # type: (Sequence[int], int) -> List[int]
        return [int(c) for c in vector[self.offsets[i]:self.offsets[i] + self.slots(i)]]

    def euler_characteristic(self):
        # type: () -> int
        return sum(self.degrees) + 1 - self.curve.genus()

    def h1(self):
        # type: () -> int
        return self.dim - self.euler_characteristic()

    def __repr__(self):
        return '<SectionSpace degrees={} x={} dim={}>'.format(list(self.degrees), list(self.x), self.dim)


def h0(curve, w, x=None, shift=None):
    # type: (RationalNodalCurve, Sequence[int], Optional[Sequence[int]], Shift) -> SectionSpace
    """Global sections of the bundle of multidegree w + shift with the gluing of twist vector x
    """
    x = tuple(x) if x is not None else (0,) * curve.size
    shift = tuple(shift) if shift is not None else (0,) * curve.size
    degrees = tuple(int(a) + int(b) for a, b in zip(w, shift))
    p = curve.p
    offsets = []
    total = 0
    for d in degrees:
        offsets.append(total)
        total += max(d + 1, 0)

    equations = []
    for node in curve.nodes:
        row = np.zeros(total, dtype=np.int64)
        constant = curve.gluing_constant(node, x)
        for k in range(max(degrees[node.first] + 1, 0)):
            row[offsets[node.first] + k] += pow(node.first_point, k, p)
        for k in range(max(degrees[node.second] + 1, 0)):
            row[offsets[node.second] + k] -= constant * pow(node.second_point, k, p)
        equations.append(row)
    if equations and total:
        basis = FieldMatrix(equations, p, shape=(len(equations), total)).nullspace()
    else:
        basis = FieldMatrix.identity(total, p)
    return SectionSpace(curve, degrees, x, basis, offsets)


def _to_gf(coefficients):
    # type: (Sequence[int]) -> List[int]
    return gf_strip([int(c) for c in reversed(coefficients)])


def _from_gf(poly, slots):
    # type: (Sequence[int], int) -> List[int]
    coefficients = [int(c) for c in reversed(poly)]
    if len(coefficients) > slots and any(coefficients[slots:]):
        raise exc.VerificationMismatch("Polynomial of degree {} does not fit {} slots".format(len(poly) - 1, slots))
    return (coefficients + [0] * slots)[:slots]


def minimal_map(source, target):
    # type: (SectionSpace, SectionSpace) -> FieldMatrix
    """Reduction of t^n from Λ_x to Λ_y in the section bases, n = max(x - y)
    """
    curve = source.curve
    p = curve.p
    x = np.array(source.x, dtype=np.int64)
    y = np.array(target.x, dtype=np.int64)
    m = y - x + int((x - y).max())
    transposed = FieldMatrix(target.basis.array.T, p, shape=(target.ambient_dim, target.dim))
    columns = []
    for vector in source.basis.array:
        image = np.zeros(target.ambient_dim, dtype=np.int64)
        for i in range(curve.size):
            if m[i] > 0 or source.slots(i) == 0:
                continue
            poly = _to_gf(source.component(vector, i))
            for v in range(curve.size):
                if m[v] > 0:
                    poly = gf_mul(poly, gf_pow(curve.node_polynomial(v, i), int(m[v]), p, ZZ), p, ZZ)
            if poly:
                image[target.offsets[i]:target.offsets[i] + target.slots(i)] = _from_gf(poly, target.slots(i))
        coordinates = transposed.solve(image)
        if coordinates is None:
            raise exc.VerificationMismatch("The image of a section of {!r} is not a section of {!r}".format(
                source, target))
        columns.append(coordinates)
    entries = np.array(columns, dtype=np.int64).T if columns else np.zeros((target.dim, 0), dtype=np.int64)
    return FieldMatrix(entries, p, shape=(target.dim, source.dim))


def twist_map(curve, w, u, x=None, shift=None):
    # type: (RationalNodalCurve, Sequence[int], int, Optional[Sequence[int]], Shift) -> FieldMatrix
    """Multiplication by the section vanishing along Z_u, from multidegree w to its twist at u
    """
    x = tuple(x) if x is not None else (0,) * curve.size
    y = tuple(value + (1 if v == u else 0) for v, value in enumerate(x))
    target = twist(curve.dual_graph(), w, u)
    return minimal_map(h0(curve, w, x, shift), h0(curve, target, y, shift))


def twist_paths_agree(curve, w0, x, y, shift=None, limit=24):
    # type: (RationalNodalCurve, Sequence[int], Sequence[int], Sequence[int], Shift, int) -> bool
    """Compare the composites of single twists along different orders with the direct map from x to y

    Requires y - x >= 0 with a zero coordinate; at most `limit` orders are tried.
    """
    graph = curve.dual_graph()
    steps = [int(b) - int(a) for a, b in zip(x, y)]
    if min(steps) != 0:
        raise ValueError("Expecting y - x >= 0 with a zero coordinate, got {}".format(steps))
    twists = [v for v, count in enumerate(steps) for _ in range(count)]
    direct = minimal_map(h0(curve, apply_twists(graph, w0, x), x, shift),
                         h0(curve, apply_twists(graph, w0, y), y, shift))
    for order in itertools.islice(sorted(set(itertools.permutations(twists))), limit):
        current = list(x)
        composite = None  # type: Optional[FieldMatrix]
        for u in order:
            step = twist_map(curve, apply_twists(graph, w0, current), u, current, shift)
            composite = step if composite is None else step @ composite
            current[u] += 1
        if composite is not None and composite != direct:
            _log.debug("Twist order %s disagrees with the direct map", order)
            return False
    return True


class SpecialFiber(object):
    """The representation on the twist closure after merging homothetic lattices

    `members[k]` lists the closure indices merged into class k, `shifts[a]`
    is c with Λ_a = t^c Λ_root for the root of its class.
    """
    vectors = None  # type: List[TwistVector]
    multidegrees = None  # type: List[Multidegree]
    spaces = None  # type: List[SectionSpace]
    members = None  # type: List[List[int]]
    merge_map = None  # type: List[int]
    shifts = None  # type: List[int]
    rep = None  # type: QuiverRep

    def __init__(self, vectors, multidegrees, spaces, members, shifts, rep):
        self.vectors = vectors
        self.multidegrees = multidegrees
        self.spaces = spaces
        self.members = members
        self.merge_map = [0] * len(vectors)
        for k, group in enumerate(members):
            for a in group:
                self.merge_map[a] = k
        self.shifts = shifts
        self.rep = rep

    def index_of(self, w):
        # type: (Sequence[int]) -> int
        return self.multidegrees.index(tuple(int(v) for v in w))

    def to_dict(self):
        return {'closure': [list(w) for w in self.multidegrees],
                'classes': [[list(self.multidegrees[a]) for a in group] for group in self.members],
                'quiver': self.rep.quiver.to_dict()}

    def __repr__(self):
        return '<SpecialFiber closure={} classes={}>'.format(len(self.vectors), len(self.members))


def _label(w):
    # type: (Sequence[int]) -> str
    return '({})'.format(','.join(str(v) for v in w))


def special_fiber_rep(curve, w0, coeffs, shift=None):
    # type: (RationalNodalCurve, Sequence[int], TwistCoeffs, Shift) -> SpecialFiber
    """Sections over the twist closure, the minimal maps between them and the merged representation

    Two multidegrees are merged when a map between them is invertible; the
    shift between classes is the smallest n_ab + c_a - c_b over their members.
    """
    if not hull_condition(coeffs):
        raise exc.PreconditionFailed("The twist coefficients violate the hull condition")
    graph = curve.dual_graph()
    vectors = twist_closure_vectors(coeffs)
    if not vectors:
        raise exc.PreconditionFailed("The twist closure is empty")
    multidegrees = [apply_twists(graph, w0, x) for x in vectors]
    spaces = [h0(curve, w, x, shift) for w, x in zip(multidegrees, vectors)]
    for w, space in zip(multidegrees, spaces):
        if space.h1() != 0:
            raise exc.PreconditionFailed("h^1 = {} for multidegree {}; the shift is not ample enough".format(
                space.h1(), list(w)))
    dims = set(space.dim for space in spaces)
    if len(dims) != 1:
        raise exc.VerificationMismatch("Section spaces have different dimensions {}".format(sorted(dims)))
    dim = dims.pop()
    size = len(vectors)
    p = curve.p

    maps = {}
    shift_bound = {}
    for a in range(size):
        for b in range(size):
            if a != b:
                maps[(a, b)] = minimal_map(spaces[a], spaces[b])
                shift_bound[(a, b)] = max(u - v for u, v in zip(vectors[a], vectors[b]))

    homothetic = nx.Graph()
    homothetic.add_nodes_from(range(size))
    homothetic.add_edges_from((a, b) for (a, b), matrix in maps.items() if matrix.is_invertible())
    members = sorted((sorted(group) for group in nx.connected_components(homothetic)), key=min)

    shifts = [0] * size
    psi = {}  # type: Dict[int, FieldMatrix]
    for group in members:
        root = group[0]
        psi[root] = FieldMatrix.identity(dim, p)
        for parent, child in nx.bfs_edges(homothetic.subgraph(group), root):
            if maps[(parent, child)].is_invertible():
                shifts[child] = shifts[parent] + shift_bound[(parent, child)]
                psi[child] = maps[(parent, child)] @ psi[parent]
            else:
                shifts[child] = shifts[parent] - shift_bound[(child, parent)]
                psi[child] = maps[(child, parent)].inverse() @ psi[parent]

    classes = len(members)
    n = np.zeros((classes, classes), dtype=np.int64)
    class_maps = {}
    for k, first in enumerate(members):
        for j, second in enumerate(members):
            if k == j:
                continue
            best = min((shift_bound[(a, b)] + shifts[a] - shifts[b], a, b) for a in first for b in second)
            n[k, j], a, b = best
            class_maps[(k, j)] = psi[b].inverse() @ maps[(a, b)] @ psi[a]
            if class_maps[(k, j)].is_zero():
                raise exc.VerificationMismatch("The shift between classes {} and {} is not attained".format(k, j))
    for k in range(classes):
        for j in range(k + 1, classes):
            if n[k, j] + n[j, k] < 1:
                raise exc.VerificationMismatch("Classes {} and {} are homothetic but were not merged".format(k, j))

    quiver = WeightedQuiver(n, [_label(multidegrees[group[0]]) for group in members])
    rep = QuiverRep(quiver, [dim] * classes, {arrow: class_maps[arrow] for arrow in quiver.arrows}, p,
                    pair_maps=class_maps)
    violations = [entry for entry in relation_report(rep) if entry['violation']]
    if violations:
        raise exc.VerificationMismatch("The merged representation violates {} relations, first: {}".format(
            len(violations), violations[0]))
    _log.debug("Special fiber: %d multidegrees in %d classes", size, classes)
    return SpecialFiber(vectors, multidegrees, spaces, members, shifts, rep)


def gamma_s_exponents(curve, w0, coeffs, shift=None, fiber=None):
    # type: (RationalNodalCurve, Sequence[int], TwistCoeffs, Shift, Optional[SpecialFiber]) -> LatticeConfiguration
    """A lattice configuration in one apartment whose M_Γ is the merged special fiber representation

    Every exponent row is normalised to minimum zero.
    """
    if fiber is None:
        fiber = special_fiber_rep(curve, w0, coeffs, shift)
    if not local_linear_independence(fiber.rep)[1]:
        raise exc.NotLocallyIndependent("The special fiber configuration is not locally linearly independent")
    _, rows = apartment_exponents(fiber.rep)
    rows = [[value - min(row) for value in row] for row in rows]
    configuration = config_from_exponents(rows, curve.p, labels=fiber.rep.quiver.labels)
    if len(configuration) != len(fiber.rep.quiver) or not is_isomorphic_profile(build_M(configuration), fiber.rep):
        raise exc.VerificationMismatch("The exponent configuration does not reproduce the special fiber")
    return configuration


def cycle_curve(n01, n02, n12, p=DEFAULT_PRIME):
    # type: (int, int, int, int) -> RationalNodalCurve
    """Three rational components, Z_i and Z_j meeting in n_ij nodes, all gluing constants 1

    The nodes of every component sit at 0, 1, 2, ... in the order the pairs are listed.
    """
    counts = {(0, 1): n01, (0, 2): n02, (1, 2): n12}
    if any(count < 0 for count in counts.values()):
        raise ValueError("Node counts must be non-negative")
    used = [0, 0, 0]
    nodes = []
    for (i, j), count in sorted(counts.items()):
        for _ in range(count):
            nodes.append(Node(i, used[i], j, used[j]))
            used[i] += 1
            used[j] += 1
    if max(used) > p:
        raise ValueError("F_{} has too few points for {} nodes on one component".format(p, max(used)))
    return RationalNodalCurve(3, nodes, p)


def example_shift(curve, w0):
    # type: (RationalNodalCurve, Sequence[int]) -> Multidegree
    """The divisor D_i = (number of nodes on Z_i) - w0_i - 1
    """
    graph = curve.dual_graph()
    return tuple(graph.degree(i) - int(w0[i]) - 1 for i in range(curve.size))


def _tree_shape(rep):
    # type: (QuiverRep) -> Dict[str, bool]
    tree = rep.geometry.tree if rep.geometry is not None else None
    if tree is None:
        return {'star': False, 'chain': False}
    degrees = [d for _, d in tree.degree()]
    size = tree.number_of_nodes()
    return {'star': size <= 2 or max(degrees) == size - 1, 'chain': max(degrees + [0]) <= 2}


def curve_example_report(n01, n02, n12, w0=(1, 1, 1), p=DEFAULT_PRIME):
    # type: (int, int, int, Sequence[int], int) -> Dict[str, Any]
    """Sections, twist maps and the lattice configuration for the three-component curve

    The concentrated multidegrees are the single negative twists of w0.
    """
    curve = cycle_curve(n01, n02, n12, p)
    graph = curve.dual_graph()
    w0 = tuple(int(a) for a in w0)
    shift = example_shift(curve, w0)
    concentrated = [negative_twist(graph, w0, v) for v in graph.vertices]
    coeffs = TwistCoeffs.from_multidegrees(graph, w0, concentrated)
    fiber = special_fiber_rep(curve, w0, coeffs, shift)
    expected_h0 = n01 + n02 + n12

    center = fiber.index_of(w0)
    boundary = [fiber.index_of(twist(graph, w0, v)) for v in graph.vertices]
    tops = [fiber.index_of(w) for w in concentrated]
    spaces = fiber.spaces

    def forward(a, b):
        return minimal_map(spaces[a], spaces[b])

    others = {0: n12, 1: n02, 2: n01}
    images = [Subspace.image_of(forward(tops[v], center)) for v in graph.vertices]
    total = Subspace.zero(spaces[center].dim, p)
    for image in images:
        total = total + image

    _, lli = local_linear_independence(fiber.rep)
    report = {
        'curve': curve.to_dict(),
        'w0': list(w0),
        'shift': list(shift),
        'degree_condition': all(w0[i] < 2 * min(graph.multiplicity(i, j) for j in graph.vertices if j != i)
                                for i in graph.vertices),
        'concentrated': [list(w) for w in concentrated],
        'is_concentrated': [is_concentrated(graph, w, v) for v, w in enumerate(concentrated)],
        'closure': [list(w) for w in fiber.multidegrees],
        'h0': [space.dim for space in spaces],
        'expected_h0': expected_h0,
        'h1_vanishes': all(space.h1() == 0 for space in spaces),
        'boundary_isomorphisms': [forward(center, b).is_invertible() for b in boundary],
        'image_dims': [forward(center, t).rank() for t in tops],
        'expected_image_dims': [expected_h0 - others[v] for v in graph.vertices],
        'kernel_image_dims': [image.dim for image in images],
        'kernel_images_independent': sum(image.dim for image in images) == total.dim == spaces[center].dim,
        'classes': [[list(fiber.multidegrees[a]) for a in group] for group in fiber.members],
        'locally_linearly_independent': lli,
    }
    report.update(_tree_shape(fiber.rep))
    if lli:
        report['exponents'] = gamma_s_exponents(curve, w0, coeffs, shift, fiber=fiber).apartment
    return report
