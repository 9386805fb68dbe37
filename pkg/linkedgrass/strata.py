"""The stratification of Gr(r, M_Γ) for a locally linearly independent configuration

Points of the special fiber are r-dimensional subrepresentations U of M_Γ.
The tuple phi(U) = (dim f_e(U_s))_e over the oriented edges e = (s, t) of the
associated tree determines the isomorphism class of U, and the admissible
tuples are exactly the values phi takes. Strata are ordered by comparing
tuples coordinatewise; the maximal ones are the projective strata, which are
the irreducible components.
"""
import itertools
import logging
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from linkedgrass import exc
from linkedgrass.dvr import LatticeConfiguration, config_from_exponents
from linkedgrass.linalg import Subspace, random_combination
from linkedgrass.quiver import DoubleTreeGeom
from linkedgrass.rep import (QuiverRep, SubRep, SubRepLike, _spaces, ambient_multiplicities, apartment_exponents,
                             build_M, decompose, generate, global_basis, is_subrep, require_lli)
from linkedgrass.types import ComponentLabel, Decomposition, Edge, StrataTuple
from linkedgrass.util import get_budget, next_prime

_log = logging.getLogger(__name__)

DEFAULT_RETRIES = 20

DEFAULT_ENLARGEMENTS = 4

Ambient = Union[QuiverRep, LatticeConfiguration]


def _as_rep(ambient):
    # type: (Ambient) -> QuiverRep
    if isinstance(ambient, LatticeConfiguration):
        return build_M(ambient)
    return ambient


def phi(rep, subrep):
    # type: (QuiverRep, SubRepLike) -> StrataTuple
    """(dim f_e(U_s))_e over the oriented edges e = (s, t)
    """
    geometry = require_lli(rep)
    spaces = _spaces(subrep)
    if not is_subrep(rep, spaces):
        raise exc.NotSubrepresentation("The subspaces are not stable under the arrow maps")
    return StrataTuple({e: spaces[e[0]].image(rep.maps[e]).dim for e in geometry.oriented_edges})


def _fits_grassmannian(r, d_v):
    # type: (int, Dict[int, int]) -> bool
    return 0 <= r <= sum(d_v.values())


def admissible(stratum, r, geometry, d_v):
    # type: (StrataTuple, int, DoubleTreeGeom, Dict[int, int]) -> bool
    """0 <= d_e <= r - d_ē <= sum of d_v over A_e, and s_v >= 0 at every vertex
    """
    if not _fits_grassmannian(r, d_v):
        return False
    if set(stratum.keys()) != set(geometry.oriented_edges):
        return False
    for s, t in geometry.oriented_edges:
        d_e, d_reverse = stratum[(s, t)], stratum[(t, s)]
        if not 0 <= d_e <= r - d_reverse <= geometry.half_tree_sum((s, t), d_v):
            return False
    return all(vertex_count >= 0 for vertex_count in _vertex_counts(stratum, r, geometry).values())


def _vertex_counts(stratum, r, geometry):
    # type: (StrataTuple, int, DoubleTreeGeom) -> Dict[int, int]
    return {v: r - sum(r - stratum[e] for e in geometry.out_edges[v]) for v in geometry.vertices}


def _edge_counts(stratum, r, geometry):
    # type: (StrataTuple, int, DoubleTreeGeom) -> Dict[Edge, int]
    return {(s, t): r - stratum[(s, t)] - stratum[(t, s)] for s, t in geometry.oriented_edges}


def stratum_decomposition(stratum, r, geometry):
    # type: (StrataTuple, int, DoubleTreeGeom) -> Decomposition
    """Isomorphism type of the points of a stratum: r_v = s_v and r_e = r - d_e - d_ē
    """
    return Decomposition(_vertex_counts(stratum, r, geometry), _edge_counts(stratum, r, geometry))


def enumerate_strata(r, geometry, d_v):
    # type: (int, DoubleTreeGeom, Dict[int, int]) -> List[StrataTuple]
    """All admissible tuples, sorted
    """
    if not _fits_grassmannian(r, d_v):
        return []
    undirected = [(s, t) for s, t in geometry.oriented_edges if s < t]
    choices = []
    for s, t in undirected:
        forward_floor = r - geometry.half_tree_sum((t, s), d_v)
        backward_floor = r - geometry.half_tree_sum((s, t), d_v)
        # r - d_ē <= sum over A_e bounds d_ē from below
        choices.append([(a, b) for a in range(max(0, forward_floor), r + 1)
                        for b in range(max(0, backward_floor), r - a + 1)])
    result = []
    for combination in itertools.product(*choices):
        values = {}  # type: Dict[Edge, int]
        for (s, t), (a, b) in zip(undirected, combination):
            values[(s, t)] = a
            values[(t, s)] = b
        stratum = StrataTuple(values)
        if admissible(stratum, r, geometry, d_v):
            result.append(stratum)
    return sorted(result)


def _compositions(total, parts):
    # type: (int, int) -> Iterator[Tuple[int, ...]]
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def components(r, geometry, d_v):
    # type: (int, DoubleTreeGeom, Dict[int, int]) -> List[ComponentLabel]
    """Labels (r_v) of the irreducible components: sum r_v = r and sum over A_e of r_v <= sum over A_e of d_v
    """
    if not _fits_grassmannian(r, d_v):
        return []
    vertices = geometry.vertices
    result = []
    for values in _compositions(r, len(vertices)):
        label = ComponentLabel.from_sequence(vertices, values)
        if all(geometry.half_tree_sum(e, label.values) <= geometry.half_tree_sum(e, d_v)
               for e in geometry.oriented_edges):
            result.append(label)
    return sorted(result)


def component_strata(label, geometry):
    # type: (ComponentLabel, DoubleTreeGeom) -> StrataTuple
    """phi of a generic point of the component: d_e = sum over A_e of r_v
    """
    return StrataTuple({e: geometry.half_tree_sum(e, label.values) for e in geometry.oriented_edges})


def _hom_table(first, second, geometry):
    # type: (Tuple[str, Any], Tuple[str, Any], DoubleTreeGeom) -> int
    kind_a, a = first
    kind_b, b = second
    if kind_a == 'P' and kind_b == 'P':
        return 1
    if kind_a == 'R' and kind_b == 'P':
        return 0 if b in geometry.half_tree[a] else 1
    if kind_a == 'P' and kind_b == 'R':
        return 1 if a in geometry.half_tree[b] else 0
    return 1 if geometry.half_tree[a] <= geometry.half_tree[b] else 0


def stratum_dim(decomposition, d_v, geometry):
    # type: (Decomposition, Dict[int, int], DoubleTreeGeom) -> int
    """dim Hom(M, M_Γ) - dim End(M) for M of the given decomposition type

    Uses dim Hom between indecomposables: 1 between any two P, Hom(R_e, P_v)
    vanishes iff v lies in A_e, Hom(P_v, R_e) is one-dimensional iff v lies in
    A_e and Hom(R_e1, R_e2) is one-dimensional iff A_e1 is contained in A_e2.
    """
    summands = [((kind, index), multiplicity) for kind, index, multiplicity in decomposition.summands()]
    ambient = [(('P', v), m) for v, m in sorted(d_v.items()) if m]
    hom_to_ambient = sum(m * n * _hom_table(a, b, geometry) for a, m in summands for b, n in ambient)
    endomorphisms = sum(m * n * _hom_table(a, b, geometry) for a, m in summands for b, n in summands)
    return hom_to_ambient - endomorphisms


def closure_leq(first, second):
    # type: (StrataTuple, StrataTuple) -> bool
    """The stratum of `first` lies in the closure of the stratum of `second`
    """
    if set(first.keys()) != set(second.keys()):
        raise ValueError("Tuples are indexed by different edges")
    return all(first[e] <= second[e] for e in first.keys())


def maximal_strata(strata):
    # type: (Sequence[StrataTuple]) -> List[StrataTuple]
    unique = sorted(set(strata))
    return [s for s in unique if not any(s != other and closure_leq(s, other) for other in unique)]


def specialize(rep, subrep, edge, seed=0, retries=DEFAULT_RETRIES):
    # type: (QuiverRep, SubRepLike, Edge, int, int) -> SubRep
    """Trade one R_ι ⊕ R_ῑ summand of U for P_u, where ι = (u, u')

    Chooses a generator a of an R_ι summand at u and a' of an R_ῑ summand at
    u', a vector b with f_ι(b) = a', and regenerates U from its other top
    vectors together with a + c b for a non-zero scalar c.
    """
    geometry = require_lli(rep)
    spaces = _spaces(subrep)
    u, u_prime = edge
    reverse = (u_prime, u)
    if edge not in geometry.half_tree:
        raise ValueError("{} is not an oriented edge of the tree".format(edge))
    decomposition = decompose(rep, spaces)
    if decomposition.edge_multiplicities[edge] == 0 or decomposition.edge_multiplicities[reverse] == 0:
        raise exc.PreconditionFailed("R_{0} and R_{1} must both occur in U".format(edge, reverse))
    before = phi(rep, spaces)

    radical = {}
    for v in rep.vertices:
        incoming = Subspace.zero(rep.dims[v], rep.p)
        for s, t in geometry.in_edges(v):
            incoming = incoming + spaces[s].image(rep.maps[(s, t)])
        radical[v] = incoming

    a = radical[u].extend_within(spaces[u].restricted_kernel(rep.maps[edge]), 1)
    a_prime = radical[u_prime].extend_within(spaces[u_prime].restricted_kernel(rep.maps[reverse]), 1)
    if not a or not a_prime:
        raise exc.VerificationMismatch("No generator of R_{} or R_{} outside the radical".format(edge, reverse))
    b = rep.maps[edge].solve(a_prime[0])
    if b is None:
        raise exc.VerificationMismatch("f_{} does not reach the generator of R_{}".format(edge, reverse))

    tops = []  # type: List[Tuple[int, np.ndarray]]
    for v in rep.vertices:
        start = radical[v]
        if v == u:
            start = start + Subspace(a, rep.dims[v], rep.p)
        elif v == u_prime:
            start = start + Subspace(a_prime, rep.dims[v], rep.p)
        tops.extend((v, vector) for vector in start.extend_within(spaces[v]))
    if generate(rep, tops + [(u, a[0]), (u_prime, a_prime[0])]).spaces != spaces:
        raise exc.VerificationMismatch("The chosen top vectors do not generate U")

    rng = np.random.default_rng(seed)
    scalars = [int(c) for c in rng.permutation(np.arange(1, rep.p))][:retries]
    raised = dict(before.values)
    raised[edge] += 1
    expected = StrataTuple(raised)
    for c in scalars:
        candidate = generate(rep, tops + [(u, (a[0] + c * b) % rep.p)])
        if candidate.dimension_vector == [space.dim for space in spaces] and phi(rep, candidate) == expected:
            _log.debug("Specialised along %s with c=%d", edge, c)
            return candidate
    raise exc.GenericChoiceFailed("No scalar in F_{} specialises along {}".format(rep.p, edge), p=rep.p)


def _rebased(rep, configuration, p):
    # type: (QuiverRep, Optional[LatticeConfiguration], int) -> QuiverRep
    if configuration is not None and configuration.apartment is not None:
        return build_M(configuration.rebase(p))
    _, rows = apartment_exponents(rep)
    return build_M(config_from_exponents(rows, p, labels=rep.quiver.labels))


def _realize_once(stratum, r, rep, geometry, zeta, rng):
    # type: (StrataTuple, int, QuiverRep, DoubleTreeGeom, Dict[int, List[np.ndarray]], np.random.Generator) -> SubRep
    vertex_counts = _vertex_counts(stratum, r, geometry)
    edge_counts = _edge_counts(stratum, r, geometry)
    everything = [(v, z) for v in geometry.vertices for z in zeta[v]]
    generators = []
    for u in geometry.vertices:
        for e in geometry.in_edges(u):
            pool = [rep.pair_map(v, u).apply(z) for v, z in everything if v in geometry.half_tree[e]]
            generators.extend((u, random_combination(rng, pool, rep.dims[u], rep.p)) for _ in range(edge_counts[e]))
        pool = [rep.pair_map(v, u).apply(z) for v, z in everything]
        generators.extend((u, random_combination(rng, pool, rep.dims[u], rep.p)) for _ in range(vertex_counts[u]))
    return generate(rep, generators)


def realize_stratum(stratum, r, ambient, seed=0, retries=DEFAULT_RETRIES, enlarge=True,
                    max_enlargements=DEFAULT_ENLARGEMENTS):
    # type: (StrataTuple, int, Ambient, int, int, bool, int) -> SubRep
    """A point U with phi(U) = stratum

    At every vertex u, r - d_e - d_ē random combinations of the images of
    the global vectors from A_e are placed for every edge e pointing to u,
    and s_u random combinations of all of them. When no draw verifies over
    F_p the same configuration is rebuilt over the next prime; the field of
    the returned point is `result.rep.p`.
    """
    configuration = ambient if isinstance(ambient, LatticeConfiguration) else None
    rep = _as_rep(ambient)
    geometry = require_lli(rep)
    d_v = ambient_multiplicities(rep)
    if not admissible(stratum, r, geometry, d_v):
        raise exc.PreconditionFailed("{!r} is not admissible for r={}".format(stratum, r))

    rng = np.random.default_rng(seed)
    for enlargement in range(max_enlargements + 1):
        zeta = global_basis(rep)
        for attempt in range(retries):
            candidate = _realize_once(stratum, r, rep, geometry, zeta, rng)
            if all(dim == r for dim in candidate.dimension_vector) and phi(rep, candidate) == stratum:
                _log.debug("Realised %r over F_%d after %d attempts", stratum, rep.p, attempt + 1)
                return candidate
        if not enlarge or enlargement == max_enlargements:
            break
        p = next_prime(rep.p)
        _log.info("No generic choice over F_%d after %d attempts, enlarging to F_%d", rep.p, retries, p)
        rep = _rebased(rep, configuration, p)
        geometry = require_lli(rep)
    raise exc.GenericChoiceFailed("Could not realise {!r} over F_{}".format(stratum, rep.p), p=rep.p)


def grassmannian_points(ambient_dim, r, q):
    # type: (int, int, int) -> Iterator[Subspace]
    """Every r-dimensional subspace of F_q^ambient_dim, one reduced row echelon form each
    """
    for pivots in itertools.combinations(range(ambient_dim), r):
        free = [(row, col) for row, pivot in enumerate(pivots)
                for col in range(pivot + 1, ambient_dim) if col not in pivots]
        for values in itertools.product(range(q), repeat=len(free)):
            basis = np.zeros((r, ambient_dim), dtype=np.int64)
            for row, pivot in enumerate(pivots):
                basis[row, pivot] = 1
            for (row, col), value in zip(free, values):
                basis[row, col] = value
            yield Subspace(basis, ambient_dim, q)


def _field_rep(ambient, q):
    # type: (Ambient, Optional[int]) -> QuiverRep
    rep = _as_rep(ambient)
    if q is None or q == rep.p:
        return rep
    configuration = ambient if isinstance(ambient, LatticeConfiguration) else None
    return _rebased(rep, configuration, q)


def brute_force_points(ambient, r, q=None, budget=None):
    # type: (Ambient, int, Optional[int], Optional[int]) -> List[SubRep]
    """Every r-dimensional subrepresentation over F_q by exhaustive search

    Vertices are filled in breadth-first order and a candidate subspace is
    kept only if the arrows to the vertices already filled preserve it.
    Every candidate subspace tested counts towards the budget.
    """
    rep = _field_rep(ambient, q)
    limit = get_budget(budget)
    visited = [0]

    def charge(amount=1):
        visited[0] += amount
        if visited[0] > limit:
            raise exc.BudgetExceeded("Brute force search exceeded {} steps".format(limit))

    candidates = {}  # type: Dict[int, List[Subspace]]
    for d in set(rep.dims):
        points = []
        for point in grassmannian_points(d, r, rep.p):
            charge()
            points.append(point)
        candidates[d] = points

    graph = nx.Graph()
    graph.add_nodes_from(rep.vertices)
    graph.add_edges_from(rep.quiver.arrows)
    order = []  # type: List[int]
    for component in sorted(nx.connected_components(graph), key=min):
        order.extend(nx.bfs_tree(graph, min(component)).nodes)

    assigned = {}  # type: Dict[int, Subspace]
    found = []  # type: List[SubRep]

    def compatible(v, space):
        for (s, t), matrix in rep.maps.items():
            if s == v and t in assigned and not assigned[t].contains_subspace(space.image(matrix)):
                return False
            if t == v and s in assigned and not space.contains_subspace(assigned[s].image(matrix)):
                return False
        return True

    def search(position):
        if position == len(order):
            found.append(SubRep(rep, [assigned[v] for v in rep.vertices]))
            return
        v = order[position]
        for space in candidates[rep.dims[v]]:
            charge()
            if compatible(v, space):
                assigned[v] = space
                search(position + 1)
                del assigned[v]

    search(0)
    _log.debug("Brute force over F_%d found %d points in %d steps", rep.p, len(found), visited[0])
    return found


def oracle_report(ambient, r, q=None, budget=None):
    # type: (Ambient, int, Optional[int], Optional[int]) -> Dict[str, Any]
    """Compare the predicted strata and components with an exhaustive count over F_q
    """
    rep = _field_rep(ambient, q)
    geometry = require_lli(rep)
    d_v = ambient_multiplicities(rep)
    points = brute_force_points(rep, r, budget=budget)
    counts = {}  # type: Dict[StrataTuple, int]
    for point in points:
        stratum = phi(rep, point)
        counts[stratum] = counts.get(stratum, 0) + 1
    predicted = enumerate_strata(r, geometry, d_v)
    predicted_components = set(component_strata(label, geometry) for label in components(r, geometry, d_v))
    observed = sorted(counts)
    inadmissible = [s for s in observed if not admissible(s, r, geometry, d_v)]
    return {
        'q': rep.p,
        'points': len(points),
        'strata': [{'tuple': s.to_dict(), 'points': counts.get(s, 0)} for s in predicted],
        'image_matches': observed == predicted,
        'components_match': set(maximal_strata(observed)) == predicted_components,
        'inadmissible': [s.to_dict() for s in inadmissible],
    }


def r1_components_meet(first, second, geometry, d_v):
    # type: (int, int, DoubleTreeGeom, Dict[int, int]) -> bool
    """Whether the r = 1 components of two vertices share an admissible stratum
    """
    tops = [component_strata(ComponentLabel({v: int(v == vertex) for v in geometry.vertices}), geometry)
            for vertex in (first, second)]
    return any(closure_leq(s, tops[0]) and closure_leq(s, tops[1]) for s in enumerate_strata(1, geometry, d_v))


def strata_summary(ambient, r):
    # type: (Ambient, int) -> List[Dict[str, Any]]
    """Per admissible tuple: its decomposition type, dimension and whether it is a component
    """
    rep = _as_rep(ambient)
    geometry = require_lli(rep)
    d_v = ambient_multiplicities(rep)
    tops = set(component_strata(label, geometry) for label in components(r, geometry, d_v))
    summary = []
    for stratum in enumerate_strata(r, geometry, d_v):
        decomposition = stratum_decomposition(stratum, r, geometry)
        summary.append({'tuple': stratum.to_dict(),
                        'summands': [{'kind': kind, 'index': index if kind == 'P' else list(index),
                                      'multiplicity': m} for kind, index, m in decomposition.summands()],
                        'dimension': stratum_dim(decomposition, d_v, geometry),
                        'component': stratum in tops})
    return summary
