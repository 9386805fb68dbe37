"""Pluecker coordinates and the equations by 2x2 minors

A candidate point of the special fiber is a k-dimensional subspace x_i of
every reduction L_i / t L_i. Writing each x_i in Pluecker coordinates and
transporting them to a common reference lattice with the k-th compound of the
change of basis, the minor equations ask that the stacked rows have rank at
most one after reduction modulo t. The linked condition instead asks that the
x_i form a subrepresentation of M_Γ. Both are evaluated independently.
"""
import itertools
import logging
from typing import List, Optional, Sequence, Tuple

import sympy

from linkedgrass import exc
from linkedgrass.dvr import LatticeConfiguration, LaurentMatrix, config_from_exponents
from linkedgrass.linalg import FieldMatrix, Subspace
from linkedgrass.rep import ambient_multiplicities, build_M, is_subrep, require_lli
from linkedgrass.strata import component_strata, components, realize_stratum
from linkedgrass.types import PlueckerCheck

_log = logging.getLogger(__name__)


def index_sets(d, k):
    # type: (int, int) -> List[Tuple[int, ...]]
    """Row subsets of size k in lexicographic order; the order of Pluecker coordinates
    """
    return list(itertools.combinations(range(d), k))


def plucker_vector(subspace):
    # type: (Subspace) -> List[int]
    """The k x k minors of the d x k matrix whose columns are the canonical basis of the subspace
    """
    columns = subspace.basis.array.T
    p = subspace.p
    return [int(sympy.Matrix(columns[list(rows), :].tolist()).det()) % p
            for rows in index_sets(subspace.ambient_dim, subspace.dim)]


def compound(matrix, k):
    # type: (LaurentMatrix, int) -> LaurentMatrix
    """The k-th compound: entry (I, J) is the minor on rows I and columns J
    """
    rows, cols = matrix.shape
    entries = []
    for row_set in index_sets(rows, k):
        entries.append([LaurentMatrix([[matrix[i, j] for j in col_set] for i in row_set], matrix.p).determinant()
                        for col_set in index_sets(cols, k)])
    return LaurentMatrix(entries, matrix.p)


def transport_matrices(configuration, k, reference=None):
    # type: (LatticeConfiguration, int, Optional[int]) -> List[LaurentMatrix]
    """A^i = compound(B_ref^-1 B_i, k): Pluecker coordinates in the basis of L_i to those of the reference

    The reference lattice must contain every L_i so that the matrices have
    entries in R; by default the first lattice with that property is taken.
    """
    representatives = configuration.representatives
    candidates = [reference] if reference is not None else range(len(representatives))
    for index in candidates:
        base = representatives[index]
        changes = [base.basis_inverse @ lattice.basis for lattice in representatives]
        if all(change.min_valuation() >= 0 for change in changes):
            return [compound(change, k) for change in changes]
    raise exc.PreconditionFailed("No reference lattice contains every lattice of the configuration")


def minors_vanish(rows):
    # type: (FieldMatrix) -> Tuple[bool, int]
    """Whether every 2x2 minor vanishes, and the number of minors that do not
    """
    p = rows.p
    array = rows.array
    failures = 0
    for r1, r2 in itertools.combinations(range(rows.rows), 2):
        for c1, c2 in itertools.combinations(range(rows.cols), 2):
            if (array[r1, c1] * array[r2, c2] - array[r1, c2] * array[r2, c1]) % p:
                failures += 1
    return failures == 0, failures


def pluecker_check(configuration, points, reference=None):
    # type: (LatticeConfiguration, Sequence[Subspace], Optional[int]) -> PlueckerCheck
    """Evaluate the minor equations and the linked condition at one candidate point
    """
    if len(points) != len(configuration):
        raise ValueError("Expecting one subspace per lattice class, got {}".format(len(points)))
    dims = set(point.dim for point in points)
    if len(dims) != 1:
        raise ValueError("All subspaces of a candidate point have the same dimension")
    k = dims.pop()
    coordinates = [plucker_vector(point) for point in points]
    matrices = transport_matrices(configuration, k, reference)
    stacked = []
    for matrix, vector in zip(matrices, coordinates):
        column = LaurentMatrix([[c] for c in vector], configuration.p)
        stacked.append([row[0] for row in (matrix @ column).reduce().tolist()])
    vanish, failures = minors_vanish(FieldMatrix(stacked, configuration.p))
    linked = is_subrep(build_M(configuration), points)
    _log.debug("Minor equations %s, linked condition %s", vanish, linked)
    return PlueckerCheck(coordinates, vanish, linked,
                         details={'transported_rows': stacked, 'non_vanishing_minors': failures})


def counterexample_fixture(p=2):
    # type: (int) -> Tuple[LatticeConfiguration, List[Subspace]]
    """L_1 standard, L_2 = t^-1 R e_1 + R e_2 + R e_3 + R e_4, x_1 = <e_1, e_2>, x_2 = <e_2 + e_4, e_3>
    """
    configuration = config_from_exponents([[0, 0, 0, 0], [-1, 0, 0, 0]], p, labels=['L1', 'L2'])
    points = [Subspace([[1, 0, 0, 0], [0, 1, 0, 0]], 4, p),
              Subspace([[0, 1, 0, 1], [0, 0, 1, 0]], 4, p)]
    return configuration, points


def linked_witness(configuration, k, seed=0):
    # type: (LatticeConfiguration, int, int) -> List[Subspace]
    """A generic point of a component of LG_k, one subspace per lattice class, over F_p itself

    Components supported on more vertices are tried first.
    """
    rep = build_M(configuration)
    geometry = require_lli(rep)
    labels = components(k, geometry, ambient_multiplicities(rep))
    labels.sort(key=lambda label: -sum(1 for value in label.values.values() if value))
    for label in labels:
        try:
            point = realize_stratum(component_strata(label, geometry), k, rep, seed=seed, enlarge=False)
        except exc.GenericChoiceFailed:
            _log.debug("No generic point of %r over F_%d", label, configuration.p)
            continue
        return [point[v] for v in range(len(configuration))]
    raise exc.GenericChoiceFailed("No component of LG_{} has a generic point over F_{}".format(k, configuration.p),
                                  p=configuration.p)


def counterexample(p=2):
    # type: (int) -> PlueckerCheck
    """A point satisfying every minor equation that is not a subrepresentation
    """
    configuration, points = counterexample_fixture(p)
    return pluecker_check(configuration, points, reference=1)
