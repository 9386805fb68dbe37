"""Small value classes shared between modules
"""
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Edge = Tuple[int, int]


class PairProfile(object):
    """Relative position of two lattices

    The first lattice is spanned by ``t^exponents[j] * column j`` of
    `adapted_basis`, whose columns are a basis of the second lattice.
    Exponents are weakly decreasing.
    """
    exponents = None  # type: List[int]
    adapted_basis = None  # type: Any

    def __init__(self, exponents, adapted_basis):
        self.exponents = [int(a) for a in exponents]
        self.adapted_basis = adapted_basis

    @property
    def spread(self):
        # type: () -> int
        return self.exponents[0] - self.exponents[-1]

    def __eq__(self, other):
        return _compare_attributes(self, other, ('exponents',))

    def __repr__(self):
        return '<PairProfile {}>'.format(self.exponents)


class AlgebraBasisElem(object):
    """The basis element l_{source,target} of the path algebra; l_{i,i} is the idempotent at i
    """
    source = None  # type: int
    target = None  # type: int

    def __init__(self, source, target):
        self.source = source
        self.target = target

    @property
    def is_idempotent(self):
        # type: () -> bool
        return self.source == self.target

    def __eq__(self, other):
        return _compare_attributes(self, other, ('source', 'target'))

    def __hash__(self):
        return hash((self.source, self.target))

    def __repr__(self):
        return '<AlgebraBasisElem l_{},{}>'.format(self.source, self.target)


class _IntegerLabel(object):
    """An integer per key, with a fixed key order; hashable and comparable
    """
    values = None  # type: Dict[Any, int]

    def __init__(self, values):
        # type: (Dict[Any, int]) -> None
        self.values = {k: int(v) for k, v in values.items()}

    @classmethod
    def from_sequence(cls, keys, values):
        # type: (Sequence[Hashable], Iterable[int]) -> Any
        return cls(dict(zip(keys, values)))

    def keys(self):
        # type: () -> List[Any]
        return sorted(self.values)

    def as_tuple(self):
        # type: () -> Tuple[int, ...]
        return tuple(self.values[k] for k in self.keys())

    def __getitem__(self, key):
        return self.values[key]

    def __iter__(self):
        return iter(self.keys())

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        return _compare_attributes(self, other, ('values',))

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(tuple(sorted(self.values.items())))

    def __lt__(self, other):
        return sorted(self.values.items()) < sorted(other.values.items())

    def to_dict(self):
        # type: () -> Dict[str, int]
        return {_key_str(k): v for k, v in sorted(self.values.items())}

    def __repr__(self):
        return '<{} {}>'.format(self.__class__.__name__, self.to_dict())


class StrataTuple(_IntegerLabel):
    """D = (d_e) indexed by the oriented edges (s, t) of the associated tree
    """
    pass


class ComponentLabel(_IntegerLabel):
    """(r_v) indexed by vertices; the multiplicity of P_v in a generic point
    """
    pass


class Decomposition(object):
    """Multiplicities of the indecomposable summands P_v and R_e of a subrepresentation
    """
    vertex_multiplicities = None  # type: ComponentLabel
    edge_multiplicities = None  # type: StrataTuple

    def __init__(self, vertex_multiplicities, edge_multiplicities):
        # type: (Dict[int, int], Dict[Edge, int]) -> None
        self.vertex_multiplicities = ComponentLabel(vertex_multiplicities)
        self.edge_multiplicities = StrataTuple(edge_multiplicities)

    @property
    def is_projective(self):
        # type: () -> bool
        return not any(self.edge_multiplicities.values.values())

    def summands(self):
        # type: () -> List[Tuple[str, Any, int]]
        """(kind, index, multiplicity) for every summand with non-zero multiplicity
        """
        result = [('P', v, m) for v, m in sorted(self.vertex_multiplicities.values.items()) if m]
        result.extend(('R', e, m) for e, m in sorted(self.edge_multiplicities.values.items()) if m)
        return result

    def __eq__(self, other):
        return _compare_attributes(self, other, ('vertex_multiplicities', 'edge_multiplicities'))

    def __repr__(self):
        return '<Decomposition P={} R={}>'.format(self.vertex_multiplicities.to_dict(),
                                                  self.edge_multiplicities.to_dict())


class PlueckerCheck(object):
    """Outcome of testing a candidate point with Pluecker minors and with the linked condition

    The two verdicts are computed independently; they disagree exactly when
    the minor equations fail to cut out the linked Grassmannian at the point.
    """
    coordinates = None  # type: List[List[int]]
    minors_vanish = None  # type: bool
    linked = None  # type: bool
    details = None  # type: Optional[Dict[str, Any]]

    def __init__(self, coordinates, minors_vanish, linked, details=None):
        self.coordinates = [list(map(int, c)) for c in coordinates]
        self.minors_vanish = bool(minors_vanish)
        self.linked = bool(linked)
        self.details = details

    @property
    def discrepancy(self):
        # type: () -> bool
        return self.minors_vanish != self.linked

    def to_dict(self):
        # type: () -> Dict[str, Any]
        result = {'pluecker_coordinates': self.coordinates,
                  'minors_vanish': self.minors_vanish,
                  'linked_condition': self.linked,
                  'discrepancy': self.discrepancy}
        if self.details:
            result.update(self.details)
        return result

    def __eq__(self, other):
        return _compare_attributes(self, other, ('coordinates', 'minors_vanish', 'linked'))

    def __repr__(self):
        return '<PlueckerCheck minors_vanish={} linked={}>'.format(self.minors_vanish, self.linked)


def _key_str(key):
    # type: (Any) -> str
    if isinstance(key, tuple):
        return '->'.join(str(k) for k in key)
    return str(key)


def _compare_attributes(obj, other, key_attributes):
    """Object comparison helper
    """
    if not isinstance(other, obj.__class__):
        return NotImplemented

    try:
        return all(getattr(obj, a) == getattr(other, a) for a in key_attributes)
    except AttributeError:
        return False
