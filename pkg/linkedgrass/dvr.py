"""Lattices over the discrete valuation ring F_p[t]_(t)

Scalars live in the fraction field K = F_p(t) and are kept exact. A lattice is
given by an invertible basis matrix whose columns span it over R. All
operations here are pure functions of immutable values.

Sign convention used throughout: :func:`smith_pair` returns exponents ``a``
and a basis ``e`` of the *second* lattice such that the *first* lattice is
spanned by ``t^a_j e_j``. With this convention ``n_min(L1, L2) = -min(a)`` and
``homothety_shift(L1, L2) = k`` means ``L1 = t^k L2``.
"""
import itertools
import logging
import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_from_dict, gf_gcd, gf_mul, gf_mul_ground, gf_quo, gf_to_dict

from linkedgrass import exc
from linkedgrass.linalg import FieldMatrix
from linkedgrass.types import PairProfile
from linkedgrass.util import check_prime

_log = logging.getLogger(__name__)

Scalar = Union['LaurentScalar', int]


class LaurentScalar(object):
    """An exact element of F_p(t)

    Stored as ``t^k * num(t) / den(t)`` with ``num(0) != 0``, ``den(0) == 1`` and
    ``gcd(num, den) == 1``; polynomials are dense coefficient lists, highest
    degree first. Laurent polynomials are the elements with ``den == 1``.
    """
    __slots__ = ('p', '_k', '_num', '_den')

    def __init__(self, coefficients=None, p=2):
        # type: (Optional[Dict[int, int]], int) -> None
        coefficients = {e: c % p for e, c in (coefficients or {}).items() if c % p}
        self.p = p
        if not coefficients:
            self._k = 0
            self._num = []  # type: List[int]
            self._den = [1]  # type: List[int]
            return
        k = min(coefficients)
        self._k = k
        self._num = [int(c) for c in gf_from_dict({e - k: c for e, c in coefficients.items()}, p, ZZ)]
        self._den = [1]

    @classmethod
    def _from_parts(cls, p, k, num, den):
        # type: (int, int, List[int], List[int]) -> LaurentScalar
        value = cls(None, p)
        num = [int(c) % p for c in num]
        while num and num[0] == 0:
            num.pop(0)
        if not num:
            return value
        den = [int(c) % p for c in den]
        while den and den[0] == 0:
            den.pop(0)
        if not den:
            raise ZeroDivisionError("Zero denominator in F_{}(t)".format(p))
        while num[-1] == 0:
            num.pop()
            k += 1
        while den[-1] == 0:
            den.pop()
            k -= 1
        common = gf_gcd(num, den, p, ZZ)
        if common != [1]:
            num = gf_quo(num, common, p, ZZ)
            den = gf_quo(den, common, p, ZZ)
        unit = pow(int(den[-1]), -1, p)
        value._k = k
        value._num = [int(c) for c in gf_mul_ground(num, unit, p, ZZ)]
        value._den = [int(c) for c in gf_mul_ground(den, unit, p, ZZ)]
        return value

    @classmethod
    def monomial(cls, coefficient, exponent, p):
        # type: (int, int, int) -> LaurentScalar
        return cls({exponent: coefficient}, p)

    @classmethod
    def coerce(cls, value, p):
        # type: (Scalar, int) -> LaurentScalar
        if isinstance(value, LaurentScalar):
            if value.p != p:
                raise ValueError("Mixing characteristics {} and {}".format(value.p, p))
            return value
        return cls({0: int(value)}, p)

    def is_zero(self):
        # type: () -> bool
        return not self._num

    def valuation(self):
        # type: () -> Union[int, float]
        return math.inf if self.is_zero() else self._k

    def is_laurent(self):
        # type: () -> bool
        return self._den == [1]

    @property
    def coefficients(self):
        # type: () -> Dict[int, int]
        if not self.is_laurent():
            raise ValueError("{!r} is not a Laurent polynomial".format(self))
        return {self._k + e: int(c) for e, c in gf_to_dict(self._num, self.p, symmetric=False).items()}

    def residue(self):
        # type: () -> int
        """Reduction modulo t; only defined for elements of R
        """
        if self.is_zero() or self._k > 0:
            return 0
        if self._k < 0:
            raise ValueError("Element of negative valuation {} has no residue".format(self._k))
        return int(self._num[-1])

    def unit_part(self):
        # type: () -> LaurentScalar
        """The unit u with self = t^valuation * u
        """
        return LaurentScalar._from_parts(self.p, 0, self._num, self._den)

    def shift(self, k):
        # type: (int) -> LaurentScalar
        """Multiply by t^k
        """
        if self.is_zero():
            return self
        return LaurentScalar._from_parts(self.p, self._k + k, self._num, self._den)

    def inverse(self):
        # type: () -> LaurentScalar
        if self.is_zero():
            raise ZeroDivisionError("Zero has no inverse in F_{}(t)".format(self.p))
        return LaurentScalar._from_parts(self.p, -self._k, self._den, self._num)

    def __add__(self, other):
        # type: (Scalar) -> LaurentScalar
        other = LaurentScalar.coerce(other, self.p)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        low = min(self._k, other._k)
        left = gf_mul(_lshift(self._num, self._k - low), other._den, self.p, ZZ)
        right = gf_mul(_lshift(other._num, other._k - low), self._den, self.p, ZZ)
        return LaurentScalar._from_parts(self.p, low, gf_add(left, right, self.p, ZZ),
                                         gf_mul(self._den, other._den, self.p, ZZ))

    __radd__ = __add__

    def __neg__(self):
        # type: () -> LaurentScalar
        if self.is_zero():
            return self
        return LaurentScalar._from_parts(self.p, self._k, gf_mul_ground(self._num, self.p - 1, self.p, ZZ), self._den)

    def __sub__(self, other):
        # type: (Scalar) -> LaurentScalar
        return self + (-LaurentScalar.coerce(other, self.p))

    def __rsub__(self, other):
        # type: (Scalar) -> LaurentScalar
        return LaurentScalar.coerce(other, self.p) - self

    def __mul__(self, other):
        # type: (Scalar) -> LaurentScalar
        other = LaurentScalar.coerce(other, self.p)
        if self.is_zero() or other.is_zero():
            return LaurentScalar(None, self.p)
        return LaurentScalar._from_parts(self.p, self._k + other._k,
                                         gf_mul(self._num, other._num, self.p, ZZ),
                                         gf_mul(self._den, other._den, self.p, ZZ))

    __rmul__ = __mul__

    def __truediv__(self, other):
        # type: (Scalar) -> LaurentScalar
        return self * LaurentScalar.coerce(other, self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentScalar.coerce(other, self.p)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return (self.p, self._k, self._num, self._den) == (other.p, other._k, other._num, other._den)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.p, self._k, tuple(self._num), tuple(self._den)))

    def __repr__(self):
        if self.is_zero():
            return '0'
        if self.is_laurent():
            return _format_laurent(self.coefficients)
        num = LaurentScalar._from_parts(self.p, self._k, self._num, [1])
        den = LaurentScalar._from_parts(self.p, 0, self._den, [1])
        return '({})/({})'.format(_format_laurent(num.coefficients), _format_laurent(den.coefficients))


def _lshift(poly, k):
    # type: (List[int], int) -> List[int]
    """Multiply a dense polynomial by t^k, k >= 0
    """
    return list(poly) + [0] * k if poly else []


def _format_laurent(coefficients):
    # type: (Dict[int, int]) -> str
    """Render a Laurent polynomial in the ingestion grammar
    """
    terms = []
    for e in sorted(coefficients):
        c = coefficients[e]
        if e == 0:
            terms.append(str(c))
        elif e == 1:
            terms.append('{}*t'.format(c))
        else:
            terms.append('{}*t^{}'.format(c, e))
    return ' + '.join(terms)


def valuation(x):
    # type: (LaurentScalar) -> Union[int, float]
    """Minimal exponent with non-zero coefficient; infinity for zero
    """
    return x.valuation()


class LaurentMatrix(object):
    """A rectangular matrix over F_p(t)
    """
    p = None  # type: int
    entries = None  # type: np.ndarray

    def __init__(self, entries, p):
        # type: (Iterable[Iterable[Scalar]], int) -> None
        rows = [[LaurentScalar.coerce(x, p) for x in row] for row in entries]
        width = len(rows[0]) if rows else 0
        if any(len(row) != width for row in rows):
            raise ValueError("Ragged rows in matrix")
        array = np.empty((len(rows), width), dtype=object)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                array[i, j] = x
        self.entries = array
        self.p = p

    @classmethod
    def identity(cls, n, p):
        # type: (int, int) -> LaurentMatrix
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], p)

    @classmethod
    def diagonal_powers(cls, exponents, p):
        # type: (Sequence[int], int) -> LaurentMatrix
        """diag(t^e_1, ..., t^e_d)
        """
        n = len(exponents)
        return cls([[LaurentScalar.monomial(1, exponents[i], p) if i == j else 0 for j in range(n)]
                    for i in range(n)], p)

    @classmethod
    def from_field_matrix(cls, matrix):
        # type: (FieldMatrix) -> LaurentMatrix
        return cls(matrix.tolist(), matrix.p)

    @property
    def shape(self):
        # type: () -> Tuple[int, int]
        return self.entries.shape  # type: ignore

    def __getitem__(self, index):
        return self.entries[index]

    def column(self, j):
        # type: (int) -> List[LaurentScalar]
        return list(self.entries[:, j])

    def tolist(self):
        # type: () -> List[List[LaurentScalar]]
        return [list(row) for row in self.entries]

    def __matmul__(self, other):
        # type: (LaurentMatrix) -> LaurentMatrix
        rows, inner = self.shape
        inner_other, cols = other.shape
        if inner != inner_other:
            raise ValueError("Shape mismatch: {} @ {}".format(self.shape, other.shape))
        result = []
        for i in range(rows):
            row = []
            for j in range(cols):
                total = LaurentScalar(None, self.p)
                for k in range(inner):
                    total = total + self.entries[i, k] * other.entries[k, j]
                row.append(total)
            result.append(row)
        return LaurentMatrix(result, self.p)

    def shift(self, k):
        # type: (int) -> LaurentMatrix
        """Multiply every entry by t^k
        """
        return LaurentMatrix([[x.shift(k) for x in row] for row in self.entries], self.p)

    def scale_columns(self, exponents):
        # type: (Sequence[int]) -> LaurentMatrix
        """Multiply column j by t^exponents[j]
        """
        return LaurentMatrix([[x.shift(exponents[j]) for j, x in enumerate(row)] for row in self.entries], self.p)

    def select_columns(self, indices):
        # type: (Sequence[int]) -> LaurentMatrix
        return LaurentMatrix([[row[j] for j in indices] for row in self.entries], self.p)

    def min_valuation(self):
        # type: () -> Union[int, float]
        return min([x.valuation() for x in self.entries.flat] or [math.inf])

    def reduce(self):
        # type: () -> FieldMatrix
        """Reduction modulo t; every entry must lie in R
        """
        rows, cols = self.shape
        return FieldMatrix([[x.residue() for x in row] for row in self.entries], self.p, shape=(rows, cols))

    def inverse(self):
        # type: () -> LaurentMatrix
        rows, cols = self.shape
        if rows != cols:
            raise exc.NotInvertible("Non-square matrix of shape {} has no inverse".format(self.shape))
        work = [list(row) + [LaurentScalar.coerce(1 if i == j else 0, self.p) for j in range(rows)]
                for i, row in enumerate(self.entries)]
        for c in range(rows):
            pivot = next((i for i in range(c, rows) if not work[i][c].is_zero()), None)
            if pivot is None:
                raise exc.NotInvertible("Matrix is singular over F_{}(t)".format(self.p))
            work[c], work[pivot] = work[pivot], work[c]
            inv = work[c][c].inverse()
            work[c] = [x * inv for x in work[c]]
            for i in range(rows):
                if i != c and not work[i][c].is_zero():
                    factor = work[i][c]
                    work[i] = [x - factor * y for x, y in zip(work[i], work[c])]
        return LaurentMatrix([row[rows:] for row in work], self.p)

    def determinant(self):
        # type: () -> LaurentScalar
        rows, cols = self.shape
        if rows != cols:
            raise ValueError("Determinant of a non-square matrix")
        work = [list(row) for row in self.entries]
        det = LaurentScalar.coerce(1, self.p)
        for c in range(rows):
            pivot = next((i for i in range(c, rows) if not work[i][c].is_zero()), None)
            if pivot is None:
                return LaurentScalar(None, self.p)
            if pivot != c:
                work[c], work[pivot] = work[pivot], work[c]
                det = -det
            det = det * work[c][c]
            inv = work[c][c].inverse()
            for i in range(c + 1, rows):
                if not work[i][c].is_zero():
                    factor = work[i][c] * inv
                    work[i] = [x - factor * y for x, y in zip(work[i], work[c])]
        return det

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.shape == other.shape and all(x == y for x, y in zip(self.entries.flat, other.entries.flat))

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return '<LaurentMatrix {}>'.format([[repr(x) for x in row] for row in self.entries])


class Lattice(object):
    """A full-rank R-lattice in K^d, spanned by the columns of `basis`
    """
    basis = None  # type: LaurentMatrix

    def __init__(self, basis):
        # type: (LaurentMatrix) -> None
        rows, cols = basis.shape
        if rows != cols or rows == 0:
            raise exc.NotInvertible("A lattice basis must be a non-empty square matrix, got shape {}"
                                    .format(basis.shape))
        self.basis = basis
        self._inverse = basis.inverse()  # type: Optional[LaurentMatrix]

    @classmethod
    def standard(cls, d, p):
        # type: (int, int) -> Lattice
        return cls(LaurentMatrix.identity(d, p))

    @classmethod
    def from_exponents(cls, exponents, p):
        # type: (Sequence[int], int) -> Lattice
        """span{t^e_j e_j} in the standard basis
        """
        return cls(LaurentMatrix.diagonal_powers(exponents, p))

    @property
    def p(self):
        # type: () -> int
        return self.basis.p

    @property
    def ambient_dim(self):
        # type: () -> int
        return self.basis.shape[0]

    @property
    def basis_inverse(self):
        # type: () -> LaurentMatrix
        if self._inverse is None:
            self._inverse = self.basis.inverse()
        return self._inverse

    def scaled(self, k):
        # type: (int) -> Lattice
        """t^k L
        """
        return Lattice(self.basis.shift(k))

    def contains(self, vector):
        # type: (Sequence[Scalar]) -> bool
        return membership(self, vector)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return homothety_shift(self, other) == 0

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(_class_key(self))

    def __repr__(self):
        return '<Lattice d={} basis={!r}>'.format(self.ambient_dim, self.basis)


def membership(lattice, vector):
    # type: (Lattice, Sequence[Scalar]) -> bool
    """v is in L iff basis(L)^-1 v has only entries of non-negative valuation
    """
    column = LaurentMatrix([[x] for x in vector], lattice.p)
    return (lattice.basis_inverse @ column).min_valuation() >= 0


def _check_compatible(first, second):
    # type: (Lattice, Lattice) -> None
    if first.ambient_dim != second.ambient_dim or first.p != second.p:
        raise ValueError("Lattices live in different spaces: d={}, p={} vs d={}, p={}".format(
            first.ambient_dim, first.p, second.ambient_dim, second.p))


def smith_pair(first, second):
    # type: (Lattice, Lattice) -> PairProfile
    """Elementary divisors of `first` relative to `second`

    Computes the t-adic Smith form of ``basis(second)^-1 basis(first)``,
    pivoting on an entry of minimal valuation (row-major on ties). Row
    operations are mirrored as column operations on a copy of
    ``basis(second)``, which ends up as the adapted basis.
    """
    _check_compatible(first, second)
    p = first.p
    d = first.ambient_dim
    work = (second.basis_inverse @ first.basis).tolist()
    adapted = second.basis.tolist()
    exponents = []  # type: List[int]

    for s in range(d):
        best = None  # type: Optional[Tuple[int, int, int]]
        for i in range(s, d):
            for j in range(s, d):
                entry = work[i][j]
                if not entry.is_zero() and (best is None or entry.valuation() < best[0]):
                    best = (int(entry.valuation()), i, j)
        if best is None:
            raise exc.NotInvertible("Basis of the first lattice is singular")
        v, i, j = best
        if i != s:
            work[s], work[i] = work[i], work[s]
            for row in adapted:
                row[s], row[i] = row[i], row[s]
        if j != s:
            for row in work:
                row[s], row[j] = row[j], row[s]

        unit = work[s][s].unit_part()
        unit_inverse = unit.inverse()
        work[s] = [x * unit_inverse for x in work[s]]
        for row in adapted:
            row[s] = row[s] * unit

        for k in range(s + 1, d):
            if work[k][s].is_zero():
                continue
            c = work[k][s].shift(-v)
            work[k] = [x - c * y for x, y in zip(work[k], work[s])]
            for row in adapted:
                row[s] = row[s] + c * row[k]
        for col in range(s + 1, d):
            work[s][col] = LaurentScalar(None, p)
        exponents.append(v)

    order = list(reversed(range(d)))
    adapted_matrix = LaurentMatrix([[row[j] for j in order] for row in adapted], p)
    return PairProfile([exponents[j] for j in order], adapted_matrix)


def n_min(first, second):
    # type: (Lattice, Lattice) -> int
    """Minimal n such that t^n first is contained in second
    """
    return -min(smith_pair(first, second).exponents)


def homothety_shift(first, second):
    # type: (Lattice, Lattice) -> Optional[int]
    """k with first = t^k second, or None if the lattices are not homothetic
    """
    exponents = smith_pair(first, second).exponents
    if len(set(exponents)) == 1:
        return exponents[0]
    return None


def intersect(first, second):
    # type: (Lattice, Lattice) -> Lattice
    profile = smith_pair(first, second)
    return Lattice(profile.adapted_basis.scale_columns([max(a, 0) for a in profile.exponents]))


def _class_key(lattice):
    # type: (Lattice) -> Tuple[int, ...]
    """Homothety invariant: sorted exponents against the standard lattice, shifted to start at 0
    """
    exponents = smith_pair(lattice, Lattice.standard(lattice.ambient_dim, lattice.p)).exponents
    low = min(exponents)
    return tuple(sorted(a - low for a in exponents))


class LatticeClass(object):
    """A homothety class [L]; the stored representative is normalised so that
    its minimal exponent against the standard lattice is 0
    """
    representative = None  # type: Lattice

    def __init__(self, lattice):
        # type: (Lattice) -> None
        standard = Lattice.standard(lattice.ambient_dim, lattice.p)
        exponents = smith_pair(lattice, standard).exponents
        low = min(exponents)
        self.representative = lattice.scaled(-low) if low else lattice
        self._key = tuple(sorted(a - low for a in exponents))

    @property
    def ambient_dim(self):
        # type: () -> int
        return self.representative.ambient_dim

    def __eq__(self, other):
        if not isinstance(other, LatticeClass):
            return NotImplemented
        return self._key == other._key and homothety_shift(self.representative, other.representative) is not None

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return '<LatticeClass {}>'.format(self._key)


def adjacent(first, second):
    # type: (LatticeClass, LatticeClass) -> bool
    """Representatives can be chosen with t L1 < L2 < L1 strictly
    """
    exponents = smith_pair(first.representative, second.representative).exponents
    spread = max(exponents) - min(exponents)
    if spread == 0:
        raise ValueError("Adjacency is only defined for distinct classes")
    return spread == 1


def _intersection_with_shift(profile, k):
    # type: (PairProfile, int) -> Lattice
    """L1 ∩ t^k L2 for L1 = span{t^a_j e_j}, L2 = span{e_j}
    """
    return Lattice(profile.adapted_basis.scale_columns([max(a, k) for a in profile.exponents]))


def convex_hull_pair(first, second):
    # type: (LatticeClass, LatticeClass) -> List[LatticeClass]
    """The chain [L_0] = first, ..., [L_a] = second of consecutive adjacent classes
    """
    profile = smith_pair(first.representative, second.representative)
    low = min(profile.exponents)
    shifted = [a - low for a in profile.exponents]
    spread = max(shifted)
    return [LatticeClass(Lattice(profile.adapted_basis.scale_columns([max(b - i, 0) for b in shifted])))
            for i in range(spread + 1)]


def _missing_intersections(classes):
    # type: (Sequence[LatticeClass]) -> List[LatticeClass]
    known = set(classes)
    missing = []  # type: List[LatticeClass]
    for first, second in itertools.combinations(classes, 2):
        profile = smith_pair(first.representative, second.representative)
        for k in range(min(profile.exponents) + 1, max(profile.exponents)):
            candidate = LatticeClass(_intersection_with_shift(profile, k))
            if candidate not in known:
                known.add(candidate)
                missing.append(candidate)
    return missing


def is_convex(classes):
    # type: (Sequence[LatticeClass]) -> bool
    """Closed under [L_i ∩ t^k L_j] for all shifts k

    Shifts outside the exponent range of the pair give one of the two input
    classes, so only the interior of the range is checked.
    """
    return not _missing_intersections(list(classes))


def convex_closure(classes):
    # type: (Sequence[LatticeClass]) -> LatticeConfiguration
    """Smallest convex set of classes containing the input
    """
    current = []  # type: List[LatticeClass]
    for c in classes:
        if c not in current:
            current.append(c)
    if not current:
        raise ValueError("Expecting at least one lattice class")
    while True:
        missing = _missing_intersections(current)
        if not missing:
            break
        _log.debug("Convex closure adds %d classes to %d", len(missing), len(current))
        current.extend(missing)
    return LatticeConfiguration([c.representative for c in current])


class LatticeConfiguration(object):
    """A finite set of pairwise non-homothetic lattice classes with chosen
    representatives and the matrix of minimal shifts n[i][j]

    Homothetic duplicates in the input are merged; `merge_map[k]` is the class
    index of the k-th input lattice and the first lattice of each class is
    kept as its representative.
    """
    representatives = None  # type: List[Lattice]
    classes = None  # type: List[LatticeClass]
    merge_map = None  # type: List[int]
    n = None  # type: np.ndarray
    labels = None  # type: List[str]
    apartment = None  # type: Optional[List[List[int]]]

    def __init__(self, lattices, labels=None, apartment=None):
        # type: (Sequence[Lattice], Optional[Sequence[str]], Optional[Sequence[Sequence[int]]]) -> None
        if not lattices:
            raise ValueError("Expecting at least one lattice")
        first = lattices[0]
        for lattice in lattices[1:]:
            _check_compatible(first, lattice)
        self.representatives = []
        self.classes = []
        self.merge_map = []
        kept = []  # type: List[int]
        index = {}  # type: Dict[LatticeClass, int]
        for position, lattice in enumerate(lattices):
            lattice_class = LatticeClass(lattice)
            if lattice_class in index:
                self.merge_map.append(index[lattice_class])
                continue
            index[lattice_class] = len(self.classes)
            self.merge_map.append(len(self.classes))
            self.classes.append(lattice_class)
            self.representatives.append(lattice)
            kept.append(position)
        if len(kept) < len(lattices):
            _log.debug("Merged %d homothetic duplicates", len(lattices) - len(kept))
        self._index = index
        self.labels = [str(labels[k]) if labels is not None else str(k) for k in kept]
        self.apartment = [list(apartment[k]) for k in kept] if apartment is not None else None

        size = len(self.representatives)
        self.n = np.zeros((size, size), dtype=np.int64)
        for i in range(size):
            for j in range(size):
                if i != j:
                    self.n[i, j] = n_min(self.representatives[i], self.representatives[j])

    @property
    def p(self):
        # type: () -> int
        return self.representatives[0].p

    @property
    def d(self):
        # type: () -> int
        return self.representatives[0].ambient_dim

    def __len__(self):
        return len(self.representatives)

    def index_of(self, lattice_or_class):
        # type: (Union[Lattice, LatticeClass]) -> Optional[int]
        if isinstance(lattice_or_class, Lattice):
            lattice_or_class = LatticeClass(lattice_or_class)
        return self._index.get(lattice_or_class)

    def is_convex(self):
        # type: () -> bool
        return is_convex(self.classes)

    def rebase(self, p):
        # type: (int) -> LatticeConfiguration
        """The same apartment configuration over another prime field
        """
        if self.apartment is None:
            raise exc.PreconditionFailed("Only configurations built from exponents can change characteristic")
        return config_from_exponents(self.apartment, p, labels=self.labels)

    def __repr__(self):
        return '<LatticeConfiguration |I|={} d={} p={}>'.format(len(self), self.d, self.p)


def induced_map(configuration, i, j):
    # type: (LatticeConfiguration, int, int) -> FieldMatrix
    """Matrix of f_ij : L_i/tL_i -> L_j/tL_j in the representative bases
    """
    source = configuration.representatives[i]
    target = configuration.representatives[j]
    shift = int(configuration.n[i, j])
    matrix = target.basis_inverse @ source.basis.shift(shift)
    if matrix.min_valuation() < 0:
        raise exc.VerificationMismatch("Induced map {}->{} has entries of negative valuation; "
                                       "n[{}][{}]={} is wrong".format(i, j, i, j, shift))
    return matrix.reduce()


def config_from_exponents(exponents, p, labels=None):
    # type: (Sequence[Sequence[int]], int, Optional[Sequence[str]]) -> LatticeConfiguration
    """Lattices L_i = span{t^E[i][j] e_j} in one apartment; convexity is not assumed
    """
    check_prime(p)
    rows = [list(map(int, row)) for row in exponents]
    if not rows:
        raise ValueError("Expecting at least one exponent row")
    width = len(rows[0])
    if width == 0 or any(len(row) != width for row in rows):
        raise ValueError("Exponent rows must be non-empty and of equal length")
    return LatticeConfiguration([Lattice.from_exponents(row, p) for row in rows], labels=labels, apartment=rows)


def tree_exponents(tree, root):
    # type: (nx.Graph, object) -> Tuple[List[object], List[List[int]]]
    """a[u][v] = number of edges shared by the tree paths u-root and u-v

    Both paths start at u, so the shared part ends at the median of u, v and
    the root and has length (d(u,root) + d(u,v) - d(v,root)) / 2.
    """
    if not nx.is_tree(tree):
        raise ValueError("Expecting a tree")
    if root not in tree:
        raise ValueError("Root {} is not a vertex of the tree".format(root))
    vertices = sorted(tree.nodes)
    distance = dict(nx.all_pairs_shortest_path_length(tree))
    rows = [[(distance[u][root] + distance[u][v] - distance[v][root]) // 2 for v in vertices] for u in vertices]
    return vertices, rows


def config_from_tree(tree, root, p=2):
    # type: (nx.Graph, object, int) -> LatticeConfiguration
    vertices, rows = tree_exponents(tree, root)
    return config_from_exponents(rows, p, labels=[str(v) for v in vertices])


def config_local_model(n, d, p=2):
    # type: (int, int, int) -> LatticeConfiguration
    """L_i = <t^-1 e_1, ..., t^-1 e_i, e_i+1, ..., e_d> for 0 <= i < n
    """
    if not 1 <= n <= d:
        raise ValueError("Expecting 1 <= n <= d, got n={}, d={}".format(n, d))
    return config_from_exponents([[-1] * i + [0] * (d - i) for i in range(n)], p)
