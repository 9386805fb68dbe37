"""Exact linear algebra over a prime field F_p

Matrices act on column vectors: a map from F_p^n to F_p^m is an m x n
:class:`FieldMatrix`. Subspaces are stored as the rows of their reduced row
echelon basis, which makes equality and hashing canonical.
"""
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from linkedgrass import exc


class FieldMatrix(object):
    """A dense matrix over F_p
    """
    p = None  # type: int
    array = None  # type: np.ndarray

    def __init__(self, entries, p, shape=None):
        # type: (Iterable, int, Optional[Tuple[int, int]]) -> None
        array = np.array(entries, dtype=np.int64)
        if shape is not None:
            array = array.reshape(shape)
        if array.ndim != 2:
            raise ValueError("Expecting a 2-dimensional array, got shape {}".format(array.shape))
        self.array = array % p
        self.p = p

    @classmethod
    def zeros(cls, rows, cols, p):
        # type: (int, int, int) -> FieldMatrix
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n, p):
        # type: (int, int) -> FieldMatrix
        return cls(np.eye(n, dtype=np.int64), p)

    @classmethod
    def diagonal(cls, values, p):
        # type: (Sequence[int], int) -> FieldMatrix
        return cls(np.diag(np.array(values, dtype=np.int64)), p, shape=(len(values), len(values)))

    @property
    def shape(self):
        # type: () -> Tuple[int, int]
        return self.array.shape  # type: ignore

    @property
    def rows(self):
        # type: () -> int
        return self.array.shape[0]

    @property
    def cols(self):
        # type: () -> int
        return self.array.shape[1]

    @property
    def T(self):
        # type: () -> FieldMatrix
        return FieldMatrix(self.array.T, self.p)

    def __matmul__(self, other):
        # type: (FieldMatrix) -> FieldMatrix
        if self.cols != other.rows:
            raise ValueError("Shape mismatch: {} @ {}".format(self.shape, other.shape))
        return FieldMatrix(self.array.dot(other.array) % self.p, self.p, shape=(self.rows, other.cols))

    def __add__(self, other):
        # type: (FieldMatrix) -> FieldMatrix
        return FieldMatrix(self.array + other.array, self.p)

    def __sub__(self, other):
        # type: (FieldMatrix) -> FieldMatrix
        return FieldMatrix(self.array - other.array, self.p)

    def __neg__(self):
        # type: () -> FieldMatrix
        return FieldMatrix(-self.array, self.p)

    def scale(self, c):
        # type: (int) -> FieldMatrix
        return FieldMatrix(self.array * (c % self.p), self.p)

    def apply(self, vector):
        # type: (Sequence[int]) -> np.ndarray
        """Image of a single column vector
        """
        return self.array.dot(np.array(vector, dtype=np.int64)) % self.p

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and bool(np.array_equal(self.array, other.array))

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.p, self.shape, self.array.tobytes()))

    def __repr__(self):
        return '<FieldMatrix p={} {}>'.format(self.p, self.tolist())

    def tolist(self):
        # type: () -> List[List[int]]
        return [[int(x) for x in row] for row in self.array]

    def is_zero(self):
        # type: () -> bool
        return not self.array.any()

    def rref(self):
        # type: () -> Tuple[FieldMatrix, List[int]]
        """Reduced row echelon form and the list of pivot columns
        """
        a = self.array.copy()
        p = self.p
        rows, cols = a.shape
        pivots = []  # type: List[int]
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nonzero = np.nonzero(a[r:, c])[0]
            if len(nonzero) == 0:
                continue
            pivot = r + int(nonzero[0])
            if pivot != r:
                a[[r, pivot], :] = a[[pivot, r], :]
            a[r, :] = (a[r, :] * pow(int(a[r, c]), -1, p)) % p
            for i in range(rows):
                if i != r and a[i, c]:
                    a[i, :] = (a[i, :] - a[i, c] * a[r, :]) % p
            pivots.append(c)
            r += 1
        return FieldMatrix(a, p, shape=(rows, cols)), pivots

    def rank(self):
        # type: () -> int
        return len(self.rref()[1])

    def nullspace(self):
        # type: () -> FieldMatrix
        """Basis (as rows) of the kernel {x : self @ x = 0}
        """
        reduced, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = np.zeros((len(free), self.cols), dtype=np.int64)
        for k, f in enumerate(free):
            basis[k, f] = 1
            for row, c in enumerate(pivots):
                basis[k, c] = -reduced.array[row, f]
        return FieldMatrix(basis, self.p, shape=(len(free), self.cols))

    def is_invertible(self):
        # type: () -> bool
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self):
        # type: () -> FieldMatrix
        if self.rows != self.cols:
            raise exc.NotInvertible("Non-square matrix of shape {} has no inverse".format(self.shape))
        n = self.rows
        augmented = FieldMatrix(np.hstack([self.array, np.eye(n, dtype=np.int64)]), self.p, shape=(n, 2 * n))
        reduced, pivots = augmented.rref()
        if pivots[:n] != list(range(n)):
            raise exc.NotInvertible("Matrix is singular over F_{}".format(self.p))
        return FieldMatrix(reduced.array[:, n:], self.p, shape=(n, n))

    def solve(self, target):
        # type: (Sequence[int]) -> Optional[np.ndarray]
        """Some x with self @ x = target, or None if there is none
        """
        b = np.array(target, dtype=np.int64).reshape((self.rows, 1))
        augmented = FieldMatrix(np.hstack([self.array, b]), self.p, shape=(self.rows, self.cols + 1))
        reduced, pivots = augmented.rref()
        if pivots and pivots[-1] == self.cols:
            return None
        x = np.zeros(self.cols, dtype=np.int64)
        for row, c in enumerate(pivots):
            x[c] = reduced.array[row, self.cols]
        return x


class Subspace(object):
    """A subspace of F_p^n given by its canonical (RREF) basis
    """
    ambient_dim = None  # type: int
    p = None  # type: int
    basis = None  # type: FieldMatrix

    def __init__(self, vectors, ambient_dim, p):
        # type: (Iterable[Sequence[int]], int, int) -> None
        rows = [np.array(v, dtype=np.int64) for v in vectors]
        matrix = FieldMatrix(rows if rows else np.zeros((0, ambient_dim), dtype=np.int64), p,
                             shape=(len(rows), ambient_dim))
        reduced, pivots = matrix.rref()
        self.basis = FieldMatrix(reduced.array[:len(pivots)], p, shape=(len(pivots), ambient_dim))
        self.ambient_dim = ambient_dim
        self.p = p

    @classmethod
    def zero(cls, ambient_dim, p):
        # type: (int, int) -> Subspace
        return cls([], ambient_dim, p)

    @classmethod
    def full(cls, ambient_dim, p):
        # type: (int, int) -> Subspace
        return cls(np.eye(ambient_dim, dtype=np.int64), ambient_dim, p)

    @classmethod
    def kernel_of(cls, matrix):
        # type: (FieldMatrix) -> Subspace
        return cls(matrix.nullspace().array, matrix.cols, matrix.p)

    @classmethod
    def image_of(cls, matrix):
        # type: (FieldMatrix) -> Subspace
        return cls(matrix.array.T, matrix.rows, matrix.p)

    @property
    def dim(self):
        # type: () -> int
        return self.basis.rows

    @property
    def vectors(self):
        # type: () -> List[np.ndarray]
        return [row.copy() for row in self.basis.array]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return '<Subspace dim={} of F_{}^{} {}>'.format(self.dim, self.p, self.ambient_dim, self.basis.tolist())

    def __add__(self, other):
        # type: (Subspace) -> Subspace
        return Subspace(self.vectors + other.vectors, self.ambient_dim, self.p)

    def contains(self, vector):
        # type: (Sequence[int]) -> bool
        v = np.array(vector, dtype=np.int64) % self.p
        if not v.any():
            return True
        stacked = FieldMatrix(np.vstack([self.basis.array, v]), self.p, shape=(self.dim + 1, self.ambient_dim))
        return stacked.rank() == self.dim

    def contains_subspace(self, other):
        # type: (Subspace) -> bool
        return (self + other).dim == self.dim

    def annihilator(self):
        # type: () -> FieldMatrix
        """Rows spanning the linear forms vanishing on this subspace
        """
        if self.dim == 0:
            return FieldMatrix.identity(self.ambient_dim, self.p)
        return self.basis.nullspace()

    def intersection(self, other):
        # type: (Subspace) -> Subspace
        equations = np.vstack([self.annihilator().array, other.annihilator().array])
        rows = equations.shape[0]
        return Subspace.kernel_of(FieldMatrix(equations, self.p, shape=(rows, self.ambient_dim)))

    def image(self, matrix):
        # type: (FieldMatrix) -> Subspace
        """f(U) for f given as a (target x source) matrix
        """
        if self.dim == 0:
            return Subspace.zero(matrix.rows, self.p)
        return Subspace((self.basis @ matrix.T).array, matrix.rows, self.p)

    def preimage(self, matrix):
        # type: (FieldMatrix) -> Subspace
        """{x : f(x) in self} for f given as a (target x source) matrix
        """
        return Subspace.kernel_of(self.annihilator() @ matrix)

    def restricted_kernel(self, matrix):
        # type: (FieldMatrix) -> Subspace
        """ker(f) intersected with this subspace
        """
        return self.intersection(Subspace.kernel_of(matrix))

    def extend_within(self, larger, count=None):
        # type: (Subspace, Optional[int]) -> List[np.ndarray]
        """Vectors of the canonical basis of `larger` completing this subspace

        The earliest canonical basis vectors not already in the running span
        are taken, which makes the completion deterministic. At most `count`
        vectors are returned when it is given.
        """
        chosen = []  # type: List[np.ndarray]
        span = self
        for vector in larger.vectors:
            if count is not None and len(chosen) >= count:
                break
            if not span.contains(vector):
                chosen.append(vector)
                span = Subspace(span.vectors + [vector], self.ambient_dim, self.p)
        return chosen

    def complement(self):
        # type: () -> List[np.ndarray]
        """Standard basis vectors completing this subspace to the whole space
        """
        return self.extend_within(Subspace.full(self.ambient_dim, self.p))


def random_vector(rng, ambient_dim, p):
    # type: (np.random.Generator, int, int) -> np.ndarray
    return rng.integers(0, p, size=ambient_dim, dtype=np.int64)


def random_combination(rng, vectors, ambient_dim, p):
    # type: (np.random.Generator, Sequence[np.ndarray], int, int) -> np.ndarray
    """Random F_p linear combination of the given vectors
    """
    total = np.zeros(ambient_dim, dtype=np.int64)
    for vector in vectors:
        total = (total + int(rng.integers(0, p)) * np.array(vector, dtype=np.int64)) % p
    return total


def random_subspace(rng, ambient_dim, dim, p):
    # type: (np.random.Generator, int, int, int) -> Subspace
    """A uniformly drawn spanning set; retried until it has the requested dimension
    """
    while True:
        candidate = Subspace([random_vector(rng, ambient_dim, p) for _ in range(dim)], ambient_dim, p)
        if candidate.dim == dim:
            return candidate
