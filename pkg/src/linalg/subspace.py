"""
Canonical subspaces of F^n and of M_n(F), and affine spaces of matrices.

A subspace is stored as the reduced row-echelon basis of its span (pivots
ascending), so two equal subspaces always have identical representations and
equality is plain dataclass equality. Matrix subspaces use the row-major
vectorization of their basis matrices.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from src.core.errors import DimensionMismatchError, MixedFieldsError, ZeroVectorError
from src.linalg import echelon
from src.linalg.field import FieldDesc, Raw
from src.linalg.matrix import Matrix, Vector

logger = logging.getLogger(__name__)


def _reduce(field: FieldDesc, basis: Sequence[Vector], pivots: Sequence[int], vec: Sequence[Raw]) -> List[Raw]:
    out = list(vec)
    for row, pc in zip(basis, pivots):
        c = out[pc]
        if c:
            out = [field.sub(a, field.mul(c, b)) for a, b in zip(out, row)]
    return out


@dataclass(frozen=True)
class VectorSubspace:
    field: FieldDesc
    ambient_dim: int
    basis: Tuple[Vector, ...]
    pivots: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def zero(cls, field: FieldDesc, n: int) -> "VectorSubspace":
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: FieldDesc, n: int) -> "VectorSubspace":
        return echelonize(field, n, [tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)])

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def reduce(self, vec: Sequence[Raw]) -> Vector:
        """Residual of `vec` against the basis; zero iff vec lies in the subspace."""
        if len(vec) != self.ambient_dim:
            raise DimensionMismatchError(f"Vector of length {len(vec)} in F^{self.ambient_dim}")
        return tuple(_reduce(self.field, self.basis, self.pivots, vec))

    def contains(self, vec: Sequence[Raw]) -> bool:
        return not any(self.reduce(vec))

    def is_subspace_of(self, other: "VectorSubspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def join(self, other: "VectorSubspace") -> "VectorSubspace":
        self.field.require_same(other.field)
        return echelonize(self.field, self.ambient_dim, self.basis + other.basis)

    def __add__(self, other: "VectorSubspace") -> "VectorSubspace":
        return self.join(other)

    def image(self, matrix: Matrix) -> "VectorSubspace":
        """span{M·b : b in basis}."""
        return echelonize(self.field, matrix.rows, [matrix.apply(b) for b in self.basis])

    def __str__(self) -> str:
        fmt = self.field.format
        vecs = ", ".join("(" + ",".join(fmt(x) for x in b) + ")" for b in self.basis)
        return f"span{{{vecs}}} in {self.field}^{self.ambient_dim}"


def echelonize(field: FieldDesc, dim: int, vectors: Iterable[Sequence]) -> VectorSubspace:
    """
    Canonical reduced echelon basis of the span of `vectors`.

    Args:
        field: Field the vectors live over
        dim: Ambient dimension
        vectors: Sequences of raw values, Scalars or ints of length `dim`

    Returns:
        VectorSubspace whose representation depends only on the span

    Raises:
        MixedFieldsError: If a vector has the wrong length or a foreign field
    """
    rows = []
    for vec in vectors:
        vec = list(vec)
        if len(vec) != dim:
            raise MixedFieldsError(f"Vector of length {len(vec)} among vectors of length {dim}")
        rows.append([field.normalize(x) for x in vec])
    reduced, pivots = echelon.rref(field, rows) if rows else ([], [])
    return VectorSubspace(field, dim, tuple(tuple(r) for r in reduced), tuple(pivots))


@dataclass(frozen=True)
class MatrixSubspace:
    """Subspace of M_n(F) with a canonical basis of n x n matrices."""

    field: FieldDesc
    n: int
    basis: Tuple[Matrix, ...]
    pivots: Tuple[int, ...]

    @classmethod
    def span(cls, field: FieldDesc, n: int, matrices: Iterable[Matrix]) -> "MatrixSubspace":
        vectors = []
        for m in matrices:
            if m.field != field:
                raise MixedFieldsError(f"Matrix over {m.field} in a space over {field}")
            if (m.rows, m.cols) != (n, n):
                raise MixedFieldsError(f"{m.rows}x{m.cols} matrix in a space of {n}x{n} matrices")
            vectors.append(m.vectorize())
        vs = echelonize(field, n * n, vectors)
        return cls(field, n, tuple(Matrix(field, n, n, v) for v in vs.basis), vs.pivots)

    @classmethod
    def zero(cls, field: FieldDesc, n: int) -> "MatrixSubspace":
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: FieldDesc, n: int) -> "MatrixSubspace":
        return cls.span(field, n, [Matrix.unit(field, n, i, j) for i in range(n) for j in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def as_vector_space(self) -> VectorSubspace:
        return VectorSubspace(self.field, self.n * self.n, tuple(m.vectorize() for m in self.basis), self.pivots)

    def reduce(self, matrix: Matrix) -> Matrix:
        """Canonical coset representative of `matrix` modulo this space."""
        self._check(matrix)
        vec = _reduce(self.field, [m.vectorize() for m in self.basis], self.pivots, matrix.vectorize())
        return Matrix(self.field, self.n, self.n, tuple(vec))

    def contains(self, matrix: Matrix) -> bool:
        return self.reduce(matrix).is_zero()

    def is_subspace_of(self, other: "MatrixSubspace") -> bool:
        return all(other.contains(m) for m in self.basis)

    def __add__(self, other: "MatrixSubspace") -> "MatrixSubspace":
        self.field.require_same(other.field)
        return MatrixSubspace.span(self.field, self.n, self.basis + other.basis)

    def combination(self, coeffs: Sequence[Raw]) -> Matrix:
        """Σ c_k B_k over the canonical basis."""
        if len(coeffs) != self.dim:
            raise DimensionMismatchError(f"{len(coeffs)} coefficients for a space of dimension {self.dim}")
        f = self.field
        acc = [f.zero] * (self.n * self.n)
        for c, m in zip(coeffs, self.basis):
            c = f.normalize(c)
            if c:
                acc = [f.add(a, f.mul(c, b)) for a, b in zip(acc, m.entries)]
        return Matrix(f, self.n, self.n, tuple(acc))

    def left_multiply(self, p: Matrix) -> "MatrixSubspace":
        """span{P·M}."""
        return MatrixSubspace.span(self.field, self.n, [p @ m for m in self.basis])

    def right_multiply(self, p: Matrix) -> "MatrixSubspace":
        return MatrixSubspace.span(self.field, self.n, [m @ p for m in self.basis])

    def _check(self, matrix: Matrix) -> None:
        if matrix.field != self.field:
            raise MixedFieldsError(f"Matrix over {matrix.field} tested against a space over {self.field}")
        if (matrix.rows, matrix.cols) != (self.n, self.n):
            raise DimensionMismatchError(f"{matrix.rows}x{matrix.cols} matrix for a space of {self.n}x{self.n} matrices")

    def __str__(self) -> str:
        return f"{self.dim}-dimensional subspace of M_{self.n}({self.field})"


@dataclass(frozen=True)
class AffineSpace:
    """offset + translation, with the offset reduced against the translation basis."""

    offset: Matrix
    translation: MatrixSubspace

    def __post_init__(self):
        self.translation.field.require_same(self.offset.field)
        canonical = self.translation.reduce(self.offset)
        if canonical != self.offset:
            object.__setattr__(self, "offset", canonical)

    @property
    def field(self) -> FieldDesc:
        return self.translation.field

    @property
    def n(self) -> int:
        return self.translation.n

    @property
    def dim(self) -> int:
        return self.translation.dim

    def element(self, coeffs: Sequence[Raw]) -> Matrix:
        return self.offset + self.translation.combination(coeffs)

    def contains(self, matrix: Matrix) -> bool:
        return self.translation.contains(matrix - self.offset)

    def left_multiply(self, r: Matrix) -> "AffineSpace":
        """R·A = {R·M : M in A}."""
        return AffineSpace(r @ self.offset, self.translation.left_multiply(r))

    def right_multiply(self, s: Matrix) -> "AffineSpace":
        return AffineSpace(self.offset @ s, self.translation.right_multiply(s))

    def __str__(self) -> str:
        return f"{self.dim}-dimensional affine subspace of M_{self.n}({self.field})"


def space_apply(space: MatrixSubspace, x: Sequence) -> VectorSubspace:
    """VX = span{M·X : M in basis(V)}."""
    if len(x) != space.n:
        raise DimensionMismatchError(f"Vector of length {len(x)} for {space.n}x{space.n} matrices")
    f = space.field
    x = [f.normalize(v) for v in x]
    return echelonize(f, space.n, [m.apply(x) for m in space.basis])


def conjugate(space: MatrixSubspace, s: Matrix) -> MatrixSubspace:
    """S·V·S^-1 in canonical form."""
    space.field.require_same(s.field)
    if (s.rows, s.cols) != (space.n, space.n):
        raise DimensionMismatchError(f"{s.rows}x{s.cols} basis change for {space.n}x{space.n} matrices")
    s_inv = s.inverse()
    return MatrixSubspace.span(space.field, space.n, [s @ m @ s_inv for m in space.basis])


def transpose_space(space: MatrixSubspace) -> MatrixSubspace:
    return MatrixSubspace.span(space.field, space.n, [m.transpose() for m in space.basis])


def invariant_closure(space: MatrixSubspace, x: Sequence) -> VectorSubspace:
    """
    Smallest V-invariant subspace containing X.

    Iterates U <- U + V·U; each round either grows U or stops, so at most n
    rounds run.

    Raises:
        ZeroVectorError: If X is zero
    """
    if len(x) != space.n:
        raise DimensionMismatchError(f"Vector of length {len(x)} for {space.n}x{space.n} matrices")
    f = space.field
    u = echelonize(f, space.n, [x])
    if u.dim == 0:
        raise ZeroVectorError("Invariant closure of the zero vector")
    while True:
        images = [m.apply(b) for m in space.basis for b in u.basis]
        grown = echelonize(f, space.n, list(u.basis) + images)
        if grown.dim == u.dim:
            return u
        u = grown
