"""
Builders for the model spaces: Alt_n, NT_n, P·Alt_n, the ∨-composition,
companion lines and the affine models I_n + V.
"""

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Tuple

from src.core.errors import DimensionMismatchError, MixedFieldsError, SingularMatrixError
from src.linalg.field import FieldDesc, Scalar
from src.linalg.matrix import Matrix
from src.linalg.subspace import AffineSpace, MatrixSubspace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VeeSpec:
    """Block sizes with their Gram matrices, top-left block first."""

    blocks: Tuple[Tuple[int, Matrix], ...]

    def __post_init__(self):
        if not self.blocks:
            raise DimensionMismatchError("A block specification needs at least one block")
        fields = {gram.field for _, gram in self.blocks}
        if len(fields) > 1:
            raise MixedFieldsError(f"Gram matrices over several fields: {sorted(map(str, fields))}")
        for size, gram in self.blocks:
            if size < 1:
                raise DimensionMismatchError(f"Block size must be positive, got {size}")
            if (gram.rows, gram.cols) != (size, size):
                raise DimensionMismatchError(f"Block of size {size} with a {gram.rows}x{gram.cols} Gram matrix")
            if not gram.is_invertible():
                raise SingularMatrixError(f"Gram matrix of a size-{size} block is singular")

    @classmethod
    def from_grams(cls, grams: Sequence[Matrix]) -> "VeeSpec":
        return cls(tuple((g.rows, g) for g in grams))

    @classmethod
    def from_sizes(cls, field: FieldDesc, sizes: Sequence[int]) -> "VeeSpec":
        """Blocks with identity Gram matrices."""
        return cls(tuple((s, Matrix.identity(field, s)) for s in sizes))

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(size for size, _ in self.blocks)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def field(self) -> FieldDesc:
        return self.blocks[0][1].field


def alt_space(n: int, field: FieldDesc) -> MatrixSubspace:
    """
    Alternate n x n matrices, basis E_ij - E_ji for i < j in lexicographic order.

    The basis matrices carry zero diagonals, so in characteristic 2 the space
    is the alternate space and not the (larger) symmetric one.
    """
    basis = [
        Matrix.unit(field, n, i, j) - Matrix.unit(field, n, j, i)
        for i in range(n)
        for j in range(i + 1, n)
    ]
    return MatrixSubspace.span(field, n, basis)


def nt_space(n: int, field: FieldDesc) -> MatrixSubspace:
    """Strictly upper triangular n x n matrices."""
    return MatrixSubspace.span(field, n, [Matrix.unit(field, n, i, j) for i in range(n) for j in range(i + 1, n)])


def p_alt(p: Matrix) -> MatrixSubspace:
    """P·Alt_n; P must be invertible but may be isotropic."""
    if not p.is_square:
        raise DimensionMismatchError(f"{p.rows}x{p.cols} Gram matrix is not square")
    if not p.is_invertible():
        raise SingularMatrixError("P·Alt_n needs an invertible P")
    return alt_space(p.rows, p.field).left_multiply(p)


def vee(upper: MatrixSubspace, lower: MatrixSubspace) -> MatrixSubspace:
    """
    V ∨ W: block matrices [[A, B], [0, C]] with A in V, C in W, B arbitrary.

    dim(V ∨ W) = dim V + dim W + n·p.
    """
    upper.field.require_same(lower.field)
    f = upper.field
    n, p = upper.n, lower.n

    top_right, bottom_left = Matrix.zeros(f, n, p), Matrix.zeros(f, p, n)
    basis = [Matrix.block(f, [[a, top_right], [bottom_left, Matrix.zeros(f, p)]]) for a in upper.basis]
    basis += [Matrix.unit(f, n + p, i, n + j) for i in range(n) for j in range(p)]
    basis += [Matrix.block(f, [[Matrix.zeros(f, n), top_right], [bottom_left, c]]) for c in lower.basis]
    return MatrixSubspace.span(f, n + p, basis)


def model_space(spec: VeeSpec, field: FieldDesc = None) -> MatrixSubspace:
    """P_1·Alt_{n_1} ∨ ... ∨ P_p·Alt_{n_p}."""
    if field is not None:
        field.require_same(spec.field)
    return reduce(vee, [p_alt(gram) for _, gram in spec.blocks])


def companion_line(a, b, field: FieldDesc = None) -> MatrixSubspace:
    """Line spanned by the companion matrix [[0, b], [1, a]] of t^2 - a·t - b."""
    if field is None:
        if not isinstance(a, Scalar):
            raise MixedFieldsError("companion_line needs Scalars or an explicit field")
        field = a.field
    return MatrixSubspace.span(field, 2, [Matrix.from_rows(field, [[0, b], [1, a]])])


def affine_model(spec: VeeSpec, field: FieldDesc = None) -> AffineSpace:
    """I_n + model_space(spec)."""
    return affine_translate(model_space(spec, field))


def affine_translate(space: MatrixSubspace) -> AffineSpace:
    """I_n + V for an arbitrary V."""
    return AffineSpace(Matrix.identity(space.field, space.n), space)
