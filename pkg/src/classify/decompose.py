"""
Block decomposition of maximal trivial-spectrum spaces over F_q, q >= 3.

classify() conjugates V into the basis adapted to its invariant flag, where
it becomes block upper triangular, reads the Gram matrix of each diagonal
block and checks that the assembled model reproduces the conjugated space.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

from src.core.errors import ClassificationFailedError, CharTwoUnsupportedError, DimensionMismatchError, NotAFlagError
from src.forms.isotropy import is_isotropic
from src.forms.similarity import CONGRUENCE_MAX_ORDER, CONGRUENCE_MAX_SIZE, congruent_up_to_scalar
from src.linalg.enumeration import DEFAULT_POLICY, EnumerationPolicy, require_finite
from src.linalg.field import FieldDesc
from src.linalg.matrix import Matrix
from src.linalg.subspace import MatrixSubspace, VectorSubspace, conjugate, echelonize
from src.classify.flag import Flag, find_flag
from src.classify.gram import recover_gram
from src.spaces.construct import VeeSpec, model_space

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Decomposition:
    """
    Blocks (n_k, P_k) and basis change S with S^-1·V·S = model_space(blocks)
    whenever `verified` is set.
    """

    blocks: Tuple[Tuple[int, Matrix], ...]
    basis_change: Matrix
    verified: bool

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(size for size, _ in self.blocks)

    @property
    def grams(self) -> Tuple[Matrix, ...]:
        return tuple(g for _, g in self.blocks)

    @property
    def field(self) -> FieldDesc:
        return self.basis_change.field

    @property
    def n(self) -> int:
        return self.basis_change.rows

    def spec(self) -> VeeSpec:
        return VeeSpec(self.blocks)


def adapted_basis(flag: Flag) -> Matrix:
    """
    Columns: a basis of F_1, then a complement of F_1 in F_2, and so on.

    Each complement is taken greedily from the echelon basis of F_k in
    order, keeping the vectors not yet spanned.
    """
    f = flag.subspaces[0].field
    n = flag.subspaces[-1].ambient_dim
    columns: List[tuple] = []
    current = VectorSubspace.zero(f, n)
    for level in flag.subspaces:
        for vec in level.basis:
            if not current.contains(vec):
                columns.append(vec)
                current = echelonize(f, n, columns)
    return Matrix.from_columns(f, columns)


def _block_bounds(sizes) -> List[Tuple[int, int]]:
    bounds = []
    start = 0
    for size in sizes:
        bounds.append((start, start + size))
        start += size
    return bounds


def _check_block_triangular(w: MatrixSubspace, sizes) -> None:
    owner = [k for k, size in enumerate(sizes) for _ in range(size)]
    for m in w.basis:
        for i in range(w.n):
            for j in range(w.n):
                if owner[i] > owner[j] and m[i, j]:
                    raise NotAFlagError("Space is not block upper triangular in the flag-adapted basis")


def diagonal_blocks(w: MatrixSubspace, sizes) -> List[MatrixSubspace]:
    """Images of W under the projections onto the diagonal blocks."""
    return [
        MatrixSubspace.span(w.field, b - a, [m.submatrix(a, b, a, b) for m in w.basis])
        for a, b in _block_bounds(sizes)
    ]


def classify(
    space: MatrixSubspace, policy: EnumerationPolicy = DEFAULT_POLICY, strict: bool = True
) -> Decomposition:
    """
    Decompose a maximal trivial-spectrum space as P_1·Alt ∨ ... ∨ P_p·Alt.

    Args:
        space: Maximal trivial-spectrum space over F_q with q >= 3
        policy: Enumeration cost controls
        strict: Raise ClassificationFailedError when the model does not
            reproduce the space (otherwise return verified=False)

    Returns:
        Decomposition with normalized Gram matrices

    Raises:
        CharTwoUnsupportedError: Over F_2
        NotAFlagError, NotPAltFormError: If the input is not maximal
        ClassificationFailedError: If verification fails or a block Gram
            matrix is isotropic
    """
    f = space.field
    require_finite(f, "classification")
    if f.order == 2:
        raise CharTwoUnsupportedError("Classification over F_2 is not available")
    n = space.n
    if space.dim != n * (n - 1) // 2:
        raise NotAFlagError(f"Space has dimension {space.dim}, a maximal one has {n * (n - 1) // 2}")

    flag = find_flag(space, policy)
    s = adapted_basis(flag)
    w = conjugate(space, s.inverse())
    sizes = flag.sizes
    _check_block_triangular(w, sizes)

    blocks = []
    for size, block in zip(sizes, diagonal_blocks(w, sizes)):
        if size == 1:
            blocks.append((1, Matrix.identity(f, 1)))
            continue
        gram = recover_gram(block)
        if size >= 3:
            raise ClassificationFailedError(f"Block of size {size} over {f}; every such form is isotropic")
        isotropic, witness = is_isotropic(gram, policy)
        if isotropic:
            raise ClassificationFailedError(f"Recovered Gram matrix is isotropic at X = {witness}:\n{gram}")
        blocks.append((size, gram))

    verified = model_space(VeeSpec(tuple(blocks))) == w
    if not verified and strict:
        raise ClassificationFailedError("Model space does not reproduce the conjugated input")
    decomposition = Decomposition(tuple(blocks), s, verified)
    logger.info(f"Classified {space}: block sizes {decomposition.sizes}, verified={verified}")
    return decomposition


def block_lines(decomposition: Decomposition) -> List[Matrix]:
    """P_k·K with K = [[0, 1], [-1, 0]] for every block of size 2."""
    f = decomposition.field
    k = Matrix.from_rows(f, [[0, 1], [-1, 0]])
    return [gram @ k for size, gram in decomposition.blocks if size == 2]


def similar_decompositions(
    da: Decomposition,
    db: Decomposition,
    jobs: int = 1,
    max_size: int = CONGRUENCE_MAX_SIZE,
    max_order: int = CONGRUENCE_MAX_ORDER,
) -> bool:
    """Similarity read off two decompositions: equal sizes, Grams congruent up to scalar."""
    da.field.require_same(db.field)
    if da.sizes != db.sizes:
        return False
    return all(congruent_up_to_scalar(p, q, jobs, max_size, max_order)[0] for p, q in zip(da.grams, db.grams))


def similar_spaces(
    a: MatrixSubspace,
    b: MatrixSubspace,
    policy: EnumerationPolicy = DEFAULT_POLICY,
    max_size: int = CONGRUENCE_MAX_SIZE,
    max_order: int = CONGRUENCE_MAX_ORDER,
) -> bool:
    """Equal block sizes and pairwise Gram congruence up to scalar."""
    a.field.require_same(b.field)
    if a.n != b.n:
        raise DimensionMismatchError(f"Spaces of {a.n}x{a.n} and {b.n}x{b.n} matrices")
    return similar_decompositions(classify(a, policy), classify(b, policy), policy.jobs, max_size, max_order)
