"""
Congruence up to a scalar, similarity of quadratic forms, and the
constructive witness for equivalence of affine spaces I + P·Alt_n.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from src.core.errors import (
    DegenerateFormError,
    DimensionMismatchError,
    EvenCharacteristicError,
    InvalidFieldError,
    NotAlternateError,
    SingularMatrixError,
    SingularWitnessError,
    SizeLimitExceededError,
)
from src.linalg.batched import BATCH_POINTS, batched_rank, inverses, matmul_mod, matrix_block
from src.linalg.field import Scalar
from src.linalg.matrix import Matrix
from src.linalg.subspace import AffineSpace
from src.spaces.construct import p_alt
from src.utils.parallel import first_hit, run_partitioned

logger = logging.getLogger(__name__)

CONGRUENCE_MAX_SIZE = 2
CONGRUENCE_MAX_ORDER = 11


class DiscClass(str, Enum):
    SQUARE = "square"
    NONSQUARE = "nonsquare"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class QuadSimClass:
    """Similarity invariant of a non-degenerate quadratic form over an odd prime field."""

    dim: int
    disc_class: DiscClass


def quad_sim_class(p: Matrix) -> QuadSimClass:
    """
    Dimension plus, in even dimension, the square class of det((P + P^T)/2).

    In odd dimension scaling by a nonsquare flips the determinant class, so
    all non-degenerate forms of one dimension are similar.
    """
    f = p.field
    if not f.is_finite:
        raise InvalidFieldError(f"Quadratic similarity classes are computed over odd prime fields, got {f}")
    if f.characteristic == 2:
        raise EvenCharacteristicError("Symmetrization loses the quadratic form in characteristic 2")
    if not p.is_square:
        raise DimensionMismatchError(f"{p.rows}x{p.cols} form matrix is not square")
    det = p.symmetrized().determinant()
    if not det:
        raise DegenerateFormError("Symmetrized form is degenerate")
    if p.rows % 2:
        return QuadSimClass(p.rows, DiscClass.NOT_APPLICABLE)
    return QuadSimClass(p.rows, DiscClass.SQUARE if f.is_square(det) else DiscClass.NONSQUARE)


def quad_similar(p: Matrix, q: Matrix) -> bool:
    """Whether X^T P X and X^T Q X are similar quadratic forms."""
    p.field.require_same(q.field)
    if (p.rows, p.cols) != (q.rows, q.cols):
        raise DimensionMismatchError(f"Forms of sizes {p.rows} and {q.rows}")
    return quad_sim_class(p) == quad_sim_class(q)


def _congruence_chunk(args) -> Optional[Tuple[int, Matrix]]:
    """First R in [start, stop) with P = λ·R Q R^T, searched a block of candidates at a time."""
    (p, q_form), start, stop = args
    f = p.field
    m, order = p.rows, f.order
    target = np.array(p.entries, dtype=np.int64)
    form = np.array(q_form.to_rows(), dtype=np.int64)
    for lo in range(start, stop, BATCH_POINTS):
        rs = matrix_block(m, order, lo, min(stop, lo + BATCH_POINTS))
        c = matmul_mod(matmul_mod(rs, form, order), rs.transpose(0, 2, 1), order).reshape(len(rs), m * m)
        # λ is read off the first nonzero entry of R Q R^T
        first = (c != 0).argmax(axis=1)
        lam = target[first] * inverses(c[np.arange(len(c)), first], order) % order
        matches = (c * lam[:, None] % order == target).all(axis=1)
        hits = np.flatnonzero((lam != 0) & matches & (batched_rank(rs, order) == m))
        if hits.size:
            k = hits[0]
            return int(lam[k]), Matrix(f, m, m, tuple(int(v) for v in rs[k].ravel()))
    return None


def congruent_up_to_scalar(
    p: Matrix,
    q: Matrix,
    jobs: int = 1,
    max_size: int = CONGRUENCE_MAX_SIZE,
    max_order: int = CONGRUENCE_MAX_ORDER,
) -> Tuple[bool, Optional[Tuple[Scalar, Matrix]]]:
    """
    Decide P ≈ λQ, i.e. P = R(λQ)R^T for some λ != 0 and invertible R.

    Size 1 is decided directly. Otherwise GL_m(F_q) is searched exhaustively
    in odometer order and the first R whose R Q R^T is a scalar multiple of
    P wins.

    Args:
        p: Invertible form matrix
        q: Invertible form matrix of the same size and field
        jobs: Worker count for the search
        max_size: Largest m searched
        max_order: Largest q searched

    Returns:
        (True, (λ, R)) or (False, None)

    Raises:
        SingularMatrixError: If P or Q is singular
        SizeLimitExceededError: Outside the brute-force envelope
    """
    p.field.require_same(q.field)
    if (p.rows, p.cols) != (q.rows, q.cols) or not p.is_square:
        raise DimensionMismatchError(f"Cannot compare a {p.rows}x{p.cols} form with a {q.rows}x{q.cols} form")
    if not p.is_invertible() or not q.is_invertible():
        raise SingularMatrixError("Congruence up to scalar is decided for invertible forms")
    f = p.field
    m = p.rows
    if m == 1:
        return True, (Scalar(f, f.div(p[0, 0], q[0, 0])), Matrix.identity(f, 1))
    if not f.is_finite or m > max_size or f.order > max_order:
        raise SizeLimitExceededError(
            f"Congruence search for {m}x{m} forms over {f} is outside the envelope m <= {max_size}, q <= {max_order}"
        )
    total = f.order ** (m * m)
    hit = first_hit(run_partitioned(_congruence_chunk, (p, q), total, jobs, stop_on=lambda r: r is not None))
    if hit is None:
        return False, None
    lam, r = hit
    return True, (Scalar(f, lam), r)


def equivalence_witness(p: Matrix, q: Matrix, lam, r: Matrix) -> Matrix:
    """
    S with R·(I + P·Alt_n) = (I + Q·Alt_n)·S.

    With A' = λQ - R P R^T alternate and A = -(RP)^-1 A' ((RP)^T)^-1, the
    witness is S = R(I + PA). The set equality is checked before returning.

    Raises:
        NotAlternateError: If λQ - R P R^T is not alternate
        SingularWitnessError: If S is singular or the sets differ
    """
    f = p.field
    for other in (q, r):
        f.require_same(other.field)
    lam = f.normalize(lam)
    if not lam:
        raise SingularWitnessError("Scalar λ must be nonzero")
    n = p.rows
    a_prime = q.scale(lam) - r @ p @ r.T
    if not a_prime.is_alternate():
        raise NotAlternateError(f"λQ - R P R^T is not alternate:\n{a_prime}")
    rp_inv = (r @ p).inverse()
    a = -(rp_inv @ a_prime @ rp_inv.T)
    s = r @ (Matrix.identity(f, n) + p @ a)
    if not s.is_invertible():
        raise SingularWitnessError("Constructed witness S is singular")
    left = AffineSpace(r, p_alt(p).left_multiply(r))
    right = AffineSpace(s, p_alt(q).right_multiply(s))
    if left != right:
        raise SingularWitnessError("Witness does not reproduce the affine set equality")
    logger.debug(f"Equivalence witness found for n={n} over {f}")
    return s
