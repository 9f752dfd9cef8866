"""Isotropy of the quadratic form X -> X^T P X."""

import logging
from typing import Optional, Tuple

from src.core.errors import DimensionMismatchError, InvalidFieldError, IsotropicFormError
from src.linalg.enumeration import DEFAULT_POLICY, EnumerationPolicy, iter_projective, projective_count, require_finite
from src.linalg.matrix import Matrix, Vector
from src.utils.parallel import first_hit, run_partitioned

logger = logging.getLogger(__name__)


def _isotropic_chunk(args) -> Optional[Vector]:
    p, start, stop = args
    for x in iter_projective(p.rows, p.field.order, start, stop):
        if not p.quadratic(x):
            return x
    return None


def is_isotropic(p: Matrix, policy: EnumerationPolicy = DEFAULT_POLICY) -> Tuple[bool, Optional[Vector]]:
    """
    Brute-force isotropy test over projective representatives.

    Returns:
        (True, X) with X^T P X = 0 for the first such X, or (False, None)
    """
    if not p.is_square:
        raise DimensionMismatchError(f"{p.rows}x{p.cols} form matrix is not square")
    require_finite(p.field, "isotropy test")
    policy.check(p.field, p.rows, "isotropy test")
    total = projective_count(p.field.order, p.rows)
    hit = first_hit(run_partitioned(_isotropic_chunk, p, total, policy.jobs, stop_on=lambda r: r is not None))
    return (hit is not None), hit


def definite_certificate(p: Matrix) -> bool:
    """
    Exact definiteness of (P + P^T)/2 over Q by leading principal minors.

    True means P is non-isotropic; False is inconclusive.
    """
    if not p.field.is_rational:
        raise InvalidFieldError(f"Definiteness is only meaningful over Q, got {p.field}")
    if not p.is_square:
        raise DimensionMismatchError(f"{p.rows}x{p.cols} form matrix is not square")
    sym = p.symmetrized()
    minors = [sym.submatrix(0, k, 0, k).determinant() for k in range(1, p.rows + 1)]
    positive = all(m > 0 for m in minors)
    negative = all((m < 0) if k % 2 else (m > 0) for k, m in enumerate(minors, start=1))
    return positive or negative


def right_orthogonal_congruence(p: Matrix, policy: EnumerationPolicy = DEFAULT_POLICY) -> Matrix:
    """
    Basis change S making S^T P S lower triangular.

    Walks the standard basis: the current vector x is kept, and every later
    vector y is replaced by y - (b(x,y)/b(x,x))·x so that b(x, y) = 0, where
    b(x, y) = x^T P y. The kept vectors are the columns of S.

    Args:
        p: Non-isotropic square form matrix
        policy: Guardrail for the finite-field isotropy precheck

    Returns:
        Invertible S with zero strictly upper part and nonzero diagonal in S^T P S

    Raises:
        IsotropicFormError: If P is isotropic (finite field), has no
            definiteness certificate (Q), or a pivot b(x, x) vanishes
    """
    if not p.is_square:
        raise DimensionMismatchError(f"{p.rows}x{p.cols} form matrix is not square")
    f = p.field
    if f.is_finite:
        isotropic, witness = is_isotropic(p, policy)
        if isotropic:
            raise IsotropicFormError(f"Form is isotropic at X = {witness}")
    elif not definite_certificate(p):
        raise IsotropicFormError("No definiteness certificate for the rational form")

    m = p.rows
    vectors = [[f.one if i == j else f.zero for i in range(m)] for j in range(m)]
    for k in range(m):
        x = vectors[k]
        bxx = p.bilinear(x, x)
        if not bxx:
            raise IsotropicFormError(f"b(x, x) = 0 for x = {tuple(x)}")
        for idx in range(k + 1, m):
            y = vectors[idx]
            c = f.div(p.bilinear(x, y), bxx)
            if c:
                vectors[idx] = [f.sub(a, f.mul(c, b)) for a, b in zip(y, x)]
    return Matrix.from_columns(f, vectors)
