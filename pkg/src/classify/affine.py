"""
Affine spaces of matrices: reduction to a linear space and equivalence.

An affine space A lies in GL_n exactly when P^-1·A does for any invertible
P in A, and P^-1·A = I + span{P^-1·B} contains the identity. Its
translation space has trivial spectrum iff A lies in GL_n.
"""

import itertools
import logging

from src.core.errors import DimensionMismatchError, GuardrailExceededError, NoInvertibleElementError
from src.forms.similarity import quad_similar
from src.linalg.enumeration import DEFAULT_POLICY, EnumerationPolicy, require_finite
from src.linalg.matrix import Matrix
from src.linalg.subspace import AffineSpace, MatrixSubspace
from src.classify.decompose import classify
from src.utils.rng import SplitMix64

logger = logging.getLogger(__name__)

DEFAULT_SAMPLING_ATTEMPTS = 1000


def find_invertible_element(
    space: AffineSpace,
    policy: EnumerationPolicy = DEFAULT_POLICY,
    seed: int = 0,
    max_attempts: int = DEFAULT_SAMPLING_ATTEMPTS,
) -> Matrix:
    """
    An invertible element of A: the offset if it is invertible, otherwise
    the first one in odometer order over the translation coordinates, or a
    seeded random sample when that enumeration is above the guardrail.

    Raises:
        NoInvertibleElementError: If the search finds none
    """
    f = space.field
    require_finite(f, "invertible element search")
    if space.offset.is_invertible():
        return space.offset
    if space.dim == 0:
        raise NoInvertibleElementError("Affine space is a single singular matrix")

    try:
        policy.check(f, space.dim, "invertible element search")
    except GuardrailExceededError:
        logger.warning(
            f"Coset enumeration over {f}^{space.dim} is above the guardrail; sampling {max_attempts} elements"
        )
        rng = SplitMix64(seed)
        for _ in range(max_attempts):
            candidate = space.element(rng.vector(space.dim, f.order))
            if candidate.is_invertible():
                return candidate
        raise NoInvertibleElementError(f"No invertible element among {max_attempts} sampled elements")

    for coeffs in itertools.product(range(f.order), repeat=space.dim):
        candidate = space.element(coeffs)
        if candidate.is_invertible():
            return candidate
    raise NoInvertibleElementError("Every element of the affine space is singular")


def affine_normalize(
    space: AffineSpace,
    policy: EnumerationPolicy = DEFAULT_POLICY,
    seed: int = 0,
    max_attempts: int = DEFAULT_SAMPLING_ATTEMPTS,
) -> MatrixSubspace:
    """Translation space of P^-1·A for an invertible P in A."""
    p = find_invertible_element(space, policy, seed, max_attempts)
    return space.translation.left_multiply(p.inverse())


def affine_equivalent(
    a: AffineSpace,
    b: AffineSpace,
    policy: EnumerationPolicy = DEFAULT_POLICY,
    seed: int = 0,
    max_attempts: int = DEFAULT_SAMPLING_ATTEMPTS,
) -> bool:
    """
    Whether B = R·A·S for invertible R, S.

    Both spaces are normalized and classified; they are equivalent iff the
    block sizes agree and the quadratic forms of matching blocks are similar.
    """
    a.field.require_same(b.field)
    if a.n != b.n:
        raise DimensionMismatchError(f"Affine spaces of {a.n}x{a.n} and {b.n}x{b.n} matrices")
    da = classify(affine_normalize(a, policy, seed, max_attempts), policy)
    db = classify(affine_normalize(b, policy, seed, max_attempts), policy)
    if da.sizes != db.sizes:
        return False
    return all(quad_similar(p, q) for p, q in zip(da.grams, db.grams))
