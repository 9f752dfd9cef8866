"""
Spectral predicates over finite fields.

Every predicate quantifies over the nonzero vectors of F_q^n. Because the
spaces are linear, testing one representative per projective point is
complete: MX = λX with λ != 0 gives (λ^-1 M)X = X, and the dimension of VX
and the invariant closure of X only depend on the line through X.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import numpy as np

from src.linalg import echelon
from src.linalg.batched import BATCH_POINTS, fixed_point_mask, point_dims, projective_block, to_vector
from src.linalg.enumeration import DEFAULT_POLICY, EnumerationPolicy, iter_projective, projective_count, require_finite
from src.linalg.matrix import Matrix, Vector
from src.linalg.subspace import MatrixSubspace, invariant_closure
from src.utils.parallel import first_hit, run_partitioned

logger = logging.getLogger(__name__)

Witness = Tuple[Vector, Matrix]


@dataclass(frozen=True)
class SpectrumReport:
    trivial_spectrum: bool
    witness: Optional[Witness]
    totally_intransitive: bool
    maximal: bool
    irreducible: Optional[bool] = None


def fixed_point_witness(space: MatrixSubspace, x: Vector) -> Optional[Matrix]:
    """
    A matrix M in V with MX = X, or None.

    Solves Σ c_k (B_k X) = X over the basis coordinates; free coordinates
    are set to zero so the witness is reproducible.
    """
    if not space.basis:
        return None
    images = [m.apply(x) for m in space.basis]
    rows = [[img[i] for img in images] for i in range(space.n)]
    coeffs = echelon.solve(space.field, rows, list(x), len(images))
    if coeffs is None:
        return None
    return space.combination(coeffs)


def _batches(space: MatrixSubspace, start: int, stop: int) -> Iterator[np.ndarray]:
    for lo in range(start, stop, BATCH_POINTS):
        yield projective_block(space.n, space.field.order, lo, min(stop, lo + BATCH_POINTS))


def _fixed_point_chunk(args) -> Optional[Witness]:
    space, start, stop = args
    for points in _batches(space, start, stop):
        hits = np.flatnonzero(fixed_point_mask(space, points))
        if hits.size:
            x = to_vector(points[hits[0]])
            return x, fixed_point_witness(space, x)
    return None


def _transitive_chunk(args) -> Optional[Vector]:
    space, start, stop = args
    for points in _batches(space, start, stop):
        hits = np.flatnonzero(point_dims(space, points) == space.n)
        if hits.size:
            return to_vector(points[hits[0]])
    return None


def _reducible_chunk(args) -> Optional[Vector]:
    space, start, stop = args
    for x in iter_projective(space.n, space.field.order, start, stop):
        if not invariant_closure(space, x).is_full:
            return x
    return None


def _search(chunk, space: MatrixSubspace, policy: EnumerationPolicy, what: str):
    require_finite(space.field, what)
    policy.check(space.field, space.n, what)
    total = projective_count(space.field.order, space.n)
    logger.debug(f"{what}: scanning {total} projective points of {space.field}^{space.n}")
    results = run_partitioned(chunk, space, total, policy.jobs, stop_on=lambda r: r is not None)
    return first_hit(results)


def has_trivial_spectrum(
    space: MatrixSubspace, policy: EnumerationPolicy = DEFAULT_POLICY
) -> Tuple[bool, Optional[Witness]]:
    """
    Decide whether no matrix of V has a nonzero eigenvalue in F_q.

    Args:
        space: Matrix subspace over a prime field
        policy: Enumeration cost controls

    Returns:
        (True, None), or (False, (X, M)) with MX = X for the smallest
        enumeration index X

    Raises:
        InfiniteFieldError: Over Q
        GuardrailExceededError: If q^n is above the guardrail
    """
    hit = _search(_fixed_point_chunk, space, policy, "trivial-spectrum test")
    return (hit is None), hit


def is_totally_intransitive(space: MatrixSubspace, policy: EnumerationPolicy = DEFAULT_POLICY) -> bool:
    """VX != F^n for every X."""
    return _search(_transitive_chunk, space, policy, "transitivity test") is None


def is_maximal_trivial(space: MatrixSubspace, policy: EnumerationPolicy = DEFAULT_POLICY) -> bool:
    require_finite(space.field, "maximality test")
    if space.dim != space.n * (space.n - 1) // 2:
        return False
    return has_trivial_spectrum(space, policy)[0]


def is_irreducible(space: MatrixSubspace, policy: EnumerationPolicy = DEFAULT_POLICY) -> bool:
    """No invariant subspace other than {0} and F^n."""
    return _search(_reducible_chunk, space, policy, "irreducibility test") is None


def spectrum_report(
    space: MatrixSubspace, policy: EnumerationPolicy = DEFAULT_POLICY, irreducibility: bool = True
) -> SpectrumReport:
    trivial, witness = has_trivial_spectrum(space, policy)
    maximal = trivial and space.dim == space.n * (space.n - 1) // 2
    report = SpectrumReport(
        trivial_spectrum=trivial,
        witness=witness,
        totally_intransitive=is_totally_intransitive(space, policy),
        maximal=maximal,
        irreducible=is_irreducible(space, policy) if irreducibility else None,
    )
    logger.info(
        f"Spectrum of {space}: trivial={report.trivial_spectrum} maximal={report.maximal} "
        f"irreducible={report.irreducible}"
    )
    return report
