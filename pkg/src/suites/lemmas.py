"""
Lemma suites: the action of Alt_n on vectors, anisotropy versus trivial
spectrum, the centralizer of Alt_n, and rigidity of alternate hyperplanes.
"""

import logging
import time
from typing import Any, Dict

from src.core.errors import InvalidFieldError
from src.core.schema import check, describe_matrix, describe_vector, finalize_report, new_suite_report
from src.forms.isotropy import is_isotropic, right_orthogonal_congruence
from src.linalg import echelon
from src.linalg.enumeration import DEFAULT_POLICY, EnumerationPolicy, iter_projective
from src.linalg.field import FieldDesc
from src.linalg.matrix import Matrix
from src.linalg.subspace import MatrixSubspace, echelonize, space_apply
from src.spaces.construct import alt_space, p_alt
from src.spaces.spectrum import has_trivial_spectrum, is_totally_intransitive
from src.suites.sampling import (
    all_invertible,
    random_hyperplane,
    random_invertible,
    random_non_alternate,
    random_nonzero,
)
from src.utils.rng import SplitMix64

logger = logging.getLogger(__name__)


def _odd_field(q: int, suite: str) -> FieldDesc:
    field = FieldDesc.prime(q)
    if q == 2:
        raise InvalidFieldError(f"Suite {suite} needs an odd field, got {field}")
    return field


def suite_action1(n: int, q: int, policy: EnumerationPolicy = DEFAULT_POLICY) -> Dict[str, Any]:
    """Alt_n·X = {Y : X^T Y = 0}, of dimension n - 1, for every nonzero X."""
    start = time.perf_counter()
    field = FieldDesc.prime(q)
    policy.check(field, n, "action1 suite")
    report = new_suite_report("action1", {"n": n, "q": q})
    alt = alt_space(n, field)
    for x in iter_projective(n, q):
        image = space_apply(alt, x)
        orthogonal = echelonize(field, n, echelon.nullspace(field, [list(x)], n))
        desc = f"n={n} q={q} X={describe_vector(field, x)}"
        check(report, image == orthogonal, desc, f"Alt_n X = X^perp ({orthogonal})", image)
        check(report, image.dim == n - 1, desc, n - 1, image.dim)
    return finalize_report(report, time.perf_counter() - start)


def suite_anisotropy(
    n: int, q: int, samples: int, seed: int, policy: EnumerationPolicy = DEFAULT_POLICY
) -> Dict[str, Any]:
    """
    P·Alt_n has a trivial spectrum iff P is non-isotropic.

    At n = 2, q = 3 every invertible P is checked; otherwise `samples`
    seeded random invertible matrices.
    """
    start = time.perf_counter()
    field = _odd_field(q, "anisotropy")
    policy.check(field, n, "anisotropy suite")
    exhaustive = (n, q) == (2, 3)
    params = {"n": n, "q": q, "samples": samples, "exhaustive": exhaustive}
    report = new_suite_report("anisotropy", params, None if exhaustive else seed)
    if exhaustive:
        candidates = all_invertible(field, n)
    else:
        rng = SplitMix64(seed)
        candidates = (random_invertible(field, n, rng) for _ in range(samples))
    for index, p in enumerate(candidates):
        trivial = has_trivial_spectrum(p_alt(p), policy)[0]
        isotropic = is_isotropic(p, policy)[0]
        desc = f"#{index} P={describe_matrix(p)} q={q}"
        check(report, trivial == (not isotropic), desc, f"trivial spectrum = {not isotropic}", trivial)
        if not isotropic:
            s = right_orthogonal_congruence(p, policy)
            reduced = s.T @ p @ s
            triangular = reduced.is_lower_triangular() and all(reduced[i, i] for i in range(n))
            check(report, triangular, desc, "S^T P S lower triangular", describe_matrix(reduced))
    return finalize_report(report, time.perf_counter() - start)


def suite_centralizer(n: int, q: int, samples: int, seed: int) -> Dict[str, Any]:
    """P·Alt_n = Alt_n iff P is a nonzero scalar multiple of I_n (n >= 2)."""
    start = time.perf_counter()
    field = FieldDesc.prime(q)
    if n < 2:
        raise ValueError(f"Centralizer suite needs n >= 2, got {n}")
    report = new_suite_report("centralizer", {"n": n, "q": q, "samples": samples}, seed)
    alt = alt_space(n, field)
    for c in range(1, q):
        p = Matrix.scalar_matrix(field, n, c)
        check(report, p_alt(p) == alt, f"P={c}*I_{n} q={q}", True, False)
    rng = SplitMix64(seed)
    for index in range(samples):
        # Every other sample is a scalar matrix so both directions stay exercised.
        if index % 2:
            p = Matrix.scalar_matrix(field, n, random_nonzero(field, rng))
        else:
            p = random_invertible(field, n, rng)
        is_scalar = p == Matrix.scalar_matrix(field, n, p[0, 0])
        stabilizes = p_alt(p) == alt
        check(report, stabilizes == is_scalar, f"#{index} P={describe_matrix(p)} q={q}",
              f"P·Alt = Alt is {is_scalar}", stabilizes)
    return finalize_report(report, time.perf_counter() - start)


def suite_hyperplane_rigidity(
    q: int, samples: int, seed: int, policy: EnumerationPolicy = DEFAULT_POLICY
) -> Dict[str, Any]:
    """
    A 3-dimensional space of 3x3 matrices containing a hyperplane of Alt_3
    and acting totally intransitively is Alt_3 itself.

    Each sample pairs a random hyperplane H of Alt_3 with a random
    non-alternate M, so H + span(M) must not act totally intransitively.
    One control pairs H with an alternate matrix outside H.
    """
    start = time.perf_counter()
    n = 3
    field = _odd_field(q, "hyperplane-rigidity")
    policy.check(field, n, "hyperplane-rigidity suite")
    report = new_suite_report("hyperplane-rigidity", {"n": n, "q": q, "samples": samples}, seed)
    alt = alt_space(n, field)
    rng = SplitMix64(seed)

    control = random_hyperplane(alt, rng)
    outside = next(m for m in alt.basis if not control.contains(m))
    control_space = control + MatrixSubspace.span(field, n, [outside])
    check(report, control_space == alt and is_totally_intransitive(control_space, policy),
          "control: H + alternate matrix", "Alt_3, totally intransitive", control_space == alt)

    for index in range(samples):
        h = random_hyperplane(alt, rng)
        m = random_non_alternate(field, n, rng)
        v = h + MatrixSubspace.span(field, n, [m])
        intransitive = is_totally_intransitive(v, policy)
        check(report, not intransitive,
              f"#{index} q={q} H={[describe_matrix(b) for b in h.basis]} M={describe_matrix(m)}",
              "not totally intransitive", "totally intransitive")
    return finalize_report(report, time.perf_counter() - start)
