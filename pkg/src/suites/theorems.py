"""
Theorem suites: the nilpotent specialization, the classification
round-trip and the affine equivalence criterion.
"""

import logging
import time
from typing import Any, Dict, Iterator, List, Sequence, Tuple

from src.core.errors import InvalidFieldError, MSpaceError
from src.core.schema import check, describe_matrix, finalize_report, new_suite_report
from src.classify.affine import affine_equivalent
from src.classify.decompose import classify, similar_decompositions
from src.forms.similarity import congruent_up_to_scalar, equivalence_witness
from src.linalg.enumeration import DEFAULT_POLICY, EnumerationPolicy
from src.linalg.field import FieldDesc
from src.linalg.matrix import Matrix
from src.linalg.subspace import AffineSpace, conjugate
from src.spaces.construct import VeeSpec, affine_translate, model_space, nt_space, p_alt
from src.suites.sampling import (
    random_alternate,
    random_invertible,
    random_non_isotropic,
    random_nonzero,
)
from src.utils.rng import SplitMix64

logger = logging.getLogger(__name__)


def compositions(n: int, parts: Sequence[int] = (1, 2)) -> Iterator[Tuple[int, ...]]:
    """Ordered compositions of n with the given parts, lexicographic."""
    if n == 0:
        yield ()
        return
    for part in sorted(parts):
        if part <= n:
            for rest in compositions(n - part, parts):
                yield (part,) + rest


def _classify_or_error(space, policy):
    try:
        return classify(space, policy, strict=False), None
    except MSpaceError as e:
        return None, f"{type(e).__name__}: {e}"


def suite_gerstenhaber(
    n: int, q: int, samples: int, seed: int, policy: EnumerationPolicy = DEFAULT_POLICY
) -> Dict[str, Any]:
    """A conjugate of NT_n consists of nilpotent matrices and classifies to blocks of size 1."""
    start = time.perf_counter()
    field = FieldDesc.prime(q)
    if q == 2:
        raise InvalidFieldError("Gerstenhaber suite needs q >= 3")
    policy.check(field, n, "gerstenhaber suite")
    report = new_suite_report("gerstenhaber", {"n": n, "q": q, "samples": samples}, seed)
    nt = nt_space(n, field)
    expected = (1,) * n
    rng = SplitMix64(seed)
    bases = [Matrix.identity(field, n)] + [random_invertible(field, n, rng) for _ in range(samples)]
    for index, s in enumerate(bases):
        space = conjugate(nt, s)
        desc = f"S={describe_matrix(s)} n={n} q={q}"
        check(report, all(m.is_nilpotent() for m in space.basis), desc, "nilpotent basis", "non-nilpotent matrix")
        decomposition, error = _classify_or_error(space, policy)
        sizes = decomposition.sizes if decomposition else error
        check(report, sizes == expected, desc, expected, sizes)
        if decomposition is not None:
            triangular = conjugate(space, decomposition.basis_change.inverse())
            check(report, all(m.is_strictly_upper() for m in triangular.basis), desc,
                  "strictly upper triangular in the flag basis", "not triangular")
    return finalize_report(report, time.perf_counter() - start)


def _random_spec(field: FieldDesc, sizes: Tuple[int, ...], rng: SplitMix64) -> VeeSpec:
    return VeeSpec(tuple(
        (size, Matrix.identity(field, 1) if size == 1 else random_non_isotropic(field, size, rng))
        for size in sizes
    ))


def suite_classification_roundtrip(
    q: int, max_n: int, samples: int, seed: int, policy: EnumerationPolicy = DEFAULT_POLICY
) -> Dict[str, Any]:
    """
    classify(S·model·S^-1) recovers the block sizes exactly and every Gram
    matrix up to congruence and scalar, for every composition of n <= max_n
    into parts 1 and 2; distinct compositions are never similar.
    """
    start = time.perf_counter()
    field = FieldDesc.prime(q)
    if q == 2:
        raise InvalidFieldError("Classification round-trip needs q >= 3")
    policy.check(field, max_n, "classification-roundtrip suite")
    report = new_suite_report(
        "classification-roundtrip", {"q": q, "max_n": max_n, "samples": samples}, seed
    )
    rng = SplitMix64(seed)
    for n in range(1, max_n + 1):
        models: List[Tuple[Tuple[int, ...], Any]] = []
        for sizes in compositions(n):
            spec = _random_spec(field, sizes, rng)
            model = model_space(spec)
            models.append((sizes, model))
            grams = "; ".join(describe_matrix(g) for _, g in spec.blocks)
            for _ in range(samples):
                s = random_invertible(field, n, rng)
                desc = f"sizes={sizes} grams={grams} S={describe_matrix(s)} q={q}"
                decomposition, error = _classify_or_error(conjugate(model, s), policy)
                if decomposition is None:
                    check(report, False, desc, "decomposition", error)
                    continue
                check(report, decomposition.verified, desc, "verified", "not verified")
                check(report, decomposition.sizes == sizes, desc, sizes, decomposition.sizes)
                if decomposition.sizes != sizes:
                    continue
                for (size, expected), recovered in zip(spec.blocks, decomposition.grams):
                    congruent = congruent_up_to_scalar(recovered, expected, jobs=policy.jobs)[0]
                    check(report, congruent, desc, f"gram congruent to {describe_matrix(expected)}",
                          describe_matrix(recovered))

        classified = []
        for sizes_a, a in models:
            s = random_invertible(field, n, rng)
            desc = f"sizes={sizes_a} vs conjugate q={q}"
            da, error_a = _classify_or_error(a, policy)
            dc, error_c = _classify_or_error(conjugate(a, s), policy)
            if da is None or dc is None:
                check(report, False, desc, "decomposition", error_a or error_c)
                continue
            check(report, similar_decompositions(da, dc, policy.jobs), desc, True, False)
            classified.append((sizes_a, da))
        for i, (sizes_a, da) in enumerate(classified):
            for sizes_b, db in classified[i + 1:]:
                check(report, not similar_decompositions(da, db, policy.jobs),
                      f"sizes={sizes_a} vs sizes={sizes_b} q={q}", False, True)
    return finalize_report(report, time.perf_counter() - start)


def suite_affine_equivalence(
    fields: Sequence[int], samples: int, seed: int, policy: EnumerationPolicy = DEFAULT_POLICY
) -> Dict[str, Any]:
    """
    I + Alt_2 ~ I + 2·Alt_2 and I + Alt_2 !~ I + NT_2 over F_3; over every
    field in `fields` the constructive witness S reproduces
    R·(I + P·Alt_2) = (I + Q·Alt_2)·S for random alternate perturbations.
    """
    start = time.perf_counter()
    report = new_suite_report("affine-equivalence", {"fields": list(fields), "n": 2, "samples": samples}, seed)
    rng = SplitMix64(seed)

    f3 = FieldDesc.prime(3)
    identity = Matrix.identity(f3, 2)
    base = affine_translate(p_alt(identity))
    scaled = affine_translate(p_alt(identity.scale(2)))
    nt_model = affine_translate(nt_space(2, f3))
    check(report, affine_equivalent(base, scaled, policy), "I+Alt_2 vs I+2Alt_2 over F_3", True, False)
    check(report, not affine_equivalent(base, nt_model, policy), "I+Alt_2 vs I+NT_2 over F_3", False, True)
    r, s = random_invertible(f3, 2, rng), random_invertible(f3, 2, rng)
    moved = AffineSpace(r @ base.offset @ s, base.translation.left_multiply(r).right_multiply(s))
    check(report, affine_equivalent(base, moved, policy),
          f"I+Alt_2 vs R(I+Alt_2)S R={describe_matrix(r)} S={describe_matrix(s)}", True, False)

    for q in fields:
        field = FieldDesc.prime(q)
        for index in range(samples):
            while True:
                p = random_non_isotropic(field, 2, rng)
                lam = random_nonzero(field, rng)
                r = random_invertible(field, 2, rng)
                a_prime = random_alternate(field, 2, rng)
                # Q = λ^-1 (R P R^T + A') must be invertible
                q_form = (r @ p @ r.T + a_prime).scale(field.inv(lam))
                if q_form.is_invertible():
                    break
            desc = (f"#{index} q={q} P={describe_matrix(p)} Q={describe_matrix(q_form)} "
                    f"lambda={lam} R={describe_matrix(r)}")
            try:
                s = equivalence_witness(p, q_form, lam, r)
                ok = AffineSpace(r, p_alt(p).left_multiply(r)) == AffineSpace(s, p_alt(q_form).right_multiply(s))
                check(report, ok, desc, "R(I+P·Alt) = (I+Q·Alt)S", "sets differ")
            except MSpaceError as e:
                check(report, False, desc, "witness", f"{type(e).__name__}: {e}")
    return finalize_report(report, time.perf_counter() - start)
