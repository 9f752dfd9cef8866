"""
Exhaustive census of M_2(F_3) and the F_2 counterexample.

Over F_3 every line and every plane of M_2 is enumerated: the planes show
that no 2-dimensional space has a trivial spectrum, the lines are sorted into
nilpotent lines (similar to NT_2) and lines whose characteristic polynomial
is irreducible (a single block of size 2). Over F_2 a 3-dimensional space of
3x3 matrices has a trivial spectrum and is irreducible, yet is not P·Alt_3.
"""

import itertools
import logging
import time
from typing import Any, Dict

from src.core.errors import MSpaceError, NotPAltFormError
from src.core.schema import add_check, add_failure, check, describe_matrix, finalize_report, new_suite_report
from src.classify.decompose import classify
from src.classify.gram import recover_gram
from src.linalg.enumeration import DEFAULT_POLICY, EnumerationPolicy, gaussian_binomial, iter_subspace_bases, projective_count
from src.linalg.field import FieldDesc
from src.linalg.matrix import Matrix
from src.linalg.subspace import MatrixSubspace
from src.spaces.spectrum import has_trivial_spectrum, is_irreducible

logger = logging.getLogger(__name__)

F2_MATRICES = (
    ((0, 1, 0), (0, 0, 0), (0, 1, 0)),
    ((1, 0, 1), (1, 0, 0), (1, 0, 0)),
    ((0, 0, 0), (0, 1, 1), (1, 1, 0)),
)


def _has_nonzero_eigenvalue(m: Matrix) -> bool:
    """Root test of t^2 - tr(M)·t + det(M) at every nonzero t."""
    f = m.field
    tr = f.add(m[0, 0], m[1, 1])
    det = m.determinant()
    return any(not f.add(f.sub(f.mul(t, t), f.mul(tr, t)), det) for t in range(1, f.order))


def suite_exhaustive_n2_q3(policy: EnumerationPolicy = DEFAULT_POLICY) -> Dict[str, Any]:
    """All 40 lines and all 130 planes of M_2(F_3)."""
    start = time.perf_counter()
    field = FieldDesc.prime(3)
    report = new_suite_report("exhaustive-n2-q3", {"n": 2, "q": 3})

    lines = 0
    trivial_lines = 0
    oracle_lines = 0
    nilpotent_lines = 0
    irreducible_lines = 0
    for basis in iter_subspace_bases(4, 1, 3):
        lines += 1
        m = Matrix(field, 2, 2, basis[0])
        line = MatrixSubspace.span(field, 2, [m])
        desc = f"line M={describe_matrix(m)}"
        trivial = has_trivial_spectrum(line, policy)[0]
        oracle = not _has_nonzero_eigenvalue(m)
        trivial_lines += trivial
        oracle_lines += oracle
        check(report, trivial == oracle, desc, f"trivial spectrum = {oracle}", trivial)
        if not trivial:
            continue
        nilpotent = m.is_nilpotent()
        nilpotent_lines += nilpotent
        irreducible_lines += not nilpotent
        expected_sizes = (1, 1) if nilpotent else (2,)
        try:
            sizes = classify(line, policy).sizes
        except MSpaceError as e:
            sizes = f"{type(e).__name__}: {e}"
        check(report, sizes == expected_sizes, desc, expected_sizes, sizes)
        # a nilpotent M has eigenvalue 0, so the line is triangularizable
        irreducible = is_irreducible(line, policy)
        check(report, irreducible == (not nilpotent), desc, f"irreducible = {not nilpotent}", irreducible)

    check(report, lines == projective_count(3, 4), "line count", projective_count(3, 4), lines)
    check(report, trivial_lines == oracle_lines, "trivial-spectrum line count", oracle_lines, trivial_lines)
    check(report, trivial_lines == nilpotent_lines + irreducible_lines, "line census split",
          nilpotent_lines + irreducible_lines, trivial_lines)

    planes = 0
    for basis in iter_subspace_bases(4, 2, 3):
        planes += 1
        plane = MatrixSubspace.span(field, 2, [Matrix(field, 2, 2, b) for b in basis])
        trivial = has_trivial_spectrum(plane, policy)[0]
        check(report, not trivial, f"plane {[describe_matrix(m) for m in plane.basis]}", False, trivial)
    check(report, planes == gaussian_binomial(4, 2, 3), "plane count", gaussian_binomial(4, 2, 3), planes)

    report["meta"]["census"] = {
        "lines": lines,
        "planes": planes,
        "trivial_lines": trivial_lines,
        "nilpotent_lines": nilpotent_lines,
        "irreducible_lines": irreducible_lines,
    }
    logger.info(f"M_2(F_3) census: {trivial_lines} of {lines} lines have a trivial spectrum")
    return finalize_report(report, time.perf_counter() - start)


def f2_space() -> MatrixSubspace:
    field = FieldDesc.prime(2)
    return MatrixSubspace.span(field, 3, [Matrix.from_rows(field, rows) for rows in F2_MATRICES])


def suite_f2_counterexample(policy: EnumerationPolicy = DEFAULT_POLICY) -> Dict[str, Any]:
    """I_3 + xA + yB + zC is invertible for all x, y, z in F_2, and span(A, B, C) escapes the classification."""
    start = time.perf_counter()
    field = FieldDesc.prime(2)
    report = new_suite_report("f2-counterexample", {"n": 3, "q": 2})
    a, b, c = (Matrix.from_rows(field, rows) for rows in F2_MATRICES)
    identity = Matrix.identity(field, 3)
    for x, y, z in itertools.product(range(2), repeat=3):
        det = (identity + a.scale(x) + b.scale(y) + c.scale(z)).determinant()
        check(report, det == 1, f"det(I + {x}A + {y}B + {z}C)", 1, det)

    space = f2_space()
    check(report, space.dim == 3, "dim span(A, B, C)", 3, space.dim)
    check(report, (a + b).is_invertible(), "A + B", "invertible", "singular")
    trivial, witness = has_trivial_spectrum(space, policy)
    check(report, trivial, "trivial spectrum of span(A, B, C)", True, witness)
    check(report, is_irreducible(space, policy), "irreducibility of span(A, B, C)", True, False)
    add_check(report)
    try:
        gram = recover_gram(space)
    except NotPAltFormError:
        pass
    else:
        add_failure(report, "recover_gram(span(A, B, C))", "NotPAltFormError", describe_matrix(gram))
    return finalize_report(report, time.perf_counter() - start)
