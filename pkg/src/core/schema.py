"""Report schema factories: suite reports, decompositions, spectrum reports.

Reports are plain dicts so they serialize directly. The JSON projection of a
suite report leaves out timing, which makes reruns byte-identical.
"""
from typing import Any, Dict, Iterable, List, Optional

from src.linalg.field import FieldDesc
from src.linalg.matrix import Matrix

SCHEMA_VERSION = "1.0"

SUITE_JSON_KEYS = ("suite", "params", "checks_run", "failures", "seed")


def new_suite_report(suite: str, params: Dict[str, Any], seed: Optional[int] = None) -> Dict[str, Any]:
    """
    Create an empty suite report.

    Args:
        suite: Registered suite name (e.g. "action1")
        params: Parameters the suite runs with (n, q, samples, cases ...)
        seed: Sampling seed, None for exhaustive suites

    Returns:
        Dict with report fields plus a meta section
    """
    return {
        "suite": suite,
        "params": dict(params),
        "seed": seed,
        "checks_run": 0,
        "failures": [],
        "meta": {
            "elapsed_sec": 0.0,
            "status": "pending",
            "schema_version": SCHEMA_VERSION,
        },
    }


def add_check(report: Dict[str, Any], count: int = 1) -> None:
    report["checks_run"] += count


def add_failure(report: Dict[str, Any], input_desc: str, expected: Any, actual: Any) -> None:
    """
    Record a failed check.

    Args:
        report: Suite report
        input_desc: Description sufficient to replay the failing input
        expected: Expected value
        actual: Observed value
    """
    report["failures"].append({"input": input_desc, "expected": str(expected), "actual": str(actual)})


def check(report: Dict[str, Any], condition: bool, input_desc: str, expected: Any, actual: Any) -> bool:
    """Count one check and record a failure when `condition` is false."""
    add_check(report)
    if not condition:
        add_failure(report, input_desc, expected, actual)
    return condition


def finalize_report(report: Dict[str, Any], elapsed: float) -> Dict[str, Any]:
    report["meta"]["elapsed_sec"] = round(elapsed, 3)
    report["meta"]["status"] = "passed" if report_passed(report) else "failed"
    return report


def report_passed(report: Dict[str, Any]) -> bool:
    return report.get("meta", {}).get("status") != "skipped" and not report["failures"]


def merge_reports(
    suite: str, reports: Iterable[Dict[str, Any]], params: Dict[str, Any], seed: Optional[int] = None
) -> Dict[str, Any]:
    """Concatenate case reports into one suite report, failures in case order."""
    merged = new_suite_report(suite, params, seed)
    for part in reports:
        merged["checks_run"] += part["checks_run"]
        merged["failures"].extend(part["failures"])
    return merged


def skipped_report(suite: str, params: Dict[str, Any], reason: str, seed: Optional[int] = None) -> Dict[str, Any]:
    report = new_suite_report(suite, params, seed)
    add_failure(report, "suite prerequisites", "passed", reason)
    report["meta"]["status"] = "skipped"
    return report


def suite_report_to_json(report: Dict[str, Any]) -> Dict[str, Any]:
    """Schema-stable projection: suite, params, checks_run, failures, seed."""
    return {key: report[key] for key in SUITE_JSON_KEYS}


def value_to_json(field: FieldDesc, value) -> Any:
    """Integers over F_p, `a/b` strings over Q."""
    return value if field.is_finite else field.format(value)


def matrix_to_json(m: Matrix) -> List[List[Any]]:
    return [[value_to_json(m.field, x) for x in m.row(i)] for i in range(m.rows)]


def decomposition_to_dict(decomposition) -> Dict[str, Any]:
    """Keys: field, n, blocks[{size, gram}], basis_change, verified."""
    return {
        "field": str(decomposition.field),
        "n": decomposition.n,
        "blocks": [{"size": size, "gram": matrix_to_json(gram)} for size, gram in decomposition.blocks],
        "basis_change": matrix_to_json(decomposition.basis_change),
        "verified": decomposition.verified,
    }


def spectrum_report_to_dict(report, space) -> Dict[str, Any]:
    witness = None
    if report.witness is not None:
        x, m = report.witness
        witness = {"x": [value_to_json(space.field, v) for v in x], "matrix": matrix_to_json(m)}
    return {
        "field": str(space.field),
        "n": space.n,
        "dim": space.dim,
        "trivial_spectrum": report.trivial_spectrum,
        "witness": witness,
        "totally_intransitive": report.totally_intransitive,
        "maximal": report.maximal,
        "irreducible": report.irreducible,
    }


def describe_vector(field: FieldDesc, vec) -> str:
    return "(" + ",".join(field.format(x) for x in vec) + ")"


def describe_matrix(m: Matrix) -> str:
    """Single-line `[[a,b],[c,d]]` rendering used in replayable failure inputs."""
    return "[" + ",".join("[" + ",".join(m.field.format(x) for x in m.row(i)) + "]" for i in range(m.rows)) + "]"
