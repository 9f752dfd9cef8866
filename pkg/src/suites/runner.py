"""
Suite execution.

Suites run in dependency order. A suite whose prerequisite failed is not run;
it is reported as skipped, which counts as failed. Parameters come from the
`suites` config section, with CLI seed/sample overrides on top.
"""

import logging
import time
from typing import Any, Callable, Dict, List, Optional

from src.core.errors import MSpaceError
from src.core.schema import (
    add_failure,
    finalize_report,
    merge_reports,
    new_suite_report,
    report_passed,
    skipped_report,
)
from src.linalg.enumeration import DEFAULT_POLICY, EnumerationPolicy
from src.suites.census import suite_exhaustive_n2_q3, suite_f2_counterexample
from src.suites.lemmas import suite_action1, suite_anisotropy, suite_centralizer, suite_hyperplane_rigidity
from src.suites.suite_loader import resolve_suite_dependencies
from src.suites.suite_schema import get_suite_dependencies, get_suite_info
from src.suites.theorems import suite_affine_equivalence, suite_classification_roundtrip, suite_gerstenhaber
from src.utils.config import get_sampling_config, get_suite_config
from src.utils.logger import safe_run
from src.utils.parallel import worker_pool

logger = logging.getLogger(__name__)

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 100

Runner = Callable[[Dict[str, Any], int, EnumerationPolicy], Dict[str, Any]]


def _combine(suite: str, parts: List[Dict[str, Any]], params: Dict[str, Any], seed: Optional[int], start: float):
    return finalize_report(merge_reports(suite, parts, params, seed), time.perf_counter() - start)


def _run_action1(params, seed, policy):
    start = time.perf_counter()
    cases = [list(c) for c in params.get("cases", [[3, 3]])]
    parts = [suite_action1(n, q, policy) for n, q in cases]
    return _combine("action1", parts, {"cases": cases}, None, start)


def _run_anisotropy(params, seed, policy):
    start = time.perf_counter()
    cases = [list(c) for c in params.get("cases", [[2, 3]])]
    samples = params["samples"]
    parts = [suite_anisotropy(n, q, samples, seed, policy) for n, q in cases]
    return _combine("anisotropy", parts, {"cases": cases, "samples": samples}, seed, start)


def _run_centralizer(params, seed, policy):
    return suite_centralizer(params.get("n", 3), params.get("q", 3), params["samples"], seed)


def _run_hyperplane_rigidity(params, seed, policy):
    return suite_hyperplane_rigidity(params.get("q", 3), params["samples"], seed, policy)


def _run_exhaustive(params, seed, policy):
    return suite_exhaustive_n2_q3(policy)


def _run_f2(params, seed, policy):
    return suite_f2_counterexample(policy)


def _run_gerstenhaber(params, seed, policy):
    start = time.perf_counter()
    cases = [list(c) for c in params.get("cases", [[3, 3, params["samples"]]])]
    if params.get("samples_override") is not None:
        cases = [[n, q, params["samples_override"]] for n, q, _ in cases]
    parts = [suite_gerstenhaber(n, q, samples, seed, policy) for n, q, samples in cases]
    return _combine("gerstenhaber", parts, {"cases": cases}, seed, start)


def _run_roundtrip(params, seed, policy):
    start = time.perf_counter()
    fields = list(params.get("fields", [3]))
    max_n = params.get("max_n", 3)
    samples = params["samples"]
    parts = [suite_classification_roundtrip(q, max_n, samples, seed, policy) for q in fields]
    return _combine(
        "classification-roundtrip", parts, {"fields": fields, "max_n": max_n, "samples": samples}, seed, start
    )


def _run_affine(params, seed, policy):
    return suite_affine_equivalence(list(params.get("fields", [3, 5])), params["samples"], seed, policy)


SUITE_RUNNERS: Dict[str, Runner] = {
    'action1': _run_action1,
    'anisotropy': _run_anisotropy,
    'centralizer': _run_centralizer,
    'hyperplane-rigidity': _run_hyperplane_rigidity,
    'exhaustive-n2-q3': _run_exhaustive,
    'f2-counterexample': _run_f2,
    'gerstenhaber': _run_gerstenhaber,
    'classification-roundtrip': _run_roundtrip,
    'affine-equivalence': _run_affine,
}


def suite_params(config: Dict[str, Any], suite: str, samples: Optional[int] = None) -> Dict[str, Any]:
    """Config parameters for a suite, with the sample count resolved."""
    params = get_suite_config(config, suite)
    default_samples = get_sampling_config(config).get("samples", DEFAULT_SAMPLES)
    params.setdefault("samples", default_samples)
    params["samples_override"] = samples
    if samples is not None:
        params["samples"] = samples
    return params


@safe_run
def _execute(suite: str, params: Dict[str, Any], seed: int, policy: EnumerationPolicy) -> Dict[str, Any]:
    try:
        return SUITE_RUNNERS[suite](params, seed, policy)
    except MSpaceError as e:
        report = new_suite_report(suite, {k: v for k, v in params.items() if k != "samples_override"}, seed)
        add_failure(report, "suite setup", "completed run", f"{type(e).__name__}: {e}")
        return finalize_report(report, 0.0)


def run_suite(
    suite: str,
    config: Dict[str, Any],
    seed: Optional[int] = None,
    samples: Optional[int] = None,
    policy: EnumerationPolicy = DEFAULT_POLICY,
) -> Dict[str, Any]:
    """Run one concrete suite (dependencies are not consulted)."""
    if seed is None:
        seed = get_sampling_config(config).get("seed", DEFAULT_SEED)
    params = suite_params(config, suite, samples)
    with worker_pool(policy.jobs):
        report = _execute(suite, params, seed, policy)
    if report is None:
        report = new_suite_report(suite, {}, seed)
        add_failure(report, "suite run", "completed run", "unexpected error (see log)")
        finalize_report(report, 0.0)
    return report


def run_suites(
    suites: List[str],
    config: Dict[str, Any],
    seed: Optional[int] = None,
    samples: Optional[int] = None,
    policy: EnumerationPolicy = DEFAULT_POLICY,
) -> List[Dict[str, Any]]:
    """
    Run the requested suites and their prerequisites in dependency order.

    Args:
        suites: Suite or meta-suite names
        config: Loaded configuration
        seed: Sampling seed (config default if None)
        samples: Sample-count override for sampled suites
        policy: Enumeration cost controls

    Returns:
        One report per executed or skipped suite, in execution order
    """
    order = resolve_suite_dependencies(suites)
    reports: List[Dict[str, Any]] = []
    passed = set()
    with worker_pool(policy.jobs):
        for suite in order:
            failed_deps = [d for d in get_suite_dependencies(suite) if d not in passed]
            if failed_deps:
                logger.warning(f"Skipping {suite}: prerequisite(s) failed: {', '.join(failed_deps)}")
                report = skipped_report(suite, {}, f"prerequisite failed: {', '.join(failed_deps)}")
            else:
                logger.info(f"Running suite {suite}: {get_suite_info(suite)['description']}")
                report = run_suite(suite, config, seed, samples, policy)
            if report_passed(report):
                passed.add(suite)
            logger.info(
                f"Suite {suite}: {report['meta']['status']} "
                f"({report['checks_run']} checks, {len(report['failures'])} failures)"
            )
            reports.append(report)
    return reports
