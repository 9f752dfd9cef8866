"""Integration tests for suite execution

Runs every registered suite with the small parameters from test_config and
checks ordering, skipping and determinism of the reports. The slow class
runs the costly suites at the shipped config.yaml parameters against their
time budgets.
"""
import time

import pytest

from src.core.errors import MSpaceError
from src.core.schema import check, finalize_report, new_suite_report, report_passed, suite_report_to_json
from src.linalg.enumeration import EnumerationPolicy
from src.suites import runner
from src.suites.runner import run_suite, run_suites, suite_params
from src.suites.suite_schema import get_all_suites
from src.utils.config import ENV_OVERRIDES, load_config


def _failing_action1(params, seed, policy):
    report = new_suite_report("action1", {})
    check(report, False, "forced failure", 1, 0)
    return finalize_report(report, 0.0)


@pytest.mark.integration
class TestSuitesPass:

    @pytest.mark.parametrize("suite", get_all_suites())
    def test_suite_passes(self, suite, test_config):
        report = run_suite(suite, test_config)
        assert report["suite"] == suite
        assert report["checks_run"] > 0
        assert report["failures"] == [], report["failures"][:3]
        assert report_passed(report)

    def test_quick_meta_suite(self, test_config):
        reports = run_suites(["quick"], test_config)
        assert [r["suite"] for r in reports] == ["action1", "exhaustive-n2-q3", "f2-counterexample"]
        assert all(report_passed(r) for r in reports)

    def test_prerequisites_run_first(self, test_config):
        reports = run_suites(["gerstenhaber"], test_config)
        assert [r["suite"] for r in reports] == ["action1", "gerstenhaber"]
        assert all(report_passed(r) for r in reports)


@pytest.mark.integration
class TestSuiteParameters:

    def test_sampled_suite_is_deterministic(self, test_config):
        first = suite_report_to_json(run_suite("anisotropy", test_config, seed=11))
        second = suite_report_to_json(run_suite("anisotropy", test_config, seed=11))
        assert first == second
        assert first["seed"] == 11

    def test_config_seed_is_default(self, test_config):
        assert run_suite("centralizer", test_config)["seed"] == 0

    def test_samples_override(self, test_config):
        report = run_suite("centralizer", test_config, samples=2)
        assert report["params"]["samples"] == 2

    def test_suite_params(self, test_config):
        params = suite_params(test_config, "exhaustive-n2-q3")
        assert params["samples"] == 3
        assert params["samples_override"] is None
        assert suite_params(test_config, "anisotropy", samples=7)["samples"] == 7

    def test_exhaustive_report_has_no_seed(self, test_config):
        assert run_suite("exhaustive-n2-q3", test_config)["seed"] is None


@pytest.mark.integration
class TestSuiteFailures:

    def test_failed_prerequisite_skips_dependents(self, test_config, monkeypatch):
        monkeypatch.setitem(runner.SUITE_RUNNERS, "action1", _failing_action1)
        reports = run_suites(["gerstenhaber"], test_config)
        assert [r["suite"] for r in reports] == ["action1", "gerstenhaber"]
        assert reports[0]["meta"]["status"] == "failed"
        assert reports[1]["meta"]["status"] == "skipped"
        assert "action1" in reports[1]["failures"][0]["actual"]

    def test_engine_error_becomes_failure(self, test_config, monkeypatch):
        def broken(params, seed, policy):
            raise MSpaceError("bad parameters")

        monkeypatch.setitem(runner.SUITE_RUNNERS, "centralizer", broken)
        report = run_suite("centralizer", test_config)
        assert report["failures"] == [
            {"input": "suite setup", "expected": "completed run", "actual": "MSpaceError: bad parameters"}
        ]
        assert "samples_override" not in report["params"]

    def test_unexpected_error_becomes_failure(self, test_config, monkeypatch):
        def crashing(params, seed, policy):
            raise RuntimeError("boom")

        monkeypatch.setitem(runner.SUITE_RUNNERS, "centralizer", crashing)
        report = run_suite("centralizer", test_config)
        assert not report_passed(report)
        assert report["failures"][0]["input"] == "suite run"

    def test_guardrail_failure(self, test_config):
        report = run_suite("action1", test_config, policy=EnumerationPolicy(max_bits=2))
        assert not report_passed(report)
        assert "GuardrailExceededError" in report["failures"][0]["actual"]


@pytest.mark.integration
@pytest.mark.slow
class TestParallelSuites:

    @pytest.mark.parametrize("suite", ["action1", "exhaustive-n2-q3", "gerstenhaber"])
    def test_jobs_do_not_change_reports(self, suite, test_config):
        serial = suite_report_to_json(run_suite(suite, test_config))
        parallel = suite_report_to_json(run_suite(suite, test_config, policy=EnumerationPolicy(jobs=2)))
        assert parallel == serial


@pytest.fixture
def shipped_config(monkeypatch):
    """The project's config.yaml, unaffected by MSPACE_* variables in the environment"""
    for var in ENV_OVERRIDES:
        monkeypatch.delenv(var, raising=False)
    return load_config()


@pytest.mark.integration
@pytest.mark.slow
class TestShippedParameters:
    """Suites at the default config.yaml parameters, with their time budgets"""

    def _timed(self, suite, config):
        start = time.perf_counter()
        report = run_suite(suite, config)
        return report, time.perf_counter() - start

    def test_anisotropy(self, shipped_config):
        params = suite_params(shipped_config, "anisotropy")
        assert params["cases"] == [[2, 3], [2, 5], [3, 3], [3, 5]]
        assert params["samples"] == 200
        report, elapsed = self._timed("anisotropy", shipped_config)
        assert report["failures"] == [], report["failures"][:3]
        assert report_passed(report)
        # 48 invertible forms at (2, 3), then 200 samples per remaining case
        assert report["checks_run"] >= 48 + 3 * 200
        assert elapsed < 5.0

    def test_classification_roundtrip(self, shipped_config):
        params = suite_params(shipped_config, "classification-roundtrip")
        assert (params["fields"], params["max_n"], params["samples"]) == ([3, 5, 7], 5, 20)
        report, elapsed = self._timed("classification-roundtrip", shipped_config)
        assert report["failures"] == [], report["failures"][:3]
        assert report_passed(report)
        # 19 compositions of n <= 5 into parts 1 and 2, two checks at least per sample
        assert report["checks_run"] >= 3 * 19 * 20 * 2
        assert elapsed < 60.0
        assert report["meta"]["elapsed_sec"] < 60.0

    def test_gerstenhaber(self, shipped_config):
        params = suite_params(shipped_config, "gerstenhaber")
        assert params["cases"] == [[3, 3, 50], [4, 5, 20]]
        report, elapsed = self._timed("gerstenhaber", shipped_config)
        assert report["failures"] == [], report["failures"][:3]
        assert report_passed(report)
        # identity plus the samples, three checks each
        assert report["checks_run"] == 3 * (51 + 21)
        assert elapsed < 30.0
