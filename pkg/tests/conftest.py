"""Pytest configuration and shared fixtures for mspace tests"""
import sys
from pathlib import Path
from typing import Any, Dict

import pytest
import yaml

# Project root on the path so `src.*` imports resolve
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.linalg.field import FieldDesc


@pytest.fixture(scope="session")
def f2() -> FieldDesc:
    return FieldDesc.prime(2)


@pytest.fixture(scope="session")
def f3() -> FieldDesc:
    return FieldDesc.prime(3)


@pytest.fixture(scope="session")
def f5() -> FieldDesc:
    return FieldDesc.prime(5)


@pytest.fixture(scope="session")
def qq() -> FieldDesc:
    return FieldDesc.rational()


@pytest.fixture
def test_config() -> Dict[str, Any]:
    """Minimal valid config with small suite parameters

    Logging goes to the console only, at ERROR, so tests leave no log files.
    """
    return {
        "logging": {
            "level": "ERROR",
            "log_dir": None,
            "max_size_mb": 1,
            "backup_count": 1,
        },
        "enumeration": {"max_bits": 24, "jobs": 1, "force": False},
        "congruence": {"max_size": 2, "max_order": 11},
        "affine": {"max_sampling_attempts": 100},
        "sampling": {"seed": 0, "samples": 3},
        "suites": {
            "action1": {"cases": [[2, 3], [3, 3]]},
            "anisotropy": {"cases": [[2, 3], [2, 5]], "samples": 5},
            "centralizer": {"n": 2, "q": 3, "samples": 6},
            "hyperplane-rigidity": {"q": 3, "samples": 3},
            "exhaustive-n2-q3": {},
            "f2-counterexample": {},
            "gerstenhaber": {"cases": [[3, 3, 3]]},
            "classification-roundtrip": {"fields": [3], "max_n": 3, "samples": 2},
            "affine-equivalence": {"fields": [3], "samples": 3},
        },
        "export": {"enabled": False, "format": "json", "directory": "./exports", "include_summary": True},
    }


@pytest.fixture
def config_file(tmp_path, test_config) -> str:
    """test_config written to a YAML file"""
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(test_config), encoding="utf-8")
    return str(path)


def pytest_collection_modifyitems(config, items):
    """Auto-mark tests based on their location"""
    for item in items:
        path = str(item.fspath)
        if "tests/unit" in path:
            item.add_marker(pytest.mark.unit)
        if "tests/integration" in path:
            item.add_marker(pytest.mark.integration)
