"""Configuration loader for YAML and environment variables"""
import os
from pathlib import Path
from typing import Any, Dict

import yaml
from dotenv import load_dotenv

from src.core.errors import ConfigError
from src.linalg.enumeration import DEFAULT_MAX_BITS, EnumerationPolicy

# Environment variable -> (section, key, type)
ENV_OVERRIDES = {
    "MSPACE_LOG_LEVEL": ("logging", "level", str),
    "MSPACE_LOG_DIR": ("logging", "log_dir", str),
    "MSPACE_JOBS": ("enumeration", "jobs", int),
    "MSPACE_MAX_BITS": ("enumeration", "max_bits", int),
}


def get_project_root() -> Path:
    """Get the project root directory"""
    return Path(__file__).parent.parent.parent


def load_config(config_path: str = None) -> Dict[str, Any]:
    """
    Load configuration from YAML file, then apply environment overrides.

    Args:
        config_path: Optional path to config file. Defaults to config.yaml in project root.

    Returns:
        Dict containing configuration

    Raises:
        FileNotFoundError: If the config file does not exist
        ConfigError: On malformed YAML, a non-mapping document or section,
            or an override that does not parse as its type
    """
    if config_path is None:
        config_path = get_project_root() / "config.yaml"
    else:
        config_path = Path(config_path)

    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    try:
        with open(config_path, 'r', encoding='utf-8') as f:
            config = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"{config_path}: malformed YAML: {e}") from e
    except UnicodeDecodeError as e:
        raise ConfigError(f"{config_path}: not UTF-8 text (byte {e.start})") from e
    if not isinstance(config, dict):
        raise ConfigError(f"{config_path}: expected a mapping at the top level, got {type(config).__name__}")

    load_dotenv()
    for var, (section, key, cast) in ENV_OVERRIDES.items():
        if var not in os.environ:
            continue
        try:
            value = cast(os.environ[var])
        except ValueError as e:
            raise ConfigError(f"{var}={os.environ[var]!r} is not a valid {cast.__name__}") from e
        target = config.setdefault(section, {})
        if not isinstance(target, dict):
            raise ConfigError(f"{config_path}: section '{section}' must be a mapping")
        target[key] = value

    return config


def get_logging_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """Extract logging configuration"""
    return config.get('logging', {})


def get_enumeration_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """Extract enumeration guardrail and worker configuration"""
    return config.get('enumeration', {})


def get_congruence_config(config: Dict[str, Any]) -> Dict[str, Any]:
    return config.get('congruence', {})


def get_affine_config(config: Dict[str, Any]) -> Dict[str, Any]:
    return config.get('affine', {})


def get_sampling_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """Extract default seed and sample count"""
    return config.get('sampling', {})


def get_suite_config(config: Dict[str, Any], suite: str = None) -> Dict[str, Any]:
    """
    Extract suite parameter defaults.

    Args:
        config: Loaded configuration
        suite: Suite name; None returns the whole section

    Returns:
        Parameter dict (empty when the suite has no entry)
    """
    suites = config.get('suites', {}) or {}
    if suite is None:
        return suites
    return dict(suites.get(suite, {}) or {})


def get_export_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """Extract export configuration"""
    return config.get('export', {})


def build_policy(config: Dict[str, Any], **overrides) -> EnumerationPolicy:
    """
    Enumeration policy from the config, with non-None keyword overrides
    (jobs, force, max_bits) taking precedence.
    """
    section = get_enumeration_config(config)
    try:
        values = {
            "jobs": int(section.get("jobs", 1)),
            "force": bool(section.get("force", False)),
            "max_bits": int(section.get("max_bits", DEFAULT_MAX_BITS)),
        }
    except (TypeError, ValueError) as e:
        raise ConfigError(f"enumeration section: {e}") from e
    values.update({k: v for k, v in overrides.items() if v is not None})
    return EnumerationPolicy(**values)
