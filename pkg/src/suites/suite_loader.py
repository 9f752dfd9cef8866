"""
Suite selection: meta-suite expansion and dependency ordering.

The execution order is a topological sort of the requested suites and their
prerequisites (Kahn's algorithm, ties broken by name so the order is stable).
"""

import heapq
from collections import deque
from typing import Dict, List, Optional, Tuple

from src.core.errors import MSpaceError
from src.suites.suite_schema import (
    META_SUITES,
    SuiteCategory,
    get_all_suites,
    get_suite_category,
    get_suite_dependencies,
    is_meta_suite,
    validate_suite_name,
)


class SuiteError(MSpaceError):
    """Base exception for suite selection errors."""
    pass


class UnknownSuiteError(SuiteError):
    """Raised when an unknown suite is requested."""
    pass


class CircularDependencyError(SuiteError):
    """Raised when suites have circular dependencies."""
    pass


def expand_meta_suites(suites: List[str]) -> List[str]:
    """
    Replace meta suites by their members, recursively.

    Example:
        expand_meta_suites(['lemmas']) -> ['action1', 'anisotropy', 'centralizer', 'hyperplane-rigidity']
    """
    expanded: List[str] = []
    for suite in suites:
        if not validate_suite_name(suite):
            raise UnknownSuiteError(f"Unknown suite: {suite}")
        members = expand_meta_suites(get_suite_dependencies(suite)) if is_meta_suite(suite) else [suite]
        for member in members:
            if member not in expanded:
                expanded.append(member)
    return expanded


def resolve_suite_dependencies(suites: List[str]) -> List[str]:
    """
    Execution order for the requested suites, prerequisites first.

    Raises:
        UnknownSuiteError: If any suite is unknown
        CircularDependencyError: If the dependency graph has a cycle
    """
    expanded = expand_meta_suites(suites)
    selected = set(expanded)
    queue = deque(expanded)
    while queue:
        suite = queue.popleft()
        for dep in get_suite_dependencies(suite):
            if not validate_suite_name(dep):
                raise UnknownSuiteError(f"Suite {suite} depends on unknown suite {dep}")
            if dep not in selected:
                selected.add(dep)
                queue.append(dep)

    in_degree = {s: 0 for s in selected}
    dependents: Dict[str, List[str]] = {s: [] for s in selected}
    for suite in selected:
        for dep in get_suite_dependencies(suite):
            dependents[dep].append(suite)
            in_degree[suite] += 1

    ready = [s for s in selected if in_degree[s] == 0]
    heapq.heapify(ready)
    ordered: List[str] = []
    while ready:
        suite = heapq.heappop(ready)
        ordered.append(suite)
        for dependent in dependents[suite]:
            in_degree[dependent] -= 1
            if in_degree[dependent] == 0:
                heapq.heappush(ready, dependent)

    if len(ordered) != len(selected):
        missing = sorted(selected - set(ordered))
        raise CircularDependencyError(f"Circular dependency detected involving: {', '.join(missing)}")
    return ordered


def parse_suite_string(suite_str: str) -> List[str]:
    """'action1, gerstenhaber' -> ['action1', 'gerstenhaber']"""
    if not suite_str or not suite_str.strip():
        return []
    return [s.strip() for s in suite_str.split(',') if s.strip()]


def validate_suite_combination(suites: List[str]) -> Tuple[bool, Optional[str]]:
    """
    Check that the suites exist and resolve to an execution order.

    Returns:
        (True, None) if valid, (False, "error description") otherwise
    """
    if not suites:
        return False, "No suites specified"
    for suite in suites:
        if not validate_suite_name(suite):
            return False, f"Unknown suite: {suite}"
    try:
        resolve_suite_dependencies(suites)
    except SuiteError as e:
        return False, str(e)
    return True, None


def get_available_suites() -> Dict[str, List[str]]:
    """Suite names grouped by category value."""
    categories: Dict[str, List[str]] = {c.value: [] for c in SuiteCategory}
    for suite in get_all_suites() + list(META_SUITES):
        categories[get_suite_category(suite).value].append(suite)
    return categories
