"""
Suite registry: categories, dependencies and metadata.

Suites are grouped by what they verify. A suite that builds on another
(the round-trip relies on the lemma suites, for instance) declares it as a
dependency; meta suites expand to fixed lists of suites.
"""

from enum import Enum
from typing import Any, Dict, List, Optional


class SuiteCategory(Enum):
    LEMMA = "lemma"
    CENSUS = "census"
    COUNTEREXAMPLE = "counterexample"
    THEOREM = "theorem"
    META = "meta"


SUITE_DEPENDENCIES: Dict[str, List[str]] = {
    'action1': [],
    'anisotropy': [],
    'centralizer': [],
    'hyperplane-rigidity': [],
    'exhaustive-n2-q3': [],
    'f2-counterexample': [],
    'gerstenhaber': ['action1'],
    'classification-roundtrip': ['action1', 'anisotropy', 'centralizer'],
    'affine-equivalence': ['classification-roundtrip'],
}

META_SUITES: Dict[str, List[str]] = {
    'all': list(SUITE_DEPENDENCIES),
    'lemmas': ['action1', 'anisotropy', 'centralizer', 'hyperplane-rigidity'],
    'theorems': ['gerstenhaber', 'classification-roundtrip', 'affine-equivalence'],
    'quick': ['action1', 'exhaustive-n2-q3', 'f2-counterexample'],
}

SUITE_METADATA: Dict[str, Dict[str, Any]] = {
    'action1': {
        'category': SuiteCategory.LEMMA,
        'description': 'Alt_n·X is the orthogonal of X, of dimension n-1, for every nonzero X',
        'sampled': False,
    },
    'anisotropy': {
        'category': SuiteCategory.LEMMA,
        'description': 'P·Alt_n has a trivial spectrum iff P is non-isotropic',
        'sampled': True,
    },
    'centralizer': {
        'category': SuiteCategory.LEMMA,
        'description': 'P·Alt_n = Alt_n iff P is a nonzero scalar multiple of I_n',
        'sampled': True,
    },
    'hyperplane-rigidity': {
        'category': SuiteCategory.LEMMA,
        'description': 'A totally intransitive extension of an alternate hyperplane is Alt_3',
        'sampled': True,
    },
    'exhaustive-n2-q3': {
        'category': SuiteCategory.CENSUS,
        'description': 'All lines and planes of M_2(F_3): dimension bound and line census',
        'sampled': False,
    },
    'f2-counterexample': {
        'category': SuiteCategory.COUNTEREXAMPLE,
        'description': 'Irreducible maximal trivial-spectrum space of M_3(F_2) that is not P·Alt_3',
        'sampled': False,
    },
    'gerstenhaber': {
        'category': SuiteCategory.THEOREM,
        'description': 'Conjugates of NT_n classify to blocks of size 1',
        'sampled': True,
    },
    'classification-roundtrip': {
        'category': SuiteCategory.THEOREM,
        'description': 'classify recovers block sizes and Gram matrices of conjugated models',
        'sampled': True,
    },
    'affine-equivalence': {
        'category': SuiteCategory.THEOREM,
        'description': 'Affine equivalence criterion and its constructive witness',
        'sampled': True,
    },
}

for _meta in META_SUITES:
    SUITE_METADATA[_meta] = {
        'category': SuiteCategory.META,
        'description': f"Meta suite: {', '.join(META_SUITES[_meta])}",
        'sampled': False,
    }


def validate_suite_name(suite: str) -> bool:
    return suite in SUITE_DEPENDENCIES or suite in META_SUITES


def is_meta_suite(suite: str) -> bool:
    return suite in META_SUITES


def get_suite_dependencies(suite: str) -> List[str]:
    """Direct prerequisites of a suite (the members, for a meta suite)."""
    if suite in META_SUITES:
        return list(META_SUITES[suite])
    return list(SUITE_DEPENDENCIES.get(suite, []))


def get_suite_category(suite: str) -> Optional[SuiteCategory]:
    info = SUITE_METADATA.get(suite)
    return info['category'] if info else None


def get_suite_info(suite: str) -> Optional[Dict[str, Any]]:
    return SUITE_METADATA.get(suite)


def get_all_suites() -> List[str]:
    """Concrete suites in registry order (meta suites excluded)."""
    return list(SUITE_DEPENDENCIES)
