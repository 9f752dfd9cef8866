"""Seeded random matrices for the verification suites.

All generators draw from a SplitMix64 stream, so the same seed reproduces
the same sequence of matrices.
"""

from typing import Iterator

from src.forms.isotropy import is_isotropic
from src.linalg import echelon
from src.linalg.enumeration import iter_vectors
from src.linalg.field import FieldDesc
from src.linalg.matrix import Matrix
from src.linalg.subspace import MatrixSubspace
from src.utils.rng import SplitMix64


def random_matrix(field: FieldDesc, n: int, rng: SplitMix64, m: int = None) -> Matrix:
    m = n if m is None else m
    return Matrix(field, n, m, tuple(rng.vector(n * m, field.order)))


def random_invertible(field: FieldDesc, n: int, rng: SplitMix64) -> Matrix:
    """Rejection sampling on det != 0."""
    while True:
        candidate = random_matrix(field, n, rng)
        if candidate.is_invertible():
            return candidate


def random_nonzero(field: FieldDesc, rng: SplitMix64) -> int:
    return 1 + rng.below(field.order - 1)


def random_alternate(field: FieldDesc, n: int, rng: SplitMix64) -> Matrix:
    entries = [field.zero] * (n * n)
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.below(field.order)
            entries[i * n + j] = v
            entries[j * n + i] = field.neg(v)
    return Matrix(field, n, n, tuple(entries))


def random_non_alternate(field: FieldDesc, n: int, rng: SplitMix64) -> Matrix:
    while True:
        candidate = random_matrix(field, n, rng)
        if not candidate.is_alternate():
            return candidate


def random_non_isotropic(field: FieldDesc, m: int, rng: SplitMix64) -> Matrix:
    """Invertible non-isotropic m x m matrix by rejection (m <= 2 over finite fields)."""
    while True:
        candidate = random_invertible(field, m, rng)
        if not is_isotropic(candidate)[0]:
            return candidate


def random_hyperplane(space: MatrixSubspace, rng: SplitMix64) -> MatrixSubspace:
    """Kernel of a random nonzero linear functional on the space's coordinates."""
    f = space.field
    while True:
        functional = rng.vector(space.dim, f.order)
        if any(functional):
            break
    kernel = echelon.nullspace(f, [functional], space.dim)
    return MatrixSubspace.span(f, space.n, [space.combination(c) for c in kernel])


def all_invertible(field: FieldDesc, n: int) -> Iterator[Matrix]:
    """Every invertible n x n matrix, in odometer order."""
    for entries in iter_vectors(n * n, field.order):
        candidate = Matrix(field, n, n, entries)
        if candidate.is_invertible():
            yield candidate
