"""Gram recovery: write W = P·Alt_m by solving Y·W ⊆ Alt_m."""

import logging
from typing import List

from src.core.errors import NotPAltFormError
from src.linalg import echelon
from src.linalg.matrix import Matrix
from src.linalg.subspace import MatrixSubspace
from src.spaces.construct import p_alt

logger = logging.getLogger(__name__)


def gram_equations(space: MatrixSubspace) -> List[list]:
    """
    Linear conditions on the m^2 entries of Y for Y·M to be alternate.

    Unknown y_(i,k) sits at index i·m + k. For every basis matrix M and
    every i < j one row expresses (YM)_ij + (YM)_ji = 0, and for every i one
    row expresses (YM)_ii = 0.
    """
    f = space.field
    m = space.n
    rows = []
    for mat in space.basis:
        for i in range(m):
            for j in range(i, m):
                row = [f.zero] * (m * m)
                for k in range(m):
                    row[i * m + k] = f.add(row[i * m + k], mat[k, j])
                    if j != i:
                        row[j * m + k] = f.add(row[j * m + k], mat[k, i])
                rows.append(row)
    return rows


def gram_solution_space(space: MatrixSubspace) -> List[Matrix]:
    """Basis of {Y : Y·M alternate for all M in the space}."""
    m = space.n
    null = echelon.nullspace(space.field, gram_equations(space), m * m)
    return [Matrix(space.field, m, m, tuple(v)) for v in null]


def recover_gram(space: MatrixSubspace) -> Matrix:
    """
    Normalized P with space = P·Alt_m.

    Returns:
        P = Y^-1 scaled so its first nonzero row-major entry is 1

    Raises:
        NotPAltFormError: If the dimension is not m(m-1)/2, the solution
            space is not a line, its generator is singular, or P·Alt_m
            does not reproduce the space
    """
    m = space.n
    if m < 2 or space.dim != m * (m - 1) // 2:
        raise NotPAltFormError(f"A {space.dim}-dimensional space of {m}x{m} matrices is not P·Alt_{m}")
    solutions = gram_solution_space(space)
    if len(solutions) != 1:
        raise NotPAltFormError(f"Gram system has a {len(solutions)}-dimensional solution space, expected 1")
    y = solutions[0]
    if not y.is_invertible():
        raise NotPAltFormError("Gram system generator is singular")
    p = y.inverse().normalized()
    if p_alt(p) != space:
        raise NotPAltFormError("P·Alt_m does not reproduce the space")
    return p
