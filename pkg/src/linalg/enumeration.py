"""
Deterministic enumeration over F_q^n.

Vectors are visited in odometer order (last coordinate fastest). Projective
representatives are the vectors whose first nonzero coordinate equals 1;
they are indexed in the odometer order restricted to normalized vectors, so
index ranges can be handed to parallel workers and decoded independently.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterator, List, Tuple

from src.core.errors import GuardrailExceededError, InfiniteFieldError
from src.linalg.field import FieldDesc

logger = logging.getLogger(__name__)

DEFAULT_MAX_BITS = 24


@dataclass(frozen=True)
class EnumerationPolicy:
    """Cost controls shared by every enumeration-based decision."""

    jobs: int = 1
    force: bool = False
    max_bits: int = DEFAULT_MAX_BITS

    def check(self, field: FieldDesc, n: int, what: str = "enumeration") -> None:
        """Refuse n·log2(q) > max_bits unless forced."""
        require_finite(field, what)
        bits = n * math.log2(field.order)
        if bits > self.max_bits:
            if self.force:
                logger.warning(f"Guardrail override: {what} over {field}^{n} ({bits:.1f} bits)")
                return
            raise GuardrailExceededError(
                f"{what} over {field}^{n} needs {bits:.1f} bits > {self.max_bits}; pass --force to override"
            )


DEFAULT_POLICY = EnumerationPolicy()


def require_finite(field: FieldDesc, what: str = "this decision") -> None:
    if not field.is_finite:
        raise InfiniteFieldError(f"{what} needs a finite field, got {field}")


def projective_count(q: int, n: int) -> int:
    return (q ** n - 1) // (q - 1) if n > 0 else 0


def projective_point(index: int, n: int, q: int) -> Tuple[int, ...]:
    """
    Decode the index-th normalized vector of F_q^n.

    Normalized vectors with their leading 1 at position n-1 come first
    (they start with the most zeros), then position n-2, and so on.
    """
    for lead in range(n - 1, -1, -1):
        block = q ** (n - 1 - lead)
        if index < block:
            tail = []
            for _ in range(n - 1 - lead):
                index, digit = divmod(index, q)
                tail.append(digit)
            return (0,) * lead + (1,) + tuple(reversed(tail))
        index -= block
    raise IndexError("projective index out of range")


def iter_projective(n: int, q: int, start: int = 0, stop: int = None) -> Iterator[Tuple[int, ...]]:
    """Projective representatives with index in [start, stop)."""
    total = projective_count(q, n)
    stop = total if stop is None else min(stop, total)
    for index in range(start, stop):
        yield projective_point(index, n, q)


def iter_vectors(n: int, q: int) -> Iterator[Tuple[int, ...]]:
    """All of F_q^n in odometer order, zero vector first."""
    return itertools.product(range(q), repeat=n)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def iter_subspace_bases(n: int, k: int, q: int) -> Iterator[List[Tuple[int, ...]]]:
    """
    Every k-dimensional subspace of F_q^n, once, as its reduced echelon basis.

    Walks pivot patterns in lexicographic order; for each pattern the free
    entries (right of the pivot, outside pivot columns) range over F_q.
    """
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free_slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivot_set]
        for values in itertools.product(range(q), repeat=len(free_slots)):
            rows = [[0] * n for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free_slots, values):
                rows[r][c] = v
            yield [tuple(r) for r in rows]
