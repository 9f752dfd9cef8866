"""
Invariant flag of a maximal trivial-spectrum space.

The level sets {X : dim VX <= v} of a maximal trivial-spectrum space over a
field with at least 3 elements are subspaces F_1 < ... < F_p = F^n, and
dim VX = dim F_k - 1 on F_k minus F_{k-1}. Both facts are verified here
rather than assumed, so a non-maximal input is reported as NotAFlagError.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from src.core.errors import NotAFlagError
from src.linalg.batched import BATCH_POINTS, point_dims, projective_block, row_space
from src.linalg.enumeration import DEFAULT_POLICY, EnumerationPolicy, projective_count, require_finite
from src.linalg.subspace import MatrixSubspace, VectorSubspace, echelonize
from src.utils.parallel import run_partitioned

logger = logging.getLogger(__name__)

# dim VX -> (number of projective points, span of those points)
LevelData = Dict[int, Tuple[int, VectorSubspace]]


@dataclass(frozen=True)
class Flag:
    subspaces: Tuple[VectorSubspace, ...]

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(s.dim for s in self.subspaces)

    @property
    def sizes(self) -> Tuple[int, ...]:
        dims = (0,) + self.dims
        return tuple(b - a for a, b in zip(dims, dims[1:]))


def _level_chunk(args) -> LevelData:
    space, start, stop = args
    f = space.field
    counts: Dict[int, int] = {}
    rows: Dict[int, List[tuple]] = {}
    for lo in range(start, stop, BATCH_POINTS):
        points = projective_block(space.n, f.order, lo, min(stop, lo + BATCH_POINTS))
        dims = point_dims(space, points)
        for d in np.unique(dims).tolist():
            members = points[dims == d]
            counts[d] = counts.get(d, 0) + int(members.shape[0])
            known = np.array(rows.get(d, []), dtype=np.int64).reshape(-1, space.n)
            rows[d] = row_space(np.concatenate([known, members]), f.order)
    return {d: (counts[d], echelonize(f, space.n, rows[d])) for d in sorted(counts)}


def _level_data(space: MatrixSubspace, policy: EnumerationPolicy) -> LevelData:
    require_finite(space.field, "dim(VX) profile")
    policy.check(space.field, space.n, "dim(VX) profile")
    total = projective_count(space.field.order, space.n)
    merged: LevelData = {}
    for chunk in run_partitioned(_level_chunk, space, total, policy.jobs):
        for d, (count, span) in chunk.items():
            if d in merged:
                old_count, old_span = merged[d]
                merged[d] = (old_count + count, old_span.join(span))
            else:
                merged[d] = (count, span)
    return dict(sorted(merged.items()))


def _cumulative(levels: LevelData) -> Tuple[Dict[int, VectorSubspace], Dict[int, int]]:
    spans: Dict[int, VectorSubspace] = {}
    counts: Dict[int, int] = {}
    span = None
    count = 0
    for d, (c, s) in levels.items():
        span = s if span is None else span.join(s)
        count += c
        spans[d] = span
        counts[d] = count
    return spans, counts


def vx_profile(space: MatrixSubspace, policy: EnumerationPolicy = DEFAULT_POLICY) -> Dict[int, VectorSubspace]:
    """
    Map each value v of dim VX (X != 0) to span{X : dim VX <= v}, ascending.

    Raises:
        InfiniteFieldError: Over Q
    """
    return _cumulative(_level_data(space, policy))[0]


def find_flag(space: MatrixSubspace, policy: EnumerationPolicy = DEFAULT_POLICY) -> Flag:
    """
    Invariant flag read off the dim(VX) level sets.

    Args:
        space: Maximal trivial-spectrum space over F_q, q >= 3
        policy: Enumeration cost controls

    Returns:
        Flag whose subspaces are the level sets in increasing order

    Raises:
        NotAFlagError: If a level set is not a subspace, the chain does not
            end at F^n, a level set is not invariant, or dim VX does not
            equal dim F_k - 1 on the k-th layer
    """
    spans, counts = _cumulative(_level_data(space, policy))
    q = space.field.order
    subspaces: List[VectorSubspace] = []
    for v, span in spans.items():
        expected = projective_count(q, span.dim)
        if counts[v] != expected:
            raise NotAFlagError(
                f"Level set dim VX <= {v} has {counts[v]} projective points, "
                f"its span of dimension {span.dim} has {expected}"
            )
        if v != span.dim - 1:
            raise NotAFlagError(f"Level set dim VX <= {v} spans dimension {span.dim}, expected {v + 1}")
        if subspaces and span.dim <= subspaces[-1].dim:
            raise NotAFlagError("Level sets do not increase strictly")
        for m in space.basis:
            for b in span.basis:
                if not span.contains(m.apply(b)):
                    raise NotAFlagError(f"Level set dim VX <= {v} is not invariant under the space")
        subspaces.append(span)
    if not subspaces or not subspaces[-1].is_full:
        raise NotAFlagError("Level sets do not exhaust F^n")
    flag = Flag(tuple(subspaces))
    logger.debug(f"Flag of {space}: dims {flag.dims}")
    return flag
