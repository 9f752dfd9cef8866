"""
Vectorized mod-p kernels for exhaustive scans over F_q^n.

The scans in the flag and spectrum modules ask the same small question
(the rank of VX, or whether X lies in VX) for every projective point, and
the congruence search asks one for every m x m matrix. These helpers answer
it for a whole block of candidates at once on int64 arrays:
entries stay in [0, p), products of two residues stay below 2^62 for
p < 2^31, and every sum is reduced before the next product is added.

Elimination follows the column sweep used for mod-N systems: the pivot row is
scaled by the inverse of its pivot and subtracted from every row. Applied to
all matrices of a batch at once the sweep needs no row swaps: the pivot row
is cleared together with the column, and the rank is the number of columns
in which a pivot was found.
"""

from typing import List, Tuple

import numpy as np

from src.linalg.subspace import MatrixSubspace

BATCH_POINTS = 4096


def inverses(values: np.ndarray, p: int) -> np.ndarray:
    """Elementwise inverse mod p by Fermat's little theorem; 0 maps to 0."""
    values = np.asarray(values, dtype=np.int64) % p
    result = np.ones_like(values)
    base = values.copy()
    exponent = p - 2
    while exponent:
        if exponent & 1:
            result = result * base % p
        base = base * base % p
        exponent >>= 1
    return np.where(values == 0, 0, result)


def projective_block(n: int, q: int, start: int, stop: int) -> np.ndarray:
    """
    Projective representatives with index in [start, stop), one per row.

    Same order as enumeration.projective_point: leading 1 at position n-1
    first, the last coordinate varying fastest.
    """
    index = np.arange(start, stop, dtype=np.int64)
    # block k holds the points with leading 1 at n-1-k and a k-digit tail
    bounds = np.cumsum([0] + [q ** k for k in range(n)], dtype=np.int64)
    block = np.searchsorted(bounds, index, side="right") - 1
    lead = n - 1 - block
    local = index - bounds[block]
    points = np.zeros((index.size, n), dtype=np.int64)
    points[np.arange(index.size), lead] = 1
    for c in range(n - 1, -1, -1):
        tail = c > lead
        points[tail, c] = (local % q)[tail]
        local = local // q
    return points


def matrix_block(m: int, q: int, start: int, stop: int) -> np.ndarray:
    """(N, m, m) array of the m x m matrices over F_q with index in [start, stop), last entry fastest."""
    index = np.arange(start, stop, dtype=np.int64)
    entries = np.zeros((index.size, m * m), dtype=np.int64)
    for e in range(m * m - 1, -1, -1):
        entries[:, e] = index % q
        index = index // q
    return entries.reshape(-1, m, m)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Batched a @ b mod p, reducing after every product."""
    shape = np.broadcast_shapes(a.shape[:-2], b.shape[:-2]) + (a.shape[-2], b.shape[-1])
    out = np.zeros(shape, dtype=np.int64)
    for j in range(a.shape[-1]):
        out = (out + a[..., :, j, None] * b[..., j, None, :]) % p
    return out


def basis_tensor(space: MatrixSubspace) -> np.ndarray:
    """The basis matrices of a space over F_p as a (k, n, n) array."""
    return np.array(
        [m.to_rows() for m in space.basis], dtype=np.int64
    ).reshape(space.dim, space.n, space.n)


def images(tensor: np.ndarray, points: np.ndarray, p: int) -> np.ndarray:
    """(N, k, n) array whose [x, i] row is B_i·X for the x-th point."""
    count, n = points.shape
    out = np.zeros((count, tensor.shape[0], tensor.shape[1]), dtype=np.int64)
    for j in range(n):
        out = (out + tensor[None, :, :, j] * points[:, j, None, None]) % p
    return out


def batched_rank(batch: np.ndarray, p: int) -> np.ndarray:
    """Rank mod p of every matrix in an (N, r, c) batch."""
    work = np.asarray(batch, dtype=np.int64) % p
    count, rows, cols = work.shape
    ranks = np.zeros(count, dtype=np.int64)
    if count == 0 or rows == 0:
        return ranks
    index = np.arange(count)
    for c in range(cols):
        column = work[:, :, c]
        nonzero = column != 0
        found = nonzero.any(axis=1)
        if not found.any():
            continue
        pivot_rows = work[index, nonzero.argmax(axis=1), :]
        pivot_rows = pivot_rows * inverses(pivot_rows[:, c], p)[:, None] % p
        work = (work - column[:, :, None] * pivot_rows[:, None, :]) % p
        ranks += found
    return ranks


def row_space(rows: np.ndarray, p: int) -> List[Tuple[int, ...]]:
    """An echelon basis (not reduced) of the row space of an (m, n) array."""
    work = np.asarray(rows, dtype=np.int64) % p
    basis = []
    if work.size == 0:
        return basis
    for c in range(work.shape[1]):
        hits = np.flatnonzero(work[:, c])
        if hits.size == 0:
            continue
        pivot = work[hits[0]] * int(inverses(work[hits[0], c], p)) % p
        work = (work - work[:, c, None] * pivot[None, :]) % p
        basis.append(tuple(int(v) for v in pivot))
    return basis


def point_dims(space: MatrixSubspace, points: np.ndarray) -> np.ndarray:
    """dim VX for every row X of `points`."""
    p = space.field.order
    if space.dim == 0:
        return np.zeros(points.shape[0], dtype=np.int64)
    return batched_rank(images(basis_tensor(space), points, p), p)


def fixed_point_mask(space: MatrixSubspace, points: np.ndarray) -> np.ndarray:
    """True where X lies in VX, i.e. MX = X for some M in the space."""
    p = space.field.order
    if space.dim == 0:
        return np.zeros(points.shape[0], dtype=bool)
    imgs = images(basis_tensor(space), points, p)
    with_x = np.concatenate([imgs, points[:, None, :]], axis=1)
    return batched_rank(imgs, p) == batched_rank(with_x, p)


def to_vector(row: np.ndarray) -> Tuple[int, ...]:
    return tuple(int(v) for v in row)