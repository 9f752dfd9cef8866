"""Row reduction over an exact field, on raw representatives.

These helpers work on lists of rows (lists of raw values) and are shared by
Matrix, the subspace types and the solvers in the classification engine.
"""

from typing import List, Optional, Sequence, Tuple

from src.linalg.field import FieldDesc, Raw

Row = List[Raw]


def rref(field: FieldDesc, rows: Sequence[Sequence[Raw]], ncols: Optional[int] = None) -> Tuple[List[Row], List[int]]:
    """
    Reduced row-echelon form.

    Args:
        field: Field of the entries
        rows: Input rows (not modified)
        ncols: Number of leading columns allowed to carry pivots
            (defaults to the full width; used for augmented systems)

    Returns:
        Tuple of (nonzero reduced rows, pivot column indices ascending)
    """
    work = [list(r) for r in rows]
    if not work:
        return [], []
    width = len(work[0])
    limit = width if ncols is None else ncols
    pivots: List[int] = []
    r = 0
    for c in range(limit):
        piv = None
        for i in range(r, len(work)):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            work[r], work[piv] = work[piv], work[r]
        pivot_row = work[r]
        inv = field.inv(pivot_row[c])
        if inv != field.one:
            pivot_row = [field.mul(x, inv) for x in pivot_row]
            work[r] = pivot_row
        for i in range(len(work)):
            if i != r and work[i][c]:
                factor = work[i][c]
                row_i = work[i]
                work[i] = [field.sub(a, field.mul(factor, b)) for a, b in zip(row_i, pivot_row)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(field: FieldDesc, rows: Sequence[Sequence[Raw]]) -> int:
    return len(rref(field, rows)[1])


def nullspace(field: FieldDesc, rows: Sequence[Sequence[Raw]], ncols: int) -> List[Row]:
    """Basis of {x : A x = 0}, one vector per free column, free column set to 1."""
    reduced, pivots = rref(field, rows) if rows else ([], [])
    pivot_set = set(pivots)
    basis: List[Row] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [field.zero] * ncols
        vec[free] = field.one
        for row, pc in zip(reduced, pivots):
            if row[free]:
                vec[pc] = field.neg(row[free])
        basis.append(vec)
    return basis


def solve(field: FieldDesc, rows: Sequence[Sequence[Raw]], rhs: Sequence[Raw], ncols: int) -> Optional[Row]:
    """
    One solution of A x = b, or None when inconsistent.

    Free variables are set to zero, so the solution is the first one in
    pivot order and reproducible across runs.
    """
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(field, augmented, ncols=ncols)
    x = [field.zero] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[ncols]
    # rref drops the non-pivot rows, so inconsistency shows up as a residual
    return x if _residual_free(field, rows, rhs, x) else None


def _residual_free(field: FieldDesc, rows, rhs, x) -> bool:
    for row, b in zip(rows, rhs):
        acc = field.zero
        for a, xi in zip(row, x):
            if a and xi:
                acc = field.add(acc, field.mul(a, xi))
        if acc != b:
            return False
    return True


def determinant(field: FieldDesc, rows: Sequence[Sequence[Raw]]) -> Raw:
    """Determinant by Gaussian elimination."""
    work = [list(r) for r in rows]
    n = len(work)
    det = field.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            return field.zero
        if piv != c:
            work[c], work[piv] = work[piv], work[c]
            det = field.neg(det)
        pivot = work[c][c]
        det = field.mul(det, pivot)
        inv = field.inv(pivot)
        for i in range(c + 1, n):
            if work[i][c]:
                factor = field.mul(work[i][c], inv)
                work[i] = [field.sub(a, field.mul(factor, b)) for a, b in zip(work[i], work[c])]
    return det
