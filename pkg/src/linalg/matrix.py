"""Dense matrices over an exact field.

Entries are canonical raw representatives stored row-major in a tuple, so a
Matrix is hashable and immutable. `m[i, j]` returns the raw representative;
`m.scalar(i, j)` wraps it in a Scalar.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from src.core.errors import DimensionMismatchError, MixedFieldsError, SingularMatrixError
from src.linalg import echelon
from src.linalg.field import FieldDesc, Raw, Scalar

Vector = Tuple[Raw, ...]


@dataclass(frozen=True)
class Matrix:
    field: FieldDesc
    rows: int
    cols: int
    entries: Tuple[Raw, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatchError(f"Negative matrix shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, field: FieldDesc, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatchError("Ragged rows in matrix literal")
        entries = tuple(field.normalize(x) for r in rows for x in r)
        return cls(field, len(rows), ncols, entries)

    @classmethod
    def zeros(cls, field: FieldDesc, rows: int, cols: int = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, field: FieldDesc, n: int) -> "Matrix":
        return cls.scalar_matrix(field, n, field.one)

    @classmethod
    def scalar_matrix(cls, field: FieldDesc, n: int, c) -> "Matrix":
        c = field.normalize(c)
        return cls(field, n, n, tuple(c if i == j else field.zero for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, field: FieldDesc, values: Sequence) -> "Matrix":
        n = len(values)
        vals = [field.normalize(v) for v in values]
        return cls(field, n, n, tuple(vals[i] if i == j else field.zero for i in range(n) for j in range(n)))

    @classmethod
    def unit(cls, field: FieldDesc, n: int, i: int, j: int, m: int = None) -> "Matrix":
        """Elementary matrix E_ij (0-based indices) of size n x m."""
        m = n if m is None else m
        entries = [field.zero] * (n * m)
        entries[i * m + j] = field.one
        return cls(field, n, m, tuple(entries))

    @classmethod
    def from_columns(cls, field: FieldDesc, columns: Sequence[Sequence[Raw]]) -> "Matrix":
        nrows = len(columns[0]) if columns else 0
        return cls(field, nrows, len(columns),
                   tuple(columns[j][i] for i in range(nrows) for j in range(len(columns))))

    @classmethod
    def block(cls, field: FieldDesc, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix from a grid of equally-aligned blocks."""
        rows: List[List[Raw]] = []
        for band in grid:
            height = band[0].rows
            for blk in band:
                field.require_same(blk.field)
                if blk.rows != height:
                    raise DimensionMismatchError("Blocks in a band must share their height")
            for i in range(height):
                row: List[Raw] = []
                for blk in band:
                    row.extend(blk.row(i))
                rows.append(row)
        ncols = len(rows[0]) if rows else 0
        return cls(field, len(rows), ncols, tuple(x for r in rows for x in r))

    # -- access -------------------------------------------------------------

    def __getitem__(self, index: Tuple[int, int]) -> Raw:
        i, j = index
        return self.entries[i * self.cols + j]

    def scalar(self, i: int, j: int) -> Scalar:
        return Scalar(self.field, self[i, j])

    def row(self, i: int) -> Tuple[Raw, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple[Raw, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> List[List[Raw]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> List[Tuple[Raw, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def vectorize(self) -> Vector:
        return self.entries

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        rows = [self.row(i)[c0:c1] for i in range(r0, r1)]
        return Matrix(self.field, r1 - r0, c1 - c0, tuple(x for r in rows for x in r))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __str__(self) -> str:
        fmt = self.field.format
        return "\n".join(" ".join(fmt(x) for x in self.row(i)) for i in range(self.rows))

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix):
            raise TypeError(f"Expected a Matrix, got {type(other).__name__}")
        if other.field != self.field:
            raise MixedFieldsError(f"Field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("Matrix sizes differ in addition")
        add = self.field.add
        return Matrix(self.field, self.rows, self.cols, tuple(add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("Matrix sizes differ in subtraction")
        sub = self.field.sub
        return Matrix(self.field, self.rows, self.cols, tuple(sub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix(self.field, self.rows, self.cols, tuple(neg(a) for a in self.entries))

    def scale(self, c) -> "Matrix":
        c = self.field.normalize(c)
        mul = self.field.mul
        return Matrix(self.field, self.rows, self.cols, tuple(mul(c, a) for a in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        f = self.field
        cols = other.columns()
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in cols:
                acc = f.zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                out.append(acc)
        return Matrix(f, self.rows, other.cols, tuple(out))

    def apply(self, vec: Sequence[Raw]) -> Vector:
        """Matrix-vector product M·X for a column vector given as a sequence."""
        if len(vec) != self.cols:
            raise DimensionMismatchError(f"Vector of length {len(vec)} for a matrix with {self.cols} columns")
        f = self.field
        out = []
        for i in range(self.rows):
            acc = f.zero
            for a, b in zip(self.row(i), vec):
                if a and b:
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return tuple(out)

    def bilinear(self, x: Sequence[Raw], y: Sequence[Raw]) -> Raw:
        """x^T · M · y."""
        f = self.field
        my = self.apply(y)
        acc = f.zero
        for a, b in zip(x, my):
            if a and b:
                acc = f.add(acc, f.mul(a, b))
        return acc

    def quadratic(self, x: Sequence[Raw]) -> Raw:
        return self.bilinear(x, x)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def power(self, k: int) -> "Matrix":
        result = Matrix.identity(self.field, self.rows)
        for _ in range(k):
            result = result @ self
        return result

    # -- invariants ---------------------------------------------------------

    def rank(self) -> int:
        return echelon.rank(self.field, self.to_rows())

    def determinant(self) -> Raw:
        if not self.is_square:
            raise DimensionMismatchError("Determinant of a non-square matrix")
        return echelon.determinant(self.field, self.to_rows())

    def is_invertible(self) -> bool:
        return self.is_square and bool(self.determinant())

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise SingularMatrixError(f"{self.rows}x{self.cols} matrix is not square")
        n = self.rows
        f = self.field
        augmented = [list(self.row(i)) + [f.one if i == j else f.zero for j in range(n)] for i in range(n)]
        reduced, pivots = echelon.rref(f, augmented, ncols=n)
        if pivots != list(range(n)):
            raise SingularMatrixError("Matrix is not invertible")
        return Matrix(f, n, n, tuple(x for r in reduced for x in r[n:]))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_alternate(self) -> bool:
        """Skew-symmetric with zero diagonal (the diagonal test matters in characteristic 2)."""
        if not self.is_square:
            return False
        f = self.field
        n = self.rows
        for i in range(n):
            if self[i, i]:
                return False
            for j in range(i + 1, n):
                if f.add(self[i, j], self[j, i]):
                    return False
        return True

    def is_strictly_upper(self) -> bool:
        return all(not self[i, j] for i in range(self.rows) for j in range(min(i + 1, self.cols)))

    def is_nilpotent(self) -> bool:
        return self.is_square and self.power(self.rows).is_zero()

    def is_lower_triangular(self) -> bool:
        return all(not self[i, j] for i in range(self.rows) for j in range(i + 1, self.cols))

    def symmetrized(self) -> "Matrix":
        """(M + M^T)/2; requires an odd characteristic."""
        half = self.field.inv(self.field.normalize(2))
        return (self + self.transpose()).scale(half)

    def first_nonzero(self) -> Raw:
        """First nonzero entry in row-major order, zero if none."""
        for x in self.entries:
            if x:
                return x
        return self.field.zero

    def normalized(self) -> "Matrix":
        """Scale so that the first nonzero row-major entry equals 1."""
        lead = self.first_nonzero()
        if not lead:
            return self
        return self.scale(self.field.inv(lead))
