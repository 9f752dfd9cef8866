"""
Reader and writer for the line-oriented `.mspace` format.

    # comment
    field 3            (a prime, or Q)
    n 2
    offset             (optional; makes the file an affine space)
    1 0
    0 1
    space 1
    0 1
    0 0

Everything after `#` is ignored, as are blank lines. Matrices are n rows of
whitespace-separated entries; entries are integers or `a/b` and are reduced
into the field. See docs/MSPACE_FORMAT.md for the full grammar.
"""

import logging
from typing import Iterator, List, Tuple, Union

from src.core.errors import InvalidFieldError, ParseError, ValueOutOfFieldError
from src.linalg.field import FieldDesc
from src.linalg.matrix import Matrix
from src.linalg.subspace import AffineSpace, MatrixSubspace

logger = logging.getLogger(__name__)

Space = Union[MatrixSubspace, AffineSpace]
Line = Tuple[int, List[str]]


def _tokenized(text: str) -> Iterator[Line]:
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield number, tokens


class _Reader:
    def __init__(self, text: str):
        self._lines = list(_tokenized(text))
        self._pos = 0

    @property
    def last_line(self) -> int:
        return self._lines[-1][0] if self._lines else 1

    def peek(self) -> Line:
        return self._lines[self._pos] if self._pos < len(self._lines) else None

    def next(self, expecting: str) -> Line:
        line = self.peek()
        if line is None:
            raise ParseError(f"Unexpected end of input, expected {expecting}", self.last_line)
        self._pos += 1
        return line

    def keyword(self, word: str, arity: int) -> Tuple[int, List[str]]:
        number, tokens = self.next(f"'{word}'")
        if tokens[0] != word:
            raise ParseError(f"Expected '{word}', found '{tokens[0]}'", number)
        if len(tokens) != 1 + arity:
            raise ParseError(f"'{word}' takes {arity} argument(s), got {len(tokens) - 1}", number)
        return number, tokens[1:]

    def count(self, word: str) -> int:
        number, args = self.keyword(word, 1)
        try:
            value = int(args[0])
        except ValueError:
            raise ParseError(f"'{word}' needs an integer, got {args[0]!r}", number)
        if value < 0 or (word == "n" and value == 0):
            raise ParseError(f"'{word}' out of range: {value}", number)
        return value

    def matrix(self, field: FieldDesc, n: int) -> Matrix:
        rows = []
        for _ in range(n):
            number, tokens = self.next("a matrix row")
            if len(tokens) != n:
                raise ParseError(f"Matrix row has {len(tokens)} entries, expected {n}", number)
            try:
                rows.append([field.parse(t) for t in tokens])
            except ValueOutOfFieldError as e:
                raise ValueOutOfFieldError(f"line {number}: {e}") from e
        return Matrix.from_rows(field, rows)

    def done(self) -> None:
        line = self.peek()
        if line is not None:
            raise ParseError(f"Trailing content '{' '.join(line[1])}'", line[0])


def parse_field(token: str, line: int = None) -> FieldDesc:
    """`Q` (or `q`) for the rationals, otherwise a prime."""
    if token in ("Q", "q"):
        return FieldDesc.rational()
    try:
        return FieldDesc.prime(int(token))
    except ValueError:
        raise ParseError(f"Field must be a prime or Q, got {token!r}", line)
    except InvalidFieldError as e:
        raise ParseError(str(e), line) from e


def parse_mspace(text: str) -> Space:
    """
    Parse `.mspace` text into a canonical space.

    Args:
        text: File contents

    Returns:
        AffineSpace when an `offset` block is present, MatrixSubspace otherwise

    Raises:
        ParseError: On structural errors (with the offending line number)
        ValueOutOfFieldError: On an entry that is not a field element
    """
    reader = _Reader(text)
    number, args = reader.keyword("field", 1)
    field = parse_field(args[0], number)
    n = reader.count("n")

    offset = None
    line = reader.peek()
    if line is not None and line[1][0] == "offset":
        reader.keyword("offset", 0)
        offset = reader.matrix(field, n)

    k = reader.count("space")
    matrices = [reader.matrix(field, n) for _ in range(k)]
    reader.done()

    space = MatrixSubspace.span(field, n, matrices)
    if space.dim < k:
        logger.debug(f"{k} matrices span a {space.dim}-dimensional space")
    if offset is not None:
        return AffineSpace(offset, space)
    return space


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        raise ParseError(f"Not UTF-8 text (byte offset {e.start})", line) from e


def read_mspace(path: str) -> Space:
    """
    Parse a file; ParseError messages are prefixed with the path.

    Raises:
        ParseError: Also when the file is not UTF-8, with the line and byte
            offset of the first undecodable byte
    """
    with open(path, "rb") as f:
        data = f.read()
    try:
        return parse_mspace(_decode(data))
    except ParseError as e:
        wrapped = ParseError(f"{path}: {e}")
        wrapped.line = e.line
        raise wrapped from e
    except ValueOutOfFieldError as e:
        raise ValueOutOfFieldError(f"{path}: {e}") from e


def _matrix_lines(m: Matrix) -> List[str]:
    return [" ".join(m.field.format(x) for x in m.row(i)) for i in range(m.rows)]


def serialize_mspace(space: Space, comment: str = None) -> str:
    """
    Canonical `.mspace` text: basis in reduced echelon order, offset reduced,
    one blank line between matrices.
    """
    if isinstance(space, AffineSpace):
        offset, linear = space.offset, space.translation
    else:
        offset, linear = None, space

    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"field {linear.field.token}")
    out.append(f"n {linear.n}")
    if offset is not None:
        out.append("offset")
        out.extend(_matrix_lines(offset))
    out.append(f"space {linear.dim}")
    for i, m in enumerate(linear.basis):
        if i:
            out.append("")
        out.extend(_matrix_lines(m))
    return "\n".join(out) + "\n"
