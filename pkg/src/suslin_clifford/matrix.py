"""Dense matrices over an exact ring.

Entries are :class:`~suslin_clifford.ring.Scalar` values stored row-major in
tuples.  Only ring operations are used; nothing here divides.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .ring import Ring, RingMismatchError, Scalar

__all__ = ["Matrix", "block_matrix"]


class Matrix:
    __slots__ = ("ring", "rows", "cols", "_e")

    def __init__(self, ring: Ring, entries: Iterable[Iterable], cols: int | None = None):
        e = tuple(tuple(ring(x) for x in row) for row in entries)
        if e:
            width = len(e[0])
            if any(len(r) != width for r in e):
                raise ValueError("ragged matrix rows")
        else:
            width = cols or 0
        if cols is not None and e and width != cols:
            raise ValueError(f"expected {cols} columns, got {width}")
        self.ring = ring
        self.rows = len(e)
        self.cols = width
        self._e = e

    @classmethod
    def _raw(cls, ring: Ring, e: tuple, rows: int, cols: int) -> Matrix:
        m = cls.__new__(cls)
        m.ring, m._e, m.rows, m.cols = ring, e, rows, cols
        return m

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> Matrix:
        z = ring.zero
        return cls._raw(ring, tuple((z,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> Matrix:
        z, o = ring.zero, ring.one
        return cls._raw(ring, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def scalar(cls, ring: Ring, n: int, s) -> Matrix:
        s = ring(s)
        z = ring.zero
        return cls._raw(ring, tuple(tuple(s if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def diagonal(cls, ring: Ring, diag: Sequence) -> Matrix:
        n = len(diag)
        d = [ring(x) for x in diag]
        z = ring.zero
        return cls._raw(ring, tuple(tuple(d[i] if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def from_function(cls, ring: Ring, rows: int, cols: int, fn: Callable[[int, int], object]) -> Matrix:
        return cls(ring, [[fn(i, j) for j in range(cols)] for i in range(rows)], cols=cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self._e[i]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self._e)

    def tolist(self) -> list[list[Scalar]]:
        return [list(r) for r in self._e]

    def _check(self, other: Matrix) -> None:
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatchError(f"matrix over {other.ring} combined with {self.ring}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        e = tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self._e, other._e))
        return Matrix._raw(self.ring, e, self.rows, self.cols)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        e = tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self._e, other._e))
        return Matrix._raw(self.ring, e, self.rows, self.cols)

    def __neg__(self) -> Matrix:
        return Matrix._raw(self.ring, tuple(tuple(-x for x in r) for r in self._e), self.rows, self.cols)

    def scale(self, s) -> Matrix:
        s = self.ring(s)
        return Matrix._raw(self.ring, tuple(tuple(s * x for x in r) for r in self._e), self.rows, self.cols)

    def __mul__(self, s) -> Matrix:
        if isinstance(s, Matrix):
            return self @ s
        return self.scale(s)

    def __rmul__(self, s) -> Matrix:
        return self.scale(s)

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        z = self.ring.zero
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for r in self._e:
            nz = [(k, x) for k, x in enumerate(r) if not x.is_zero()]
            row = []
            for c in cols:
                acc = z
                for k, x in nz:
                    y = c[k]
                    if not y.is_zero():
                        acc = acc + x * y
                row.append(acc)
            out.append(tuple(row))
        return Matrix._raw(self.ring, tuple(out), self.rows, other.cols)

    def apply(self, vec: Sequence) -> tuple[Scalar, ...]:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} for {self.shape} matrix")
        v = [self.ring(x) for x in vec]
        z = self.ring.zero
        out = []
        for r in self._e:
            acc = z
            for x, y in zip(r, v):
                acc = acc + x * y
            out.append(acc)
        return tuple(out)

    def apply_left(self, vec: Sequence) -> tuple[Scalar, ...]:
        """Row vector times matrix."""
        if len(vec) != self.rows:
            raise ValueError(f"row vector of length {len(vec)} for {self.shape} matrix")
        v = [self.ring(x) for x in vec]
        z = self.ring.zero
        out = []
        for j in range(self.cols):
            acc = z
            for i, x in enumerate(v):
                acc = acc + x * self._e[i][j]
            out.append(acc)
        return tuple(out)

    def transpose(self) -> Matrix:
        if not self.rows:
            return Matrix._raw(self.ring, ((),) * self.cols, self.cols, 0)
        return Matrix._raw(self.ring, tuple(zip(*self._e)), self.cols, self.rows)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        e = tuple(tuple(self._e[i][j] for j in cols) for i in rows)
        return Matrix._raw(self.ring, e, len(rows), len(cols))

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self._e for x in r)

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.ring, self.rows) if self.is_square() else False

    def map(self, fn: Callable[[Scalar], Scalar], ring: Ring | None = None) -> Matrix:
        """Entrywise image; ``ring`` is the target ring when ``fn`` changes it."""
        return Matrix(ring or self.ring, [[fn(x) for x in r] for r in self._e], cols=self.cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.ring, self._e))

    def first_difference(self, other: Matrix) -> tuple[int, int] | None:
        """Index of the first differing entry, or ``None`` when equal."""
        if self.shape != other.shape:
            return (-1, -1)
        for i, (r, s) in enumerate(zip(self._e, other._e)):
            for j, (x, y) in enumerate(zip(r, s)):
                if x != y:
                    return i, j
        return None

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self._e]

    @classmethod
    def from_json(cls, ring: Ring, data: Sequence[Sequence[str]]) -> Matrix:
        return cls(ring, [[ring(x) for x in r] for r in data])

    def format(self) -> str:
        if not self.rows or not self.cols:
            return f"({self.rows}x{self.cols} empty)"
        cells = [[str(x) for x in r] for r in self._e]
        width = [max(len(cells[i][j]) for i in range(self.rows)) for j in range(self.cols)]
        lines = ["(" + "  ".join(c.rjust(w) for c, w in zip(r, width)) + ")" for r in cells]
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Matrix({self.ring}, {self.to_json()})"


def block_matrix(ring: Ring, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a matrix from a grid of blocks; empty blocks are allowed."""
    row_heights = [row[0].rows for row in blocks]
    col_widths = [b.cols for b in blocks[0]]
    out = []
    for bi, row in enumerate(blocks):
        if [b.cols for b in row] != col_widths or any(b.rows != row_heights[bi] for b in row):
            raise ValueError("inconsistent block sizes")
        for i in range(row_heights[bi]):
            line: list[Scalar] = []
            for b in row:
                b._check(row[0])
                line.extend(b.row(i))
            out.append(tuple(line))
    return Matrix._raw(ring, tuple(out), sum(row_heights), sum(col_widths))
