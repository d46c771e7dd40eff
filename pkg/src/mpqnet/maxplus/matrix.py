"""Dense matrices over the max-plus semiring.

A ``MaxPlusMatrix`` is an immutable dense matrix whose entries are finite
numbers or ``EPS``.  Matrix indices are 0-based; the queueing layers above
translate from their 1-based node numbering.  ``oplus`` is entrywise max,
``otimes`` is the max-plus product (max of sums along the inner index), and
``power`` iterates ``otimes`` with the 0-th power defined as the identity.

The arithmetic itself is delegated to the kernel selected in ``_backend``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import _backend
from .values import EPS, TimeValue


class MaxPlusMatrix:
    __slots__ = ("_rows", "_cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Sequence[TimeValue]):
        """Build from a flat row-major sequence of length ``rows * cols``."""
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        data = list(entries)
        if len(data) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, "
                f"got {len(data)}"
            )
        self._rows = rows
        self._cols = cols
        self._data = data

    # -- constructors --------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[TimeValue]]) -> "MaxPlusMatrix":
        row_lists = [list(r) for r in rows]
        nrows = len(row_lists)
        ncols = len(row_lists[0]) if row_lists else 0
        flat: list[TimeValue] = []
        for r in row_lists:
            if len(r) != ncols:
                raise ValueError("rows have unequal lengths")
            flat.extend(r)
        return cls(nrows, ncols, flat)

    @classmethod
    def null(cls, rows: int, cols: int | None = None) -> "MaxPlusMatrix":
        """The all-eps matrix (additive zero)."""
        if cols is None:
            cols = rows
        return cls(rows, cols, [EPS] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "MaxPlusMatrix":
        """Zeros on the diagonal, eps elsewhere (multiplicative identity)."""
        data: list[TimeValue] = [EPS] * (n * n)
        for i in range(n):
            data[i * n + i] = 0
        return cls(n, n, data)

    @classmethod
    def diagonal(cls, values: Sequence[TimeValue]) -> "MaxPlusMatrix":
        n = len(values)
        data: list[TimeValue] = [EPS] * (n * n)
        for i, v in enumerate(values):
            data[i * n + i] = v
        return cls(n, n, data)

    @classmethod
    def column(cls, values: Sequence[TimeValue]) -> "MaxPlusMatrix":
        return cls(len(values), 1, list(values))

    # -- accessors -----------------------------------------------------

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._rows, self._cols)

    def entry(self, i: int, j: int) -> TimeValue:
        if not (0 <= i < self._rows and 0 <= j < self._cols):
            raise IndexError(f"entry ({i}, {j}) outside {self._rows}x{self._cols}")
        return self._data[i * self._cols + j]

    def to_rows(self) -> list[list[TimeValue]]:
        c = self._cols
        return [self._data[i * c : (i + 1) * c] for i in range(self._rows)]

    def column_values(self) -> list[TimeValue]:
        if self._cols != 1:
            raise ValueError("column_values requires a single-column matrix")
        return list(self._data)

    def is_null(self) -> bool:
        return all(v is EPS for v in self._data)

    # -- algebra -------------------------------------------------------

    def oplus(self, other: "MaxPlusMatrix") -> "MaxPlusMatrix":
        """Entrywise max; shapes must agree."""
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch for oplus: {self.shape} vs {other.shape}")
        data = _backend.kernel.mat_add(self._data, other._data, len(self._data))
        return MaxPlusMatrix(self._rows, self._cols, data)

    def otimes(self, other: "MaxPlusMatrix") -> "MaxPlusMatrix":
        """Max-plus product; inner dimensions must agree."""
        if self._cols != other._rows:
            raise ValueError(
                f"shape mismatch for otimes: {self.shape} vs {other.shape}"
            )
        data = _backend.kernel.mat_mul(
            self._data, other._data, self._rows, self._cols, other._cols
        )
        return MaxPlusMatrix(self._rows, other._cols, data)

    def power(self, q: int) -> "MaxPlusMatrix":
        """q-th max-plus power of a square matrix; ``power(0)`` is the identity."""
        if self._rows != self._cols:
            raise ValueError("power requires a square matrix")
        if not isinstance(q, int) or q < 0:
            raise ValueError("exponent must be a non-negative integer")
        acc = MaxPlusMatrix.identity(self._rows)
        for _ in range(q):
            acc = acc.otimes(self)
        return acc

    def apply(self, values: Sequence[TimeValue]) -> list[TimeValue]:
        """Product with a column given as a plain list, returned as a list."""
        if len(values) != self._cols:
            raise ValueError(
                f"vector length {len(values)} does not match {self._cols} columns"
            )
        return _backend.kernel.mat_mul(
            self._data, list(values), self._rows, self._cols, 1
        )

    def transpose(self) -> "MaxPlusMatrix":
        r, c = self._rows, self._cols
        data: list[TimeValue] = [EPS] * (r * c)
        for i in range(r):
            base = i * c
            for j in range(c):
                data[j * r + i] = self._data[base + j]
        return MaxPlusMatrix(c, r, data)

    __add__ = oplus
    __matmul__ = otimes
    __pow__ = power

    # -- comparison / display -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MaxPlusMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(repr(v) for v in row) for row in self.to_rows()
        )
        return f"MaxPlusMatrix({self._rows}x{self._cols}: {body})"


def diag_otimes(diag: Sequence[TimeValue], m: MaxPlusMatrix) -> MaxPlusMatrix:
    """Product diag(values) otimes m, without materialising the diagonal."""
    if len(diag) != m.rows:
        raise ValueError(f"diagonal length {len(diag)} does not match {m.rows} rows")
    data = _backend.kernel.diag_mul(list(diag), m._data, m.rows, m.cols)
    return MaxPlusMatrix(m.rows, m.cols, data)
