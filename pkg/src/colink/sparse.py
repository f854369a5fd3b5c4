"""Sparse matrices over exact scalar rings (Fraction, LaurentPoly, MultiPoly).

Scalars only need +, -, *, bool() and equality; stored entries are nonzero.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError


class SparseMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise DomainError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), value in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise DomainError(f"entry ({i},{j}) outside {rows}x{cols}")
                if value:
                    self.entries[(i, j)] = value

    @classmethod
    def identity(cls, n, one=Fraction(1)):
        return cls(n, n, {(i, i): one for i in range(n)})

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    def copy(self):
        return SparseMatrix(self.rows, self.cols, dict(self.entries))

    def get(self, i, j, default=None):
        return self.entries.get((i, j), default)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise DomainError("shape mismatch in addition")
        entries = dict(self.entries)
        for key, value in other.entries.items():
            if key in entries:
                new = entries[key] + value
                if new:
                    entries[key] = new
                else:
                    del entries[key]
            else:
                entries[key] = value
        return SparseMatrix(self.rows, self.cols, entries)

    def __neg__(self):
        return SparseMatrix(
            self.rows, self.cols, {k: -v for k, v in self.entries.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Matrix product self @ other (self.cols == other.rows)."""
        if isinstance(other, SparseMatrix):
            if self.cols != other.rows:
                raise DomainError(
                    f"composition mismatch: {self.rows}x{self.cols} @ "
                    f"{other.rows}x{other.cols}"
                )
            by_row = {}
            for (i, k), v in self.entries.items():
                by_row.setdefault(i, []).append((k, v))
            by_col = {}
            for (k, j), v in other.entries.items():
                by_col.setdefault(k, []).append((j, v))
            entries = {}
            for i, row in by_row.items():
                acc = {}
                for k, v in row:
                    for j, w in by_col.get(k, ()):
                        key = j
                        if key in acc:
                            acc[key] = acc[key] + v * w
                        else:
                            acc[key] = v * w
                for j, value in acc.items():
                    if value:
                        entries[(i, j)] = value
            return SparseMatrix(self.rows, other.cols, entries)
        # scalar multiplication
        return self.scale(other)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def scale(self, scalar):
        if not scalar:
            return SparseMatrix(self.rows, self.cols)
        return SparseMatrix(
            self.rows, self.cols, {k: scalar * v for k, v in self.entries.items()}
        )

    def transpose(self):
        return SparseMatrix(
            self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}
        )

    def column(self, j):
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def row(self, i):
        return {j: v for (ii, j), v in self.entries.items() if ii == i}

    def apply(self, vector):
        """Apply to a sparse column vector given as {index: scalar}."""
        out = {}
        for (i, j), v in self.entries.items():
            if j in vector:
                contrib = v * vector[j]
                if i in out:
                    out[i] = out[i] + contrib
                else:
                    out[i] = contrib
        return {i: v for i, v in out.items() if v}

    def dense(self, zero=Fraction(0)):
        return [
            [self.entries.get((i, j), zero) for j in range(self.cols)]
            for i in range(self.rows)
        ]

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"

    def pretty(self):
        rows = []
        for i in range(self.rows):
            rows.append(
                "[" + ", ".join(str(self.entries.get((i, j), 0)) for j in range(self.cols)) + "]"
            )
        return "\n".join(rows)
