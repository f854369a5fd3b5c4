"""Smith normal form over Q[x] with invertible transforms.

Division-based pivoting on the minimal-degree entry keeps intermediate
degrees small; contents are cleared through monic normalization at the end.
Degree labels ride along through the row/column operations so that graded
kernels and cokernels keep well-defined internal degrees (they are only
permuted: swaps move them, homogeneous adds and unit scalings fix them).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedRingError
from .multipoly import MultiPoly
from .sparse import SparseMatrix


@dataclass
class SNFResult:
    """U * M * V = D with D = diag(factors) padded by zeros, d1 | d2 | ..."""

    factors: list
    U: SparseMatrix
    V: SparseMatrix
    Vinv: SparseMatrix
    row_degrees: list
    col_degrees: list
    ring_vars: tuple

    @property
    def rank(self):
        return len(self.factors)

    def diagonal(self):
        rows, cols = self.U.rows, self.V.cols
        entries = {(i, i): f for i, f in enumerate(self.factors)}
        return SparseMatrix(rows, cols, entries)


def _as_univariate(matrix):
    """Extract the single variable tuple; coerce Fraction entries."""
    ring_vars = None
    for value in matrix.entries.values():
        if isinstance(value, MultiPoly):
            if len(value.vars) != 1:
                raise UnsupportedRingError(
                    f"Smith normal form needs univariate scalars, got {value.vars}"
                )
            if ring_vars is None:
                ring_vars = value.vars
            elif value.vars != ring_vars:
                raise UnsupportedRingError("mixed scalar rings in matrix")
        elif not isinstance(value, (int, Fraction)):
            raise UnsupportedRingError(f"unsupported scalar {type(value).__name__}")
    if ring_vars is None:
        ring_vars = ("x",)
    dense = []
    zero = MultiPoly.zero(ring_vars)
    for i in range(matrix.rows):
        row = []
        for j in range(matrix.cols):
            value = matrix.entries.get((i, j))
            if value is None:
                row.append(zero)
            elif isinstance(value, MultiPoly):
                row.append(value)
            else:
                row.append(MultiPoly.constant(ring_vars, value))
        dense.append(row)
    return dense, ring_vars


def smith_normal_form(matrix, row_degrees=None, col_degrees=None):
    """Smith normal form of a SparseMatrix over Q[x].

    Returns an :class:`SNFResult` with monic invariant factors in
    divisibility order and exact invertible transforms U, V (and V^-1).
    Optional degree labels are carried through the reduction.
    """
    M, ring_vars = _as_univariate(matrix)
    nrows, ncols = matrix.rows, matrix.cols
    one = Fraction(1)

    U = [[one if i == j else Fraction(0) for j in range(nrows)] for i in range(nrows)]
    V = [[one if i == j else Fraction(0) for j in range(ncols)] for i in range(ncols)]
    Vinv = [[one if i == j else Fraction(0) for j in range(ncols)] for i in range(ncols)]
    # U, V entries live in the polynomial ring too.
    U = [[MultiPoly.constant(ring_vars, U[i][j]) for j in range(nrows)] for i in range(nrows)]
    V = [[MultiPoly.constant(ring_vars, V[i][j]) for j in range(ncols)] for i in range(ncols)]
    Vinv = [[MultiPoly.constant(ring_vars, Vinv[i][j]) for j in range(ncols)] for i in range(ncols)]

    rdeg = list(row_degrees) if row_degrees is not None else [0] * nrows
    cdeg = list(col_degrees) if col_degrees is not None else [0] * ncols

    def swap_rows(a, b):
        if a == b:
            return
        M[a], M[b] = M[b], M[a]
        U[a], U[b] = U[b], U[a]
        rdeg[a], rdeg[b] = rdeg[b], rdeg[a]

    def swap_cols(a, b):
        if a == b:
            return
        for row in M:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]
        Vinv[a], Vinv[b] = Vinv[b], Vinv[a]
        cdeg[a], cdeg[b] = cdeg[b], cdeg[a]

    def row_op(i, t, q):
        # row_i -= q * row_t
        if q.is_zero():
            return
        M[i] = [a - q * b for a, b in zip(M[i], M[t])]
        U[i] = [a - q * b for a, b in zip(U[i], U[t])]

    def col_op(j, t, q):
        # col_j -= q * col_t ; Vinv row_t += q * Vinv row_j
        if q.is_zero():
            return
        for row in M:
            row[j] = row[j] - q * row[t]
        for row in V:
            row[j] = row[j] - q * row[t]
        Vinv[t] = [a + q * b for a, b in zip(Vinv[t], Vinv[j])]

    def scale_row(i, unit):
        # unit is a nonzero rational
        inv = MultiPoly.constant(ring_vars, Fraction(1) / unit)
        M[i] = [inv * a for a in M[i]]
        U[i] = [inv * a for a in U[i]]

    def min_pivot(t):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if M[i][j].is_zero():
                    continue
                d = M[i][j].univ_degree()
                if best is None or d < best[0]:
                    best = (d, i, j)
        return best

    rank = 0
    for t in range(min(nrows, ncols)):
        while True:
            found = min_pivot(t)
            if found is None:
                break
            _, pi, pj = found
            swap_rows(t, pi)
            swap_cols(t, pj)
            pivot = M[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if not M[i][t].is_zero():
                    q, r = M[i][t].univ_divmod(pivot)
                    row_op(i, t, q)
                    if not r.is_zero():
                        dirty = True
            for j in range(t + 1, ncols):
                if not M[t][j].is_zero():
                    q, r = M[t][j].univ_divmod(pivot)
                    col_op(j, t, q)
                    if not r.is_zero():
                        dirty = True
            if dirty:
                continue
            # Row and column t are clear; enforce divisibility of the rest.
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if not M[i][j].is_zero():
                        _, r = M[i][j].univ_divmod(pivot)
                        if not r.is_zero():
                            offender = i
                            break
                if offender is not None:
                    break
            if offender is None:
                break
            # Fold the offending row into row t and keep reducing.
            M[t] = [a + b for a, b in zip(M[t], M[offender])]
            U[t] = [a + b for a, b in zip(U[t], U[offender])]
        if M[t][t].is_zero():
            break
        lead = M[t][t].univ_coeff(M[t][t].univ_degree())
        if lead != 1:
            scale_row(t, lead)
        rank += 1

    factors = [M[t][t] for t in range(rank)]

    def to_sparse(rows_list):
        n = len(rows_list)
        m = len(rows_list[0]) if n else 0
        return SparseMatrix(
            n, m,
            {(i, j): v for i, row in enumerate(rows_list) for j, v in enumerate(row) if not v.is_zero()},
        )

    return SNFResult(
        factors=factors,
        U=to_sparse(U) if nrows else SparseMatrix(0, 0),
        V=to_sparse(V) if ncols else SparseMatrix(0, 0),
        Vinv=to_sparse(Vinv) if ncols else SparseMatrix(0, 0),
        row_degrees=rdeg,
        col_degrees=cdeg,
        ring_vars=ring_vars,
    )
