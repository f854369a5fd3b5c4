from fractions import Fraction
from itertools import combinations

import pytest

from colink.errors import UnsupportedRingError
from colink.multipoly import MultiPoly, xpoly
from colink.snf import smith_normal_form
from colink.sparse import SparseMatrix


def x_const(c):
    return MultiPoly.constant(("x",), c)


X = xpoly({1: 1})


def mat(rows):
    entries = {}
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if isinstance(v, int):
                v = x_const(v)
            if not v.is_zero():
                entries[(i, j)] = v
    return SparseMatrix(len(rows), len(rows[0]) if rows else 0, entries)


def check_transforms(matrix, result):
    left = result.U * matrix * result.V
    assert left == result.diagonal()
    ident = SparseMatrix.identity(matrix.cols, x_const(1))
    assert result.V * result.Vinv == ident
    assert result.Vinv * result.V == ident


def test_identity():
    m = mat([[1, 0], [0, 1]])
    res = smith_normal_form(m)
    assert res.factors == [x_const(1), x_const(1)]
    check_transforms(m, res)


def test_diag_reorder_divisibility():
    m = mat([[X * X, x_const(0)], [x_const(0), X]])
    res = smith_normal_form(m)
    assert res.factors == [X, X * X]
    check_transforms(m, res)


def test_unit_gcd_with_determinant_x_squared():
    m = mat([[X, 1], [0, X]])
    res = smith_normal_form(m)
    assert res.factors == [x_const(1), X * X]
    check_transforms(m, res)


def test_rectangular_and_zero():
    m = mat([[0, 0, 0], [0, 0, 0]])
    res = smith_normal_form(m)
    assert res.factors == []
    check_transforms(m, res)
    m2 = mat([[X, X * X, 0]])
    res2 = smith_normal_form(m2)
    assert res2.factors == [X]
    check_transforms(m2, res2)


def test_multivariate_rejected():
    bad = MultiPoly(("x", "y"), {(1, 0): 1})
    m = SparseMatrix(1, 1, {(0, 0): bad})
    with pytest.raises(UnsupportedRingError):
        smith_normal_form(m)


def _minor_gcd_factors(dense, n):
    """Oracle: product of first k invariant factors = gcd of k x k minors."""

    def det(rows, cols):
        if not rows:
            return x_const(1)
        total = MultiPoly.zero(("x",))
        first, rest = rows[0], rows[1:]
        sign = 1
        for idx, c in enumerate(cols):
            sub = det(rest, cols[:idx] + cols[idx + 1 :])
            term = dense[first][c] * sub
            total = total + (term if sign > 0 else -term)
            sign = -sign
        return total

    def poly_gcd(a, b):
        while not b.is_zero():
            _, r = a.univ_divmod(b)
            a, b = b, r
        return a.monic() if not a.is_zero() else a

    nrows = len(dense)
    ncols = len(dense[0])
    gcds = []
    for k in range(1, n + 1):
        g = MultiPoly.zero(("x",))
        for rows in combinations(range(nrows), k):
            for cols in combinations(range(ncols), k):
                g = poly_gcd(g, det(list(rows), list(cols)))
        gcds.append(g)
    return gcds


@pytest.mark.parametrize(
    "rows",
    [
        [[1, 2], [3, 4]],
        [["x", "x^2"], ["x^2", "x^3+x"]],
        [["x+1", 0, "x"], [0, "x^2", 1], ["x", 1, 0]],
        [["x^2", "x", 0, 1], ["x", 0, "x^3", 0], [0, 1, "x", "x"], [1, 0, 0, "x^2"]],
    ],
)
def test_invariant_factors_match_minor_gcds(rows):
    def parse(v):
        if isinstance(v, int):
            return x_const(v)
        terms = {}
        for part in v.split("+"):
            part = part.strip()
            if part == "x":
                terms[1] = terms.get(1, 0) + 1
            elif part.startswith("x^"):
                terms[int(part[2:])] = terms.get(int(part[2:]), 0) + 1
            else:
                terms[0] = terms.get(0, 0) + int(part)
        return xpoly(terms)

    parsed = [[parse(v) for v in row] for row in rows]
    m = mat(parsed)
    res = smith_normal_form(m)
    check_transforms(m, res)
    gcds = _minor_gcd_factors(parsed, len(res.factors))
    running = x_const(1)
    for k, f in enumerate(res.factors):
        running = running * f
        assert running.monic() == gcds[k]
