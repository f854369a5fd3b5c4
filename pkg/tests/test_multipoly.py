from fractions import Fraction

import pytest

from colink.errors import DomainError, UnsupportedRingError
from colink.multipoly import MultiPoly, colour_ring, xpoly


def test_ring_ops():
    vars = ("w1", "w2")
    w1 = MultiPoly.variable(vars, "w1")
    w2 = MultiPoly.variable(vars, "w2")
    p = (w1 - w2) * (w1 + w2)
    assert p == w1 * w1 - w2 * w2
    assert (p - p).is_zero()
    assert p.substitute({"w1": 3, "w2": 1}).constant_value() == 8


def test_variable_mismatch():
    a = MultiPoly.variable(("x",), "x")
    b = MultiPoly.variable(("y",), "y")
    with pytest.raises(DomainError):
        a + b


def test_substitute_partial():
    vars = colour_ring(2)
    w1 = MultiPoly.variable(vars, "w1")
    w2 = MultiPoly.variable(vars, "w2")
    p = w1 * w2 + w2
    q = p.substitute({"w1": 2})
    assert q == w2 * 3


def test_univariate_divmod_and_monic():
    x = xpoly({1: 1})
    p = x ** 3 - x
    q, r = p.univ_divmod(x - 1)
    assert r.is_zero()
    assert q == x * x + x
    assert (x * 3).monic() == x
    with pytest.raises(UnsupportedRingError):
        MultiPoly.variable(("a", "b"), "a").univ_divmod(
            MultiPoly.variable(("a", "b"), "b")
        )


def test_total_degree_and_text():
    vars = ("w1", "x")
    p = MultiPoly(vars, {(2, 1): Fraction(3, 2), (0, 0): -1})
    assert p.total_degree() == 3
    assert p.degree_in("x") == 1
    assert p.to_text() == "-1 + 3/2*w1^2*x^1"
