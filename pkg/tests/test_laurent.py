import math

import pytest

from colink.errors import DomainError
from colink.laurent import LaurentPoly, counting_gbinom, qbinom, qfact, qint


def test_zero_has_empty_terms():
    assert LaurentPoly({0: 0, 3: 0}).terms == {}
    assert LaurentPoly.zero().is_zero()


def test_ring_ops_exact():
    p = LaurentPoly({1: 1, -1: 1})
    q = LaurentPoly({0: -1, 2: 3})
    assert p + q - q == p
    assert (p * q).evaluate(2) == p.evaluate(2) * q.evaluate(2)
    assert p * LaurentPoly.zero() == LaurentPoly.zero()


def test_qint_balanced():
    assert qint(2) == LaurentPoly({1: 1, -1: 1})
    assert qint(0).is_zero()
    assert qint(-3) == -qint(3)
    assert qint(5).bar() == qint(5)


def test_qbinom_examples():
    # (2,1) -> q + q^-1
    assert qbinom(2, 1) == LaurentPoly({1: 1, -1: 1})
    # (m,0) -> 1
    for m in range(1, 7):
        assert qbinom(m, 0) == LaurentPoly.one()
    # (4,2) -> q^4 + q^2 + 2 + q^-2 + q^-4, frozen from expanding
    # [4][3]/([2][1]) by polynomial division.
    expected = (qint(4) * qint(3)).exact_div(qint(2) * qint(1))
    assert expected == LaurentPoly({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})
    assert qbinom(4, 2) == expected


def test_qbinom_symmetry_and_specialization():
    for m in range(1, 9):
        for k in range(0, m + 1):
            b = qbinom(m, k)
            assert b == qbinom(m, m - k)
            assert b.bar() == b
            assert b.evaluate(1) == math.comb(m, k)


def test_qbinom_against_quantum_factorial_oracle():
    # Independent route: [m]! / ([k]! [m-k]!) by exact division.
    for m in range(1, 7):
        for k in range(0, m + 1):
            assert qbinom(m, k) == qfact(m).exact_div(qfact(k) * qfact(m - k))


def test_qbinom_domain_errors():
    with pytest.raises(DomainError):
        qbinom(3, 4)
    with pytest.raises(DomainError):
        qbinom(3, -1)


def test_counting_gbinom_point_counts():
    # C(m,k)(p) = number of k-subspaces of F_p^m; Gaussian formula oracle.
    def subspace_count(m, k, p):
        num = 1
        for i in range(k):
            num *= (p ** (m - i) - 1)
        den = 1
        for i in range(k):
            den *= (p ** (k - i) - 1)
        return num // den

    for m in range(1, 6):
        for k in range(0, m + 1):
            for p in (2, 3, 5):
                assert counting_gbinom(m, k).evaluate(p) == subspace_count(m, k, p)


def test_exact_div_errors_on_inexact():
    with pytest.raises(DomainError):
        (LaurentPoly({1: 1, 0: 1})).exact_div(qint(2))


def test_serialization_roundtrip():
    p = LaurentPoly({-2: 1, 0: -3, 5: 7})
    assert p.to_text() == "1*q^-2 + -3*q^0 + 7*q^5"
    assert LaurentPoly.from_text(p.to_text()) == p
    assert LaurentPoly.from_text("0").is_zero()
