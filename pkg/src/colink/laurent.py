"""Exact one-variable Laurent polynomials in q and balanced quantum combinatorics.

Two Gaussian-binomial normalizations coexist in the toolkit and are never
mixed: the balanced one (symmetric under q <-> 1/q, used by the tangle
evaluator) lives here as :func:`qbinom`; the counting one (nonnegative
coefficients, used for point counts) lives in :mod:`colink.geometry`.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError

_COEF_TYPES = (int, Fraction)


class LaurentPoly:
    """A Laurent polynomial in q with exact rational coefficients.

    Immutable.  ``terms`` maps integer exponents to nonzero Fractions; the
    zero polynomial has an empty term map.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exp, coef in terms.items():
                coef = Fraction(coef)
                if coef:
                    clean[int(exp)] = coef
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def q_power(cls, exp, coef=1):
        return cls({exp: coef})

    @classmethod
    def from_int(cls, n):
        return cls({0: n})

    # -- ring structure ------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for exp, coef in other.terms.items():
            new = terms.get(exp, 0) + coef
            if new:
                terms[exp] = new
            else:
                terms.pop(exp, None)
        return LaurentPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                new = terms.get(e, 0) + c1 * c2
                if new:
                    terms[e] = new
                else:
                    del terms[e]
        return LaurentPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            inv = self.monomial_inverse()
            return inv ** (-n)
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- queries --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def monomial(self):
        """Return (exponent, coefficient) of a monomial, else raise."""
        if len(self.terms) != 1:
            raise DomainError(f"not a monomial: {self}")
        [(e, c)] = self.terms.items()
        return e, c

    def min_degree(self):
        return min(self.terms) if self.terms else 0

    def max_degree(self):
        return max(self.terms) if self.terms else 0

    def coefficient(self, exp):
        return self.terms.get(exp, Fraction(0))

    def bar(self):
        """The involution q -> 1/q."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def evaluate(self, value):
        """Evaluate at a rational q-value (exact)."""
        value = Fraction(value)
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * value ** e
        return total

    def shift(self, p):
        """Multiply by q^p (the grading shift {p})."""
        if not p:
            return self
        return LaurentPoly({e + p: c for e, c in self.terms.items()})

    def monomial_inverse(self):
        e, c = self.monomial()
        return LaurentPoly({-e: Fraction(1) / c})

    def exact_div(self, other):
        """Exact division by another Laurent polynomial; raises if inexact."""
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero()
        # If the quotient exists its exponents lie in [min_q, max_q].
        min_q = self.min_degree() - other.min_degree()
        o_max = other.max_degree()
        lead = other.terms[o_max]
        rem = dict(self.terms)
        quot = {}
        while rem and max(rem) - o_max >= min_q:
            e = max(rem) - o_max
            c = rem[max(rem)] / lead
            quot[e] = c
            for oe, oc in other.terms.items():
                key = e + oe
                new = rem.get(key, 0) - c * oc
                if new:
                    rem[key] = new
                else:
                    rem.pop(key, None)
        if rem:
            raise DomainError(f"inexact division: {self} by {other}")
        return LaurentPoly(quot)

    # -- serialization ---------------------------------------------------

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"

    def to_text(self):
        """Canonical text form ``c1*q^e1 + c2*q^e2 + ...``, exponents ascending."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            parts.append(f"{_coef_text(self.terms[e])}*q^{e}")
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text):
        text = text.strip()
        if text == "0":
            return cls.zero()
        terms = {}
        for chunk in text.split("+"):
            chunk = chunk.strip()
            if "*q^" in chunk:
                coef_s, exp_s = chunk.split("*q^")
            elif chunk.startswith("q^"):
                coef_s, exp_s = "1", chunk[2:]
            else:
                coef_s, exp_s = chunk, "0"
            exp = int(exp_s)
            terms[exp] = terms.get(exp, 0) + Fraction(coef_s)
        return cls(terms)


def _coerce(value):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, _COEF_TYPES):
        return LaurentPoly({0: value})
    return NotImplemented


def _coef_text(coef):
    if coef.denominator == 1:
        return str(coef.numerator)
    return f"{coef.numerator}/{coef.denominator}"


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()


def qint(a):
    """Balanced quantum integer [a] = (q^a - q^-a)/(q - q^-1)."""
    if a == 0:
        return LaurentPoly.zero()
    if a < 0:
        return -qint(-a)
    return LaurentPoly({a - 1 - 2 * i: 1 for i in range(a)})


def qfact(a):
    """Balanced quantum factorial [a]!."""
    result = LaurentPoly.one()
    for i in range(2, a + 1):
        result = result * qint(i)
    return result


def counting_gbinom(m, k):
    """Counting-convention Gaussian binomial: nonnegative coefficients.

    Satisfies C(m,k)(p) = number of k-subspaces of F_p^m.
    """
    if k < 0 or k > m:
        raise DomainError(f"binomial ({m},{k}) out of range")
    # Pascal recursion C(m,k) = C(m-1,k-1) + q^k C(m-1,k), exact integers.
    row = [LaurentPoly.one()]
    for mm in range(1, m + 1):
        new = [LaurentPoly.one()]
        for kk in range(1, mm):
            new.append(row[kk - 1] + row[kk].shift(kk))
        new.append(LaurentPoly.one())
        row = new
    return row[k]


def qbinom(m, k):
    """Balanced Gaussian binomial, symmetric under q <-> 1/q.

    Equals the product [m][m-1]...[m-k+1] / [k]! in balanced quantum
    integers; computed division-free via the counting binomial, using
    balanced = q^(-k(m-k)) * counting(q^2).
    """
    if m <= 0:
        raise DomainError(f"rank m={m} must be positive")
    if k < 0 or k > m:
        raise DomainError(f"qbinom({m},{k}): k out of range 0..{m}")
    counting = counting_gbinom(m, k)
    return LaurentPoly({2 * e - k * (m - k): c for e, c in counting.terms.items()})
