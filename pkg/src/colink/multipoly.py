"""Exact multivariate polynomials over named variables.

Used in three roles: colour polynomials over Q[w1..wr], line restrictions
over Q[x], and symbolic integer exponents over the ledger parameters.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, UnsupportedRingError


class MultiPoly:
    """Polynomial with rational coefficients in a fixed tuple of variables.

    ``terms`` maps exponent tuples (one slot per variable) to nonzero
    Fractions.  Instances are immutable; ring operations require identical
    variable tuples.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        object.__setattr__(self, "vars", tuple(vars))
        clean = {}
        if terms:
            nv = len(self.vars)
            for exps, coef in terms.items():
                coef = Fraction(coef)
                if not coef:
                    continue
                exps = tuple(int(e) for e in exps)
                if len(exps) != nv:
                    raise DomainError(f"exponent tuple {exps} has wrong arity")
                clean[exps] = coef
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, vars):
        return cls(vars)

    @classmethod
    def constant(cls, vars, value):
        value = Fraction(value)
        if not value:
            return cls(vars)
        return cls(vars, {(0,) * len(tuple(vars)): value})

    @classmethod
    def variable(cls, vars, name):
        vars = tuple(vars)
        idx = vars.index(name)
        exps = tuple(1 if i == idx else 0 for i in range(len(vars)))
        return cls(vars, {exps: 1})

    def _same_ring(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.vars, other)
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise DomainError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        return None

    # -- ring structure ---------------------------------------------------

    def __add__(self, other):
        other = self._same_ring(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, coef in other.terms.items():
            new = terms.get(exps, 0) + coef
            if new:
                terms[exps] = new
            else:
                del terms[exps]
        return MultiPoly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._same_ring(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._same_ring(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                new = terms.get(key, 0) + c1 * c2
                if new:
                    terms[key] = new
                else:
                    del terms[key]
        return MultiPoly(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise DomainError("negative powers unsupported for MultiPoly")
        result = MultiPoly.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- queries ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise DomainError(f"not constant: {self}")
        return next(iter(self.terms.values()))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name):
        idx = self.vars.index(name)
        return max((e[idx] for e in self.terms), default=0)

    def substitute(self, assignment):
        """Substitute values for some variables.

        ``assignment`` maps variable names to Fractions/ints or MultiPolys in
        the same ring.  Unassigned variables survive.
        """
        result = MultiPoly.zero(self.vars)
        values = {}
        for name, val in assignment.items():
            idx = self.vars.index(name)
            if isinstance(val, MultiPoly):
                values[idx] = self._same_ring(val)
            else:
                values[idx] = MultiPoly.constant(self.vars, val)
        for exps, coef in self.terms.items():
            term = MultiPoly.constant(self.vars, coef)
            rest = [0] * len(self.vars)
            for idx, e in enumerate(exps):
                if idx in values:
                    term = term * values[idx] ** e
                else:
                    rest[idx] = e
            term = term * MultiPoly(self.vars, {tuple(rest): 1})
            result = result + term
        return result

    def evaluate(self, assignment):
        """Fully evaluate to a Fraction; all variables must be assigned."""
        value = self.substitute(assignment)
        return value.constant_value()

    def rename(self, vars):
        """Reinterpret over a different variable tuple of the same arity."""
        vars = tuple(vars)
        if len(vars) != len(self.vars):
            raise DomainError("arity mismatch in rename")
        return MultiPoly(vars, dict(self.terms))

    # -- univariate support (for the PID x-line) ---------------------------

    def _require_univariate(self):
        if len(self.vars) != 1:
            raise UnsupportedRingError(
                f"operation needs one variable, got {self.vars}"
            )

    def univ_degree(self):
        self._require_univariate()
        if not self.terms:
            return -1
        return max(e[0] for e in self.terms)

    def univ_coeff(self, k):
        self._require_univariate()
        return self.terms.get((k,), Fraction(0))

    def univ_divmod(self, other):
        self._require_univariate()
        other = self._same_ring(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        d = other.univ_degree()
        lead = other.univ_coeff(d)
        rem = dict(self.terms)
        quot = {}
        while rem:
            r = max(e[0] for e in rem)
            if r < d:
                break
            c = rem[(r,)] / lead
            quot[(r - d,)] = c
            for (oe,), oc in other.terms.items():
                key = (r - d + oe,)
                new = rem.get(key, 0) - c * oc
                if new:
                    rem[key] = new
                else:
                    rem.pop(key, None)
        return MultiPoly(self.vars, quot), MultiPoly(self.vars, rem)

    def monic(self):
        self._require_univariate()
        if self.is_zero():
            return self
        lead = self.univ_coeff(self.univ_degree())
        return MultiPoly(self.vars, {e: c / lead for e, c in self.terms.items()})

    def is_monomial(self):
        return len(self.terms) == 1

    # -- serialization ------------------------------------------------------

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MultiPoly({self.vars!r}, {self.to_text()!r})"

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms):
            coef = self.terms[exps]
            coef_s = (
                str(coef.numerator)
                if coef.denominator == 1
                else f"{coef.numerator}/{coef.denominator}"
            )
            factors = [coef_s]
            for name, e in zip(self.vars, exps):
                if e:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)


def colour_ring(r, line=False):
    """Variable tuple for colour polynomials: w1..wr, optionally plus x."""
    vars = tuple(f"w{i}" for i in range(1, r + 1))
    if line:
        vars = vars + ("x",)
    return vars


X_RING = ("x",)


def xpoly(terms):
    """Univariate polynomial in x from an {exponent: coefficient} dict."""
    return MultiPoly(X_RING, {(e,): c for e, c in terms.items()})
