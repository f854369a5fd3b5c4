"""Enumerative checks: point counts of lattice towers and dimension calculus.

Point-count polynomials use the counting Gaussian binomial (nonnegative
coefficients); the balanced convention of the evaluator never mixes in.
Tower specifications transcribe displayed iterated Grassmannian bundles as
(a, b) steps, each contributing a(b-a) to the dimension; the transcriptions
ship as data files so the dimension claims stay reviewable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product

from .errors import BudgetExceededError, DomainError
from .laurent import LaurentPoly, counting_gbinom
from .multipoly import MultiPoly

TOWER_PARAMS = ("k", "l", "m", "s")


def tsym(value):
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, int):
        return MultiPoly.constant(TOWER_PARAMS, value)
    if isinstance(value, str):
        return _parse_poly(value)
    raise DomainError(f"cannot coerce {value!r}")


def _parse_poly(text):
    """Tiny parser for tower entries: sums of <int>*k*l style monomials."""
    total = MultiPoly.zero(TOWER_PARAMS)
    text = text.replace("-", "+-").replace(" ", "")
    for chunk in text.split("+"):
        if not chunk:
            continue
        coeff = 1
        exps = [0, 0, 0, 0]
        for factor in chunk.split("*"):
            if not factor:
                continue
            if factor.startswith("-"):
                coeff *= -1
                factor = factor[1:]
            if not factor:
                continue
            if factor.isdigit():
                coeff *= int(factor)
            else:
                name, power = factor, 1
                if "^" in factor:
                    name, p = factor.split("^")
                    power = int(p)
                if name not in TOWER_PARAMS:
                    raise DomainError(f"unknown tower parameter {name!r}")
                exps[TOWER_PARAMS.index(name)] += power
        total = total + MultiPoly(TOWER_PARAMS, {tuple(exps): coeff})
    return total


@dataclass
class TowerSpec:
    """Iterated bundle: each step chooses an a-dim subspace in a b-dim space."""

    name: str
    steps: list  # of (a, b) MultiPoly pairs
    claimed_dimension: MultiPoly = None
    note: str = ""

    def dimension(self):
        total = MultiPoly.zero(TOWER_PARAMS)
        for a, b in self.steps:
            total = total + a * (b - a)
        return total

    def matches_claim(self):
        if self.claimed_dimension is None:
            return True
        return self.dimension() == self.claimed_dimension


def tower_dimension(spec):
    """Spec operation: sum of a(b-a) over the steps, exact in (k,l,m,s)."""
    return spec.dimension()


def parse_tower(text, name="tower"):
    steps = []
    claim = None
    note = ""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("claim"):
            claim = tsym(line.split("=", 1)[1].strip())
        elif line.startswith("note"):
            note = line.split("=", 1)[1].strip()
        elif line.startswith("step"):
            body = line[4:].strip()
            parts = dict(p.split("=", 1) for p in body.split())
            steps.append((tsym(parts["a"]), tsym(parts["b"])))
        else:
            raise DomainError(f"bad tower line {raw!r}")
    return TowerSpec(name, steps, claim, note)


def _towers_dir():
    return os.path.join(os.path.dirname(__file__), "towers")


def load_tower(name):
    path = os.path.join(_towers_dir(), name + ".tower")
    with open(path, encoding="utf-8") as fh:
        return parse_tower(fh.read(), name)


def available_towers():
    return sorted(
        fn[: -len(".tower")]
        for fn in os.listdir(_towers_dir())
        if fn.endswith(".tower")
    )


# -- Poincare polynomials ---------------------------------------------------------


def poincare_Y(m, labels):
    """Counting polynomial of the lattice tower: product of q-binomials."""
    total = LaurentPoly.one()
    for k in labels:
        if not 1 <= k <= m - 1:
            raise DomainError(f"label {k} outside 1..{m - 1}")
        total = total * counting_gbinom(m, k)
    return total


# -- brute-force point counts over small finite fields -----------------------------


@dataclass
class LatticeConfig:
    """Chains L_0 < L_1 < ... < L_n in the truncated lattice model over F_p.

    The ambient space is F_p^(m*depth) with the nilpotent shift z acting by
    m parallel Jordan blocks of size depth; constraints are dim(L_i/L_i-1)
    = labels[i] and z L_i inside L_i-1.
    """

    p: int
    m: int
    labels: tuple
    budget: int = 2_000_000

    def __post_init__(self):
        self.labels = tuple(self.labels)
        if self.p not in (2, 3, 5, 7):
            raise DomainError("field size must be one of 2, 3, 5, 7")


def _rref(rows, p):
    """Row-reduce a list of F_p vectors; returns canonical basis tuple."""
    rows = [list(r) for r in rows]
    n = len(rows[0]) if rows else 0
    pivots = []
    rank = 0
    for col in range(n):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    return tuple(tuple(r) for r in rows[:rank])


def _span_contains(basis, vector, p):
    rows = [list(b) for b in basis] + [list(vector)]
    return len(_rref(rows, p)) == len(basis)


def _all_vectors(dim, p):
    return product(range(p), repeat=dim)


def _rref_matrices(k, q, p):
    """All k x q matrices in reduced row-echelon form of rank k."""
    from itertools import combinations

    for pivots in combinations(range(q), k):
        free_positions = []
        for row, piv in enumerate(pivots):
            for col in range(piv + 1, q):
                if col not in pivots[row + 1 :]:
                    free_positions.append((row, col))
        for values in product(range(p), repeat=len(free_positions)):
            mat = [[0] * q for _ in range(k)]
            for row, piv in enumerate(pivots):
                mat[row][piv] = 1
            for (row, col), v in zip(free_positions, values):
                mat[row][col] = v
            yield mat


def _subspaces_containing(base_basis, ambient_basis, k, p, budget_ticker):
    """All subspaces W with base <= W <= ambient and dim W/base = k.

    Parameterized without duplicates by reduced echelon matrices over a
    complement of the base inside the ambient space.
    """
    base = [list(b) for b in base_basis]
    if k == 0:
        yield _rref(base, p) if base else tuple()
        return
    # complement of base inside ambient: ambient vectors with nonpivot rref
    complement = []
    current = _rref(base, p) if base else tuple()
    for v in ambient_basis:
        trial = _rref([list(r) for r in current] + [list(v)], p)
        if len(trial) > len(current):
            complement.append(list(v))
            current = trial
    q = len(complement)
    if q < k:
        return
    n_coords = len(ambient_basis[0]) if ambient_basis else 0
    for mat in _rref_matrices(k, q, p):
        budget_ticker[0] += 1
        if budget_ticker[0] > budget_ticker[1]:
            raise BudgetExceededError(
                "enumeration budget exceeded", estimate=budget_ticker[0]
            )
        vectors = [
            [sum(c * complement[i][j] for i, c in enumerate(row)) % p
             for j in range(n_coords)]
            for row in mat
        ]
        yield _rref(base + vectors, p)


def count_points(config):
    """Exhaustive count of lattice chains satisfying the z-constraints."""
    p, m = config.p, config.m
    n = len(config.labels)
    depth = n  # L_n/L_0 embeds in z^-n L_0 / L_0
    if depth == 0:
        return 1
    dim = m * depth
    size_estimate = 1
    for k in config.labels:
        size_estimate *= p ** (dim * k)
    ticker = [0, config.budget]

    # z acts on F_p^(m*depth): m blocks of size depth, shifting towards 0
    def z_apply(vec):
        out = [0] * dim
        for block in range(m):
            for level in range(1, depth):
                out[block * depth + level - 1] = vec[block * depth + level]
        return out

    def z_stable_in(basis_w, basis_v):
        # z(basis_v) inside span(basis_w)
        for v in basis_v:
            if not _span_contains(basis_w, z_apply(v), p):
                return False
        return True

    def extend(chain_basis, remaining):
        if not remaining:
            return 1
        k = remaining[0]
        total = 0
        # ambient: z^{-1}(L_prev) inside F_p^dim
        ambient = _preimage_basis(chain_basis, p, dim, z_apply)
        for rows in _subspaces_containing(chain_basis, ambient, k, p, ticker):
            total += extend(rows, remaining[1:])
        return total

    return extend(tuple(), tuple(config.labels))


def _preimage_basis(sub_basis, p, dim, z_apply):
    """Basis of the preimage z^-1(span(sub_basis)) in F_p^dim."""
    # solve: z(v) in span(sub); linear conditions on v
    sub = [list(b) for b in sub_basis]
    sub_r = _rref(sub, p) if sub else tuple()
    # build matrix of the conditions: complete sub to describe membership
    # by elimination: v such that rref(sub + [z v]) has rank len(sub)
    basis = []
    for idx in range(dim):
        e = [0] * dim
        e[idx] = 1
        basis.append(e)
    # brute linear algebra: the map v -> z(v) mod span(sub) must vanish;
    # compute its matrix in terms of a complement of sub
    # representation: coordinates of z(v) reduced against sub_r
    def reduce_vec(vec):
        vec = list(vec)
        for row in sub_r:
            piv = next((j for j, x in enumerate(row) if x), None)
            if piv is not None and vec[piv]:
                f = vec[piv]
                vec = [(a - f * b) % p for a, b in zip(vec, row)]
        return vec

    conditions = [reduce_vec(z_apply(e)) for e in basis]
    # kernel of the condition matrix (rows indexed by ambient coords)
    mat = [list(col) for col in zip(*conditions)] if conditions else []
    kernel = _nullspace(mat, dim, p)
    # preimage = kernel (+) nothing else; ensure sub itself is inside
    out = _rref([list(v) for v in kernel], p)
    return out


def _nullspace(mat, n_vars, p):
    rows = [list(r) for r in mat if any(x % p for x in r)]
    rows = [list(r) for r in _rref(rows, p)]
    pivots = []
    for r in rows:
        piv = next((j for j, x in enumerate(r) if x), None)
        pivots.append(piv)
    free = [j for j in range(n_vars) if j not in pivots]
    basis = []
    for f in free:
        vec = [0] * n_vars
        vec[f] = 1
        for r, piv in zip(rows, pivots):
            vec[piv] = (-r[f]) % p
        basis.append(vec)
    return basis


def count_matches_poincare(p, m, labels, budget=2_000_000):
    config = LatticeConfig(p, m, tuple(labels), budget)
    return count_points(config) == poincare_Y(m, labels).evaluate(p)
