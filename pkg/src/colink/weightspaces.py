"""Weight spaces of tensor products of quantum exterior powers.

The space attached to labels (k_1, .., k_n) has basis all tuples of subsets
S_i of {1..m} with |S_i| = k_i.  The raising/lowering operators act through
a pair of adjacent slots; their q-powers come from the iterated coproduct
over the m rows, which makes every quantum sl_n relation hold identically:

    E_i:  move r from S_{i+1} to S_i,  coefficient q^(|S_i cap [1,r)| - |S_{i+1} cap [1,r)|)
    F_i:  move r from S_i to S_{i+1},  coefficient q^(|S_{i+1} cap (r,m]| - |S_i cap (r,m]|)

Divided powers are exact quotients by balanced quantum factorials.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .errors import DomainError
from .laurent import LaurentPoly, qfact
from .sparse import SparseMatrix


def subsets(m, k):
    """All k-subsets of {1..m} as sorted tuples; empty list out of range."""
    if k < 0 or k > m:
        return []
    return [tuple(c) for c in combinations(range(1, m + 1), k)]


def subset_weight(m, subset):
    """Weight statistic: sum of m+1-2s over s in the subset.

    Summing q^weight over all k-subsets gives the balanced Gaussian
    binomial, so weight spaces have graded dimension prod qbinom(m, k_i).
    """
    return sum(m + 1 - 2 * s for s in subset)


@dataclass(frozen=True)
class WeightSpace:
    m: int
    labels: tuple

    def __post_init__(self):
        for k in self.labels:
            if not 0 <= k <= self.m:
                raise DomainError(f"internal label {k} outside 0..{self.m}")

    @property
    def basis(self):
        return _basis(self.m, self.labels)

    @property
    def dimension(self):
        return len(self.basis)

    def index(self, element):
        return _basis_index(self.m, self.labels)[element]

    def graded_dimension(self):
        """Sum of q^weight over the basis (product of balanced qbinoms)."""
        total = LaurentPoly.zero()
        for element in self.basis:
            w = sum(subset_weight(self.m, s) for s in element)
            total = total + LaurentPoly.q_power(w)
        return total


_BASIS_CACHE = {}


def _basis(m, labels):
    key = (m, labels)
    if key not in _BASIS_CACHE:
        pools = [subsets(m, k) for k in labels]
        _BASIS_CACHE[key] = [tuple(t) for t in product(*pools)]
    return _BASIS_CACHE[key]


_INDEX_CACHE = {}


def _basis_index(m, labels):
    key = (m, labels)
    if key not in _INDEX_CACHE:
        _INDEX_CACHE[key] = {b: i for i, b in enumerate(_basis(m, labels))}
    return _INDEX_CACHE[key]


def weight_space_basis(m, labels):
    """Public constructor; labels may use 0 and m (internal E/F images)."""
    return WeightSpace(m, tuple(labels))


# -- local operators on a pair of slots ----------------------------------------
#
# A local operator is a dict mapping a source pair (S, T) of subsets to a
# dict of target pairs with LaurentPoly coefficients.  Operators on the full
# weight space act through slots (i, i+1) and leave the rest alone.


def _count_below(subset, r):
    return sum(1 for s in subset if s < r)


def _count_above(subset, r):
    return sum(1 for s in subset if s > r)


def local_E(m, a, b):
    """Single raising operator on pairs: (a, b) -> (a+1, b-1)."""
    action = {}
    for S in subsets(m, a):
        set_s = set(S)
        for T in subsets(m, b):
            out = {}
            for r in T:
                if r in set_s:
                    continue
                e = _count_below(S, r) - _count_below(T, r)
                tgt = (
                    tuple(sorted(set_s | {r})),
                    tuple(x for x in T if x != r),
                )
                out[tgt] = out.get(tgt, LaurentPoly.zero()) + LaurentPoly({e: 1})
            action[(S, T)] = out
    return action


def local_F(m, a, b):
    """Single lowering operator on pairs: (a, b) -> (a-1, b+1)."""
    action = {}
    for S in subsets(m, a):
        for T in subsets(m, b):
            set_t = set(T)
            out = {}
            for r in S:
                if r in set_t:
                    continue
                e = _count_above(T, r) - _count_above(S, r)
                tgt = (
                    tuple(x for x in S if x != r),
                    tuple(sorted(set_t | {r})),
                )
                out[tgt] = out.get(tgt, LaurentPoly.zero()) + LaurentPoly({e: 1})
            action[(S, T)] = out
    return action


def local_identity(m, a, b):
    return {
        (S, T): {(S, T): LaurentPoly.one()}
        for S in subsets(m, a)
        for T in subsets(m, b)
    }


def local_zero(m, a, b):
    return {(S, T): {} for S in subsets(m, a) for T in subsets(m, b)}


def compose_local(second, first):
    """(second o first)(v) = second(first(v))."""
    out = {}
    for src, mid in first.items():
        acc = {}
        for pair, coef in mid.items():
            for tgt, coef2 in second.get(pair, {}).items():
                acc[tgt] = acc.get(tgt, LaurentPoly.zero()) + coef * coef2
        out[src] = {k: v for k, v in acc.items() if not v.is_zero()}
    return out


def add_local(op1, op2):
    out = {}
    for src in set(op1) | set(op2):
        acc = dict(op1.get(src, {}))
        for tgt, coef in op2.get(src, {}).items():
            acc[tgt] = acc.get(tgt, LaurentPoly.zero()) + coef
        out[src] = {k: v for k, v in acc.items() if not v.is_zero()}
    return out


def scale_local(op, scalar):
    return {
        src: {tgt: scalar * coef for tgt, coef in row.items()}
        for src, row in op.items()
    }


def local_divided_power(m, a, b, direction, s):
    """E^(s) or F^(s) on pairs, normalized by the balanced [s]!.

    Returns the zero operator when the power exceeds capacity (target label
    outside 0..m).
    """
    if s < 0:
        raise DomainError(f"divided power s={s} must be >= 0")
    if direction == "E":
        target = (a + s, b - s)
        single = local_E
    elif direction == "F":
        target = (a - s, b + s)
        single = local_F
    else:
        raise DomainError(f"direction {direction!r} must be E or F")
    if s == 0:
        return local_identity(m, a, b)
    if not (0 <= target[0] <= m and 0 <= target[1] <= m):
        return local_zero(m, a, b)
    op = local_identity(m, a, b)
    cur = (a, b)
    for _ in range(s):
        op = compose_local(single(m, *cur), op)
        cur = (cur[0] + 1, cur[1] - 1) if direction == "E" else (cur[0] - 1, cur[1] + 1)
    fact = qfact(s)
    return {
        src: {tgt: coef.exact_div(fact) for tgt, coef in row.items()}
        for src, row in op.items()
    }


def local_to_matrix(op, m, src_labels, tgt_labels):
    """Local operator as a SparseMatrix in the canonical pair bases."""
    src = _basis(m, src_labels)
    tgt_index = _basis_index(m, tgt_labels)
    entries = {}
    for j, pair in enumerate(src):
        for target, coef in op.get(pair, {}).items():
            entries[(tgt_index[target], j)] = coef
    return SparseMatrix(len(tgt_index), len(src), entries)


def matrix_to_local(matrix, m, src_labels, tgt_labels):
    src = _basis(m, src_labels)
    tgt = _basis(m, tgt_labels)
    op = {pair: {} for pair in src}
    for (i, j), coef in matrix.entries.items():
        op[src[j]][tgt[i]] = coef
    return op


# -- full-space maps ------------------------------------------------------------


@dataclass
class DividedPowerOp:
    direction: str
    index: int
    power: int

    def __post_init__(self):
        if self.direction not in ("E", "F"):
            raise DomainError("direction must be E or F")
        if self.power < 0:
            raise DomainError("power must be >= 0")


@dataclass
class WeightSpaceMap:
    domain: WeightSpace
    codomain: WeightSpace
    matrix: SparseMatrix


def lift_local(op, space, i, tgt_labels_pair):
    """Lift a local pair operator at slots (i, i+1) to the full space."""
    labels = space.labels
    new_labels = labels[:i] + tuple(tgt_labels_pair) + labels[i + 2 :]
    codomain = WeightSpace(space.m, new_labels)
    tgt_index = _basis_index(space.m, new_labels)
    entries = {}
    for j, element in enumerate(space.basis):
        pair = (element[i], element[i + 1])
        for (s2, t2), coef in op.get(pair, {}).items():
            target = element[:i] + (s2, t2) + element[i + 2 :]
            entries[(tgt_index[target], j)] = coef
    matrix = SparseMatrix(codomain.dimension, space.dimension, entries)
    return WeightSpaceMap(space, codomain, matrix)


def divided_power(op, space):
    """Matrix of E_i^(s) or F_i^(s) on a weight space (spec operation)."""
    i = op.index
    if not 0 <= i <= len(space.labels) - 2:
        raise DomainError(f"strand index {i} out of range")
    a, b = space.labels[i], space.labels[i + 1]
    local = local_divided_power(space.m, a, b, op.direction, op.power)
    s = op.power if op.direction == "E" else -op.power
    target = (a + s, b - s)
    target = (min(max(target[0], 0), space.m), min(max(target[1], 0), space.m))
    return lift_local(local, space, i, target)
