"""The decategorified tangle functor: weight-space matrices for generators.

Crossings are divided-power sums (one per component of the correspondence),
caps/cups are the exterior-power pairings.  The q-power conventions not
fixed by representation theory are pinned by the relation suite; see the
CONVENTION block.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, DomainError, NotClosedError, TangleError
from .homology import laurent_det, laurent_inverse
from .laurent import LaurentPoly, qbinom
from .sparse import SparseMatrix
from .tangles import (
    CROSSING_KINDS,
    crossing_sign,
    is_inverse_kind,
    trace_word,
    validate_word,
)
from .weightspaces import (
    WeightSpace,
    WeightSpaceMap,
    add_local,
    compose_local,
    lift_local,
    local_divided_power,
    local_identity,
    local_to_matrix,
    local_zero,
    matrix_to_local,
    scale_local,
    subset_weight,
    subsets,
)

# ---------------------------------------------------------------------------
# CONVENTION block.  The divided-power sum below reproduces the convolution
# over correspondence components; the residual overall monomial on the
# crossing and the splitting of cap/cup coefficients are not determined by
# the quantum sl_n relations alone.  They are pinned, uniquely up to
# conjugation, by demanding simultaneously: the zig-zag identities, circle
# value = balanced Gaussian binomial, the curl relation with equivariant
# shift, the pitchfork relations, and the braid relation.  Do not edit one
# of these functions without re-running the relation suite.
# ---------------------------------------------------------------------------


def _class_twist(m, k, l, parallel):
    """Monomial carried by a plain crossing beyond the divided-power sum.

    The q-power is the bottom-left label; the sign separates the two
    orientation classes, with the parallel class (x1/x4) opposite to the
    antiparallel one (x2/x3), flipping with the parity of m.  The one
    residual sign the curl and fork relations leave free sits on the
    parallel class at equal half-rank labels when 4 | m; the relation
    suite fixes it as below for every rank up to 4.
    """
    exponent = m + (1 if parallel else 0)
    if parallel and k == l and 2 * k == m and m % 4 == 0:
        exponent += 1
    return LaurentPoly({k: (-1) ** exponent})


def _cap_coeff(m, k, subset):
    """Coefficient of v_S (x) v_{S^c} under the cap, first label k."""
    w = subset_weight(m, subset)
    parity = (k * (m + 1)) % 2
    return LaurentPoly.q_power((w + parity) // 2)


def _cup_coeff(m, k, subset):
    """Coefficient of v_S (x) v_{S^c} created by the cup, first label k."""
    w = subset_weight(m, subset)
    parity = (k * (m + 1)) % 2
    return LaurentPoly.q_power((w - parity) // 2)


PARALLEL_KINDS = {"x1", "x4", "x1inv", "x4inv"}


# kind-dependent equivariant shifts on the plain crossing, as functions of
# the bottom labels (k, l); inverse kinds take exact matrix inverses.
def _kind_shift(kind, k, l, m):
    return {"x1": 0, "x2": -k, "x3": -m + l, "x4": l - k}[kind]


# ---------------------------------------------------------------------------


_BRAID_CACHE = {}
_CAPCUP_CACHE = {}


def clear_caches():
    _BRAID_CACHE.clear()
    _CAPCUP_CACHE.clear()


def _braid_base_local(m, k, l):
    """Alternating divided-power sum for the plain crossing, labels (k, l).

    For k <= l the correspondence components are indexed by s = 0..N-l with
    N = min(k+l, m); each contributes (-q)^s F^(s) followed by E^(l-k+s),
    with the overall q^-min(k,l) prefactor.  For k > l the mirrored route
    through (k+s, l-s) is used.
    """
    total = local_zero(m, k, l)
    if k <= l:
        for s in range(0, min(k, m - l) + 1):
            down = local_divided_power(m, k, l, "F", s)
            up = local_divided_power(m, k - s, l + s, "E", l - k + s)
            term = compose_local(up, down)
            coef = LaurentPoly.q_power(s, (-1) ** s)
            total = add_local(total, scale_local(term, coef))
    else:
        for s in range(0, min(l, m - k) + 1):
            up = local_divided_power(m, k, l, "E", s)
            down = local_divided_power(m, k + s, l - s, "F", k - l + s)
            term = compose_local(down, up)
            coef = LaurentPoly.q_power(s, (-1) ** s)
            total = add_local(total, scale_local(term, coef))
    return scale_local(total, LaurentPoly.q_power(-min(k, l)))


def braid_local(m, k, l, kind):
    """Local crossing operator on pairs, labels (k, l) at the bottom."""
    key = (m, k, l, kind)
    if key in _BRAID_CACHE:
        return _BRAID_CACHE[key]
    if kind in ("x1", "x2", "x3", "x4"):
        base = _braid_base_local(m, k, l)
        shift = _kind_shift(kind, k, l, m)
        twist = _class_twist(m, k, l, kind in PARALLEL_KINDS)
        op = scale_local(base, LaurentPoly.q_power(shift) * twist)
    elif kind in ("x1inv", "x2inv", "x3inv", "x4inv"):
        plain = braid_local(m, l, k, kind[:-3])
        matrix = local_to_matrix(plain, m, (l, k), (k, l))
        det = laurent_det(matrix)
        if not det.is_monomial():
            raise ConsistencyError(
                f"crossing at (m={m}, {l},{k}) is singular or non-unit: det={det}"
            )
        inv = laurent_inverse(matrix)
        op = matrix_to_local(inv, m, (k, l), (l, k))
    else:
        raise DomainError(f"unknown crossing kind {kind!r}")
    _BRAID_CACHE[key] = op
    return op


def braid_operator(m, k, l, kind):
    """Crossing matrix on the two-strand weight space (spec operation)."""
    space = WeightSpace(m, (k, l))
    op = braid_local(m, k, l, kind)
    return lift_local(op, space, 0, (l, k))


def cupcap_local(m, k, kind):
    """Local cap (pairs -> empty) or cup (empty -> pairs), first label k."""
    key = (m, k, kind)
    if key in _CAPCUP_CACHE:
        return _CAPCUP_CACHE[key]
    if not 1 <= k <= m - 1:
        raise DomainError(f"cap/cup label {k} outside 1..{m - 1}")
    if kind == "cap":
        op = {}
        for S in subsets(m, k):
            comp = tuple(sorted(set(range(1, m + 1)) - set(S)))
            for T in subsets(m, m - k):
                if T == comp:
                    op[(S, T)] = {(): _cap_coeff(m, k, S)}
                else:
                    op[(S, T)] = {}
    elif kind == "cup":
        row = {}
        for S in subsets(m, k):
            comp = tuple(sorted(set(range(1, m + 1)) - set(S)))
            row[(S, comp)] = _cup_coeff(m, k, S)
        op = {(): row}
    else:
        raise DomainError(f"kind {kind!r} must be cap or cup")
    _CAPCUP_CACHE[key] = op
    return op


def cupcap_map(m, labels, i, kind):
    """Cap/cup as a map between full weight spaces (spec operation)."""
    labels = tuple(labels)
    space = WeightSpace(m, labels)
    if kind == "cap":
        if labels[i] + labels[i + 1] != m:
            raise DomainError(
                f"cap labels ({labels[i]},{labels[i + 1]}) do not sum to m={m}"
            )
        op = cupcap_local(m, labels[i], "cap")
        new_labels = labels[:i] + labels[i + 2 :]
        codomain = WeightSpace(m, new_labels)
        entries = {}
        tgt_index = {b: n for n, b in enumerate(codomain.basis)}
        for j, element in enumerate(space.basis):
            pair = (element[i], element[i + 1])
            for tgt, coef in op.get(pair, {}).items():
                target = element[:i] + element[i + 2 :]
                entries[(tgt_index[target], j)] = coef
        return WeightSpaceMap(
            space, codomain, SparseMatrix(codomain.dimension, space.dimension, entries)
        )
    if kind == "cup":
        # i is the insertion slot; gen.label gives the new left label
        raise DomainError("use cup_map(m, labels, i, k) for cups")
    raise DomainError(f"kind {kind!r} must be cap or cup")


def cup_map(m, labels, i, k):
    """Cup inserting labels (k, m-k) at slot i, as a full weight-space map."""
    labels = tuple(labels)
    space = WeightSpace(m, labels)
    new_labels = labels[:i] + (k, m - k) + labels[i:]
    codomain = WeightSpace(m, new_labels)
    op = cupcap_local(m, k, "cup")
    entries = {}
    tgt_index = {b: n for n, b in enumerate(codomain.basis)}
    for j, element in enumerate(space.basis):
        for (s2, t2), coef in op[()].items():
            target = element[:i] + (s2, t2) + element[i:]
            entries[(tgt_index[target], j)] = coef
    return WeightSpaceMap(
        space, codomain, SparseMatrix(codomain.dimension, space.dimension, entries)
    )


# -- applying words to weight-space states -----------------------------------


def apply_gen_to_state(state, m, labels, gen):
    """Push a state dict {basis tuple: LaurentPoly} through one generator."""
    i = gen.pos
    if gen.kind in CROSSING_KINDS:
        k, l = labels[i], labels[i + 1]
        op = braid_local(m, k, l, gen.kind)
        new_labels = labels[:i] + (l, k) + labels[i + 2 :]
        out = {}
        for element, coef in state.items():
            pair = (element[i], element[i + 1])
            for (s2, t2), c in op.get(pair, {}).items():
                target = element[:i] + (s2, t2) + element[i + 2 :]
                new = out.get(target, LaurentPoly.zero()) + coef * c
                if new.is_zero():
                    out.pop(target, None)
                else:
                    out[target] = new
        return out, new_labels
    if gen.kind == "cap":
        k = labels[i]
        if k + labels[i + 1] != m:
            raise DomainError("cap labels do not sum to m")
        op = cupcap_local(m, k, "cap")
        new_labels = labels[:i] + labels[i + 2 :]
        out = {}
        for element, coef in state.items():
            pair = (element[i], element[i + 1])
            row = op.get(pair, {})
            if row:
                target = element[:i] + element[i + 2 :]
                new = out.get(target, LaurentPoly.zero()) + coef * row[()]
                if new.is_zero():
                    out.pop(target, None)
                else:
                    out[target] = new
        return out, new_labels
    if gen.kind == "cup":
        k = gen.label
        op = cupcap_local(m, k, "cup")
        new_labels = labels[:i] + (k, m - k) + labels[i:]
        out = {}
        for element, coef in state.items():
            for (s2, t2), c in op[()].items():
                target = element[:i] + (s2, t2) + element[i:]
                out[target] = coef * c
        return out, new_labels
    raise DomainError(f"unknown generator kind {gen.kind!r}")


def word_matrix(word):
    """Matrix of a validated word between its endpoint weight spaces."""
    slices = validate_word(word)
    m = word.domain.m
    domain = WeightSpace(m, word.domain.labels)
    codomain = WeightSpace(m, slices[-1].labels)
    tgt_index = {b: n for n, b in enumerate(codomain.basis)}
    entries = {}
    for j, element in enumerate(domain.basis):
        state = {element: LaurentPoly.one()}
        labels = word.domain.labels
        for gen in word.gens:
            state, labels = apply_gen_to_state(state, m, labels, gen)
        for target, coef in state.items():
            entries[(tgt_index[target], j)] = coef
    return WeightSpaceMap(
        domain, codomain, SparseMatrix(codomain.dimension, domain.dimension, entries)
    )


def evaluate_link(diagram):
    """Coloured link polynomial of a closed diagram (all colours equal).

    Composes the generator matrices bottom to top and applies the writhe
    normalization (-1)^(sum_k d_k k(m-k)) q^(-sum_k d_k k(m-k)).
    """
    word = diagram.word
    if not word.is_closed():
        raise NotClosedError("evaluate_link needs a closed diagram")
    values = set(diagram.colour_values.values()) if diagram.colour_values else set()
    if len(values) > 1:
        raise TangleError(
            "evaluate_link is the equal-colours invariant; "
            "distinct colours belong to the deformed homology"
        )
    m = diagram.m
    state = {(): LaurentPoly.one()}
    labels = ()
    for gen in word.gens:
        state, labels = apply_gen_to_state(state, m, labels, gen)
    raw = state.get((), LaurentPoly.zero())
    from .tangles import writhe_by_label

    shift = sum(d * k * (m - k) for k, d in writhe_by_label(diagram).items())
    sign = -1 if shift % 2 else 1
    return raw * LaurentPoly({-shift: sign})


# -- relation verification -----------------------------------------------------


@dataclass
class RelationResult:
    relation: str
    detail: str
    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


def maps_equal(map1, map2, scale=None):
    """Exact equality of two WeightSpaceMaps, optionally map1 = scale*map2.

    Returns (ok, witness) where witness names a basis element of the domain
    on which the two sides differ.
    """
    lhs = map1.matrix
    rhs = map2.matrix if scale is None else map2.matrix.scale(scale)
    if lhs.rows != rhs.rows or lhs.cols != rhs.cols:
        return False, "shape mismatch"
    diff = lhs - rhs
    if diff.is_zero():
        return True, None
    (i, j) = next(iter(diff.entries))
    return False, map1.domain.basis[j]


# enumeration helpers for relation instances


def _plain_kind(pattern):
    from .tangles import KIND_PATTERN

    for kind, pat in KIND_PATTERN.items():
        if pat == pattern and not kind.endswith("inv"):
            return kind
    raise DomainError(f"no plain kind with pattern {pattern}")


def _inv_kind(pattern):
    from .tangles import KIND_PATTERN

    for kind, pat in KIND_PATTERN.items():
        if pat == pattern and kind.endswith("inv"):
            return kind
    raise DomainError(f"no inverse kind with pattern {pattern}")


def _try_word(domain, gens):
    from .tangles import TangleWord

    word = TangleWord(domain, tuple(gens))
    try:
        word.slices()
    except TangleError:
        return None
    return word


def verify_relation(relation, m, labels, orients=None, chirality="plain"):
    """Check one relation instance as an exact matrix identity.

    Relations: "R0" (zig-zag), "R1" (curl with equivariant shift), "R2"
    (crossing times inverse), "R3" (braid relation), "PF" (pitchfork),
    "HX" (height exchange).  ``labels``/``orients`` describe the bottom
    slice; instances that do not validate are reported as inapplicable.
    """
    from .tangles import DOWN, UP, Generator, SliceObject

    checks = {
        "R0": _check_r0,
        "R1": _check_r1,
        "R2": _check_r2,
        "R3": _check_r3,
        "PF": _check_pf,
        "HX": _check_hx,
    }
    if relation not in checks:
        raise DomainError(f"unknown relation {relation!r}")
    if orients is None:
        orients = tuple(UP for _ in labels)
    domain = SliceObject(m, tuple(labels), tuple(0 for _ in labels), tuple(orients))
    return checks[relation](domain, chirality)


def _result(relation, detail, pair):
    if pair is None:
        return RelationResult(relation, detail, True, "inapplicable")
    ok, witness = pair
    return RelationResult(relation, detail, ok, witness)


def _check_r0(domain, chirality):
    from .tangles import Generator

    # zig-zag through strand 0: cup right then cap left, and the mirror
    results = []
    obj = domain
    if len(obj) < 1:
        return RelationResult("R0", "needs one strand", True, "inapplicable")
    k = obj.labels[0]
    m = obj.m
    one = Generator("cup", 1, label=m - k, colour=obj.colours[0], orient=-obj.orients[0])
    lhs = _try_word(obj, [one, Generator("cap", 0)])
    if lhs is None:
        return RelationResult("R0", "invalid instance", False, "validation")
    ident = word_matrix(_try_word(obj, []))
    ok, witness = maps_equal(word_matrix(lhs), ident)
    if not ok:
        return RelationResult("R0", "cup-right cap-left", False, witness)
    two = Generator("cup", 0, label=k, colour=obj.colours[0], orient=obj.orients[0])
    rhs = _try_word(obj, [two, Generator("cap", 1)])
    ok2, witness2 = maps_equal(word_matrix(rhs), ident)
    return RelationResult("R0", "both zig-zags", ok and ok2, witness2)


def _check_r1(domain, chirality):
    from .tangles import Generator, KIND_PATTERN

    obj = domain
    if len(obj) != 2 or obj.labels[0] + obj.labels[1] != obj.m:
        return RelationResult("R1", "needs complementary labels", True, "inapplicable")
    if obj.orients[0] == obj.orients[1]:
        return RelationResult("R1", "needs antiparallel strands", True, "inapplicable")
    m, k = obj.m, obj.labels[0]
    K = k * (m - k)
    pattern = obj.orients
    kind = _plain_kind(pattern) if chirality == "plain" else _inv_kind(pattern)
    positive = kind in ("x2", "x3")
    expected = LaurentPoly({K if positive else -K: (-1) ** K})
    lhs = _try_word(obj, [Generator(kind, 0), Generator("cap", 0)])
    base = _try_word(obj, [Generator("cap", 0)])
    if lhs is None or base is None:
        return RelationResult("R1", "invalid instance", True, "inapplicable")
    ok, witness = maps_equal(word_matrix(lhs), word_matrix(base), scale=expected)
    return RelationResult("R1", f"{kind} curl", ok, witness)


def _check_r2(domain, chirality):
    from .tangles import Generator, inverse_kind

    obj = domain
    if len(obj) != 2:
        return RelationResult("R2", "needs two strands", True, "inapplicable")
    pattern = obj.orients
    kind = _plain_kind(pattern) if chirality == "plain" else _inv_kind(pattern)
    word = _try_word(obj, [Generator(kind, 0), Generator(inverse_kind(kind), 0)])
    if word is None:
        return RelationResult("R2", "invalid instance", True, "inapplicable")
    ident = word_matrix(_try_word(obj, []))
    ok, witness = maps_equal(word_matrix(word), ident)
    return RelationResult("R2", f"{kind} then inverse", ok, witness)


def _check_r3(domain, chirality):
    from .tangles import Generator

    obj = domain
    if len(obj) != 3:
        return RelationResult("R3", "needs three strands", True, "inapplicable")
    table = _plain_kind if chirality == "plain" else _inv_kind

    def build(first_pos):
        cur = obj
        gens = []
        for pos in (first_pos, 1 - first_pos, first_pos):
            kind = table((cur.orients[pos], cur.orients[pos + 1]))
            gens.append(Generator(kind, pos))
            cur = cur.swap(pos)
        return _try_word(obj, gens)

    lhs, rhs = build(0), build(1)
    if lhs is None or rhs is None:
        return RelationResult("R3", "invalid instance", True, "inapplicable")
    ok, witness = maps_equal(word_matrix(lhs), word_matrix(rhs))
    return RelationResult("R3", f"{chirality} braid move", ok, witness)


def _check_pf(domain, chirality):
    from .tangles import Generator

    obj = domain
    if len(obj) != 3:
        return RelationResult("PF", "needs three strands", True, "inapplicable")
    t1 = _plain_kind if chirality == "plain" else _inv_kind
    t2 = _inv_kind if chirality == "plain" else _plain_kind
    found = False
    for (p_cross, p_cap), (q_cross, q_cap) in (((0, 1), (1, 0)), ((1, 0), (0, 1))):
        try:
            k1 = t1((obj.orients[p_cross], obj.orients[p_cross + 1]))
            k2 = t2((obj.orients[q_cross], obj.orients[q_cross + 1]))
        except DomainError:
            continue
        lhs = _try_word(obj, [Generator(k1, p_cross), Generator("cap", p_cap)])
        rhs = _try_word(obj, [Generator(k2, q_cross), Generator("cap", q_cap)])
        if lhs is None or rhs is None or lhs.codomain != rhs.codomain:
            continue
        found = True
        ok, witness = maps_equal(word_matrix(lhs), word_matrix(rhs))
        if not ok:
            return RelationResult("PF", f"{k1} vs {k2}", False, witness)
    if not found:
        return RelationResult("PF", "no capped instance", True, "inapplicable")
    return RelationResult("PF", "fork slides", True, None)


def _check_hx(domain, chirality):
    from .tangles import Generator

    obj = domain
    if len(obj) < 4:
        return RelationResult("HX", "needs four strands", True, "inapplicable")
    kind_a = _plain_kind((obj.orients[0], obj.orients[1]))
    kind_b = _plain_kind((obj.orients[2], obj.orients[3]))
    lhs = _try_word(obj, [Generator(kind_a, 0), Generator(kind_b, 2)])
    rhs = _try_word(obj, [Generator(kind_b, 2), Generator(kind_a, 0)])
    if lhs is None or rhs is None:
        return RelationResult("HX", "invalid instance", True, "inapplicable")
    ok, witness = maps_equal(word_matrix(lhs), word_matrix(rhs))
    return RelationResult("HX", "distant crossings commute", ok, witness)


def relation_suite(m, max_strands=4, progress=None):
    """Every instantiable relation on up to ``max_strands`` strands.

    Yields RelationResult objects; exact equality demanded throughout.
    """
    from itertools import product as iproduct

    from .tangles import DOWN, UP

    labels_range = range(1, m)
    for k in labels_range:
        for o in (UP, DOWN):
            yield verify_relation("R0", m, (k,), (o,))
    for k in labels_range:
        for orients in ((UP, DOWN), (DOWN, UP)):
            for chir in ("plain", "inv"):
                yield verify_relation("R1", m, (k, m - k), orients, chir)
    for labels in iproduct(labels_range, repeat=2):
        for orients in iproduct((UP, DOWN), repeat=2):
            for chir in ("plain", "inv"):
                yield verify_relation("R2", m, labels, orients, chir)
    for labels in iproduct(labels_range, repeat=3):
        for orients in iproduct((UP, DOWN), repeat=3):
            for chir in ("plain", "inv"):
                yield verify_relation("R3", m, labels, orients, chir)
                yield verify_relation("PF", m, labels, orients, chir)
    if max_strands >= 4:
        # distant commutation is structural; sample rather than sweep the
        # full 4-strand grid, whose weight spaces dwarf the other checks
        samples = {(k1, k2, k2, k1) for k1 in labels_range for k2 in labels_range}
        samples |= {(k, k, k, k) for k in labels_range}
        for labels in sorted(samples):
            for orients in ((UP, UP, UP, UP), (UP, DOWN, DOWN, UP)):
                yield verify_relation("HX", m, labels, orients)
