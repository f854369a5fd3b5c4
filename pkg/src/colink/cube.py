"""Cube of resolutions for m=2 links over colour polynomial rings.

Chain groups are free modules over Q[w_1..w_r] with one tensor factor
{1, X} per circle of each resolution; the deformed differential adds the
reversed elementary cobordism at each crossing, weighted by the colour
difference of the two strands crossing there.  Gradings: a vertex v has
homological degree |v| - n_minus and its generators sit in q-degree
(#1 - #X) + |v| + n_plus - 2 n_minus; colour variables have q-degree 2,
so the deformed differential is q-homogeneous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import ConsistencyError, DomainError, TangleError
from .kauffman import PDCode
from .multipoly import MultiPoly, colour_ring
from .sparse import SparseMatrix


def _resolution_circles(crossings, bits, all_edges):
    parent = {e: e for e in all_edges}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for (a, b, c, d), bit in zip(crossings, bits):
        if bit == 0:
            union(a, b)
            union(c, d)
        else:
            union(a, d)
            union(b, c)
    circles = {}
    for e in all_edges:
        circles.setdefault(find(e), set()).add(e)
    return sorted((frozenset(s) for s in circles.values()), key=min)


@dataclass
class CubeComplex:
    """Static cube data for one diagram."""

    n: int
    signs: list
    crossing_components: list  # (over_component, under_component)
    n_components: int
    free_circles: int
    vertices: dict  # bits -> list of circles (frozensets of edges)
    generators: list  # (bits, labels) with labels[i] in {1, 0meaningX}
    index: dict  # generator -> position
    by_hq: dict  # (h, q) -> list of indices
    edges: list  # (src_idx, dst_idx, sign, crossing, kind) kind merge/split
    n_plus: int = 0
    n_minus: int = 0

    def h_of(self, bits):
        return sum(bits) - self.n_minus

    def q_of(self, bits, labels):
        ones = sum(1 for l in labels if l == 1)
        exes = len(labels) - ones
        return (ones - exes) + sum(bits) + self.n_plus - 2 * self.n_minus

    def total_rank(self):
        return len(self.generators)


def cube_from_pd(pd, crossing_components=None, free_circles=0, n_components=None):
    """Build the cube from a PD code (labels all 1, m = 2)."""
    if isinstance(pd, (list, tuple)):
        pd = PDCode(pd)
    signs = pd.signs()
    if crossing_components is None:
        crossing_components = pd.crossing_components()
    if n_components is None:
        n_components = pd.n_components() + free_circles
    n = len(pd.crossings)
    all_edges = pd.edges
    n_plus = sum(1 for s in signs if s > 0)
    n_minus = n - n_plus

    vertices = {}
    for bits in product((0, 1), repeat=n):
        vertices[bits] = _resolution_circles(pd.crossings, bits, all_edges)

    generators = []
    for bits, circles in vertices.items():
        k = len(circles) + free_circles
        for labels in product((1, 0), repeat=k):
            generators.append((bits, labels))
    index = {g: i for i, g in enumerate(generators)}

    cube = CubeComplex(
        n=n,
        signs=signs,
        crossing_components=list(crossing_components),
        n_components=n_components,
        free_circles=free_circles,
        vertices=vertices,
        generators=generators,
        index=index,
        by_hq={},
        edges=[],
        n_plus=n_plus,
        n_minus=n_minus,
    )
    for i, (bits, labels) in enumerate(generators):
        key = (cube.h_of(bits), cube.q_of(bits, labels))
        cube.by_hq.setdefault(key, []).append(i)
    cube.edges = _cube_edges(cube)
    return cube


def cube_from_diagram(diagram):
    """Cube of a closed diagram; crossingless components become free circles."""
    if diagram.m != 2:
        raise DomainError("the combinatorial cube exists for m = 2 only")
    for comp, label in diagram.trace.component_labels.items():
        if label != 1:
            raise DomainError("cube needs all labels 1")
    crossed = {r.over_component for r in diagram.trace.crossings}
    crossed |= {r.under_component for r in diagram.trace.crossings}
    free = diagram.n_components - len(crossed)
    if not diagram.trace.crossings:
        empty = PDCode([])
        return cube_from_pd(
            empty,
            crossing_components=[],
            free_circles=free,
            n_components=diagram.n_components,
        )
    from .parsing import word_to_pd

    pd = word_to_pd_restricted(diagram)
    comps = [(r.over_component, r.under_component) for r in diagram.trace.crossings]
    return cube_from_pd(
        pd,
        crossing_components=comps,
        free_circles=free,
        n_components=diagram.n_components,
    )


def word_to_pd_restricted(diagram):
    """PD of the crossed part of a diagram (free circles dropped)."""
    from .parsing import word_to_pd
    from .tangles import Generator, LinkDiagram, SliceObject, TangleWord

    crossed = {r.over_component for r in diagram.trace.crossings}
    crossed |= {r.under_component for r in diagram.trace.crossings}
    if len(crossed) == diagram.n_components:
        return word_to_pd(diagram)
    # rebuild the word without the generators of crossingless components;
    # crossing order is preserved, keeping the trace alignment intact
    comp_of = diagram.trace.component_of_segment
    fresh = iter(range(10 ** 9))
    ids = []
    keep = []
    for gen in diagram.word.gens:
        if gen.kind == "cup":
            sa, sb = next(fresh), next(fresh)
            comp = comp_of[sa]
            ids[gen.pos : gen.pos] = [(sa, comp), (sb, comp)]
            if comp in crossed:
                drop = sum(1 for (_, c) in ids[: gen.pos] if c not in crossed)
                keep.append(
                    Generator("cup", gen.pos - drop, label=gen.label,
                              colour=gen.colour, orient=gen.orient)
                )
        elif gen.kind == "cap":
            (_, ca) = ids[gen.pos]
            if ca in crossed:
                drop = sum(1 for (_, c) in ids[: gen.pos] if c not in crossed)
                keep.append(Generator("cap", gen.pos - drop))
            del ids[gen.pos : gen.pos + 2]
        else:
            ids[gen.pos], ids[gen.pos + 1] = ids[gen.pos + 1], ids[gen.pos]
            drop = sum(1 for (_, c) in ids[: gen.pos] if c not in crossed)
            keep.append(Generator(gen.kind, gen.pos - drop))
    word = TangleWord(SliceObject(2), tuple(keep))
    return word_to_pd(LinkDiagram(word))


def _circle_key(circle):
    return min(circle)


def _cube_edges(cube):
    """Forward edges with cube signs and merge/split bookkeeping.

    Each edge record: (crossing c, source bits, target bits, sign,
    source-circle indices, target-circle indices involved)."""
    edges = []
    for bits in cube.vertices:
        for c in range(cube.n):
            if bits[c] == 1:
                continue
            target = bits[:c] + (1,) + bits[c + 1 :]
            sign = (-1) ** sum(bits[:c])
            src_circ = cube.vertices[bits]
            dst_circ = cube.vertices[target]
            src_only = [x for x in src_circ if x not in dst_circ]
            dst_only = [x for x in dst_circ if x not in src_circ]
            if len(src_only) == 2 and len(dst_only) == 1:
                kind = "merge"
            elif len(src_only) == 1 and len(dst_only) == 2:
                kind = "split"
            else:
                raise ConsistencyError("resolution change is not elementary")
            edges.append((c, bits, target, sign, src_only, dst_only))
    return edges


def _transfer_labels(cube, bits, target, labels, src_only, dst_only, backward):
    """Map generator labels across an edge; returns list of (labels', coeff)."""
    src_circles = cube.vertices[bits]
    dst_circles = cube.vertices[target]
    # positions of circles in canonical order; free circles appended last
    src_pos = {c: i for i, c in enumerate(src_circles)}
    dst_pos = {c: i for i, c in enumerate(dst_circles)}
    nfree = cube.free_circles

    def build_dst(assign):
        out = [None] * (len(dst_circles) + nfree)
        for circle, value in assign.items():
            out[dst_pos[circle]] = value
        # untouched circles carry over
        for circle in dst_circles:
            if out[dst_pos[circle]] is None:
                out[dst_pos[circle]] = labels[src_pos[circle]]
        for j in range(nfree):
            out[len(dst_circles) + j] = labels[len(src_circles) + j]
        return tuple(out)

    if not backward:
        if len(src_only) == 2:  # merge: 11 -> 1, 1X/X1 -> X, XX -> 0
            a = labels[src_pos[src_only[0]]]
            b = labels[src_pos[src_only[1]]]
            if a == 0 and b == 0:
                return []
            return [(build_dst({dst_only[0]: 1 if (a == 1 and b == 1) else 0}), 1)]
        # split: 1 -> 1X + X1, X -> XX
        a = labels[src_pos[src_only[0]]]
        c1, c2 = dst_only
        if a == 1:
            return [
                (build_dst({c1: 1, c2: 0}), 1),
                (build_dst({c1: 0, c2: 1}), 1),
            ]
        return [(build_dst({c1: 0, c2: 0}), 1)]
    # backward map: reversed cobordism on the reversed edge target->source
    if len(src_only) == 2:  # forward merged, backward splits
        a = labels[dst_pos[dst_only[0]]]
        c1, c2 = src_only
        src_pos_full = {c: i for i, c in enumerate(src_circles)}

        def build_src(assign):
            out = [None] * (len(src_circles) + nfree)
            for circle, value in assign.items():
                out[src_pos_full[circle]] = value
            for circle in src_circles:
                if out[src_pos_full[circle]] is None:
                    out[src_pos_full[circle]] = labels[dst_pos[circle]]
            for j in range(nfree):
                out[len(src_circles) + j] = labels[len(dst_circles) + j]
            return tuple(out)

        if a == 1:
            return [
                (build_src({c1: 1, c2: 0}), 1),
                (build_src({c1: 0, c2: 1}), 1),
            ]
        return [(build_src({c1: 0, c2: 0}), 1)]
    # forward split, backward merges
    a = labels[dst_pos[dst_only[0]]]
    b = labels[dst_pos[dst_only[1]]]
    src_pos_full = {c: i for i, c in enumerate(src_circles)}

    def build_src(assign):
        out = [None] * (len(src_circles) + nfree)
        for circle, value in assign.items():
            out[src_pos_full[circle]] = value
        for circle in src_circles:
            if out[src_pos_full[circle]] is None:
                out[src_pos_full[circle]] = labels[dst_pos[circle]]
        for j in range(nfree):
            out[len(src_circles) + j] = labels[len(dst_circles) + j]
        return tuple(out)

    if a == 0 and b == 0:
        return []
    value = 1 if (a == 1 and b == 1) else 0
    return [(build_src({src_only[0]: value}), 1)]


@dataclass
class DeformedDifferential:
    """Forward + weighted backward maps; entries over the colour ring."""

    cube: CubeComplex
    ring_vars: tuple
    weights: list  # per crossing: signed colour difference
    signs: tuple  # the per-crossing signs making D^2 vanish
    matrix: SparseMatrix  # total endomorphism of the chain module

    def square_is_zero(self):
        return (self.matrix * self.matrix).is_zero()


def anomaly_matrices(cube, fw=None, backs=None):
    """Per crossing: d psi_c + psi_c d as integer sparse entry dicts.

    The cross terms of (d + sum w_c psi_c)^2 cancel pairwise for any
    per-crossing scalars, so the square equals the weighted sum of these
    anomalies; killing it is a sign choice per bichromatic crossing.
    """
    if fw is None:
        fw = forward_entries(cube)
    if backs is None:
        backs = backward_entries(cube)
    size = cube.total_rank()
    d = SparseMatrix(size, size, {k: Fraction(v) for k, v in fw.items()})
    out = {}
    for c, back in backs.items():
        psi = SparseMatrix(size, size, {k: Fraction(v) for k, v in back.items()})
        anom = d * psi + psi * d
        out[c] = {k: v for k, v in anom.entries.items() if v}
    return out


def solve_deformation_signs(cube, differences, anomalies=None):
    """Signs sigma_c in {+1,-1} with sum_c sigma_c w_c anomaly_c = 0.

    ``differences`` lists the raw colour differences (Fraction or
    MultiPoly).  Monochromatic crossings are unconstrained; the scan over
    the bichromatic ones starts at the crossing-sign assignment, which is
    the common case.  Raises ConsistencyError when no assignment works.
    """
    active = [c for c, w in enumerate(differences) if w]
    if not active:
        return tuple(1 for _ in differences)
    if anomalies is None:
        anomalies = anomaly_matrices(cube)
    first_guess = tuple(cube.signs[c] for c in active)
    seen = {first_guess}
    candidates = [first_guess]
    for bits in product((1, -1), repeat=len(active)):
        if bits not in seen:
            candidates.append(bits)
    for bits in candidates:
        total = {}
        for c, s in zip(active, bits):
            w = differences[c] * s
            for key, coeff in anomalies[c].items():
                add = w * coeff
                prev = total.get(key)
                value = add if prev is None else prev + add
                if value:
                    total[key] = value
                else:
                    total.pop(key, None)
        if not total:
            signs = [1] * len(differences)
            for c, s in zip(active, bits):
                signs[c] = s
            return tuple(signs)
    raise ConsistencyError(
        "no sign assignment makes the deformed differential square to zero"
    )


def forward_entries(cube):
    """Sparse {(dst, src): +-1} of the undeformed differential."""
    entries = {}
    for (c, bits, target, sign, src_only, dst_only) in cube.edges:
        for src_labels in _labels_at(cube, bits):
            i = cube.index[(bits, src_labels)]
            for out_labels, coeff in _transfer_labels(
                cube, bits, target, src_labels, src_only, dst_only, backward=False
            ):
                j = cube.index[(target, out_labels)]
                entries[(j, i)] = entries.get((j, i), 0) + sign * coeff
    return {k: v for k, v in entries.items() if v}


def backward_entries(cube):
    """Per crossing: sparse {(dst, src): +-1} of the reversed cobordism."""
    per_crossing = {c: {} for c in range(cube.n)}
    for (c, bits, target, sign, src_only, dst_only) in cube.edges:
        acc = per_crossing[c]
        for dst_labels in _labels_at(cube, target):
            i = cube.index[(target, dst_labels)]
            for out_labels, coeff in _transfer_labels(
                cube, bits, target, dst_labels, src_only, dst_only, backward=True
            ):
                j = cube.index[(bits, out_labels)]
                acc[(j, i)] = acc.get((j, i), 0) + sign * coeff
    return {c: {k: v for k, v in acc.items() if v} for c, acc in per_crossing.items()}


def _labels_at(cube, bits):
    k = len(cube.vertices[bits]) + cube.free_circles
    return product((1, 0), repeat=k)


def build_cube(diagram):
    """Spec operation: the cube complex of an m=2 diagram."""
    cube = cube_from_diagram(diagram)
    # d^2 = 0 sanity over the rationals
    d = SparseMatrix(
        cube.total_rank(), cube.total_rank(),
        {k: Fraction(v) for k, v in forward_entries(cube).items()},
    )
    if not (d * d).is_zero():
        raise ConsistencyError("undeformed cube differential does not square to zero")
    return cube


def crossing_weights(cube, colours, ring=None):
    """Signed colour differences per crossing, with signs solved for D^2 = 0.

    The raw difference is w_over - w_under; the combinatorial complex needs
    a per-crossing sign on top (the geometric family fixes it implicitly;
    here it is pinned by the vanishing of the weighted anomaly sum, which
    the crossing signs themselves almost always realize).
    """

    def value(comp):
        v = colours[comp]
        if isinstance(v, (int, Fraction)):
            if ring:
                return MultiPoly.constant(ring, v)
            return Fraction(v)
        return MultiPoly.variable(ring, v)

    differences = []
    for (over_c, under_c) in cube.crossing_components:
        differences.append(value(over_c) - value(under_c))
    signs = solve_deformation_signs(cube, differences)
    return [w * s for w, s in zip(differences, signs)], signs


def deformed_differential(cube, colours):
    """Spec operation: D = d + sum_c sigma_c (w_over - w_under) psi_c.

    ``colours`` maps component index -> Fraction or symbolic variable name;
    symbolic names become generators of Q[w_1..w_r].
    """
    if set(colours) != set(range(cube.n_components)):
        raise DomainError("colour assignment must cover all components")
    symbolic = [v for v in colours.values() if not isinstance(v, (int, Fraction))]
    ring = colour_ring(cube.n_components) if symbolic else None
    weights, signs = crossing_weights(cube, colours, ring)

    size = cube.total_rank()
    entries = {}
    for key, coeff in forward_entries(cube).items():
        entries[key] = (
            MultiPoly.constant(ring, coeff) if ring else Fraction(coeff)
        )
    for c, back in backward_entries(cube).items():
        w = weights[c]
        if not w:
            continue
        for key, coeff in back.items():
            add = w * coeff
            prev = entries.get(key)
            entries[key] = add if prev is None else prev + add
    entries = {k: v for k, v in entries.items() if v}
    matrix = SparseMatrix(size, size, entries)
    diff = DeformedDifferential(
        cube=cube,
        ring_vars=ring or (),
        weights=weights,
        signs=signs,
        matrix=matrix,
    )
    if not diff.square_is_zero():
        raise ConsistencyError(
            "deformed differential does not square to zero; sign convention bug"
        )
    return diff
