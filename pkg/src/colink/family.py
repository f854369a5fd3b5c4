"""Homology of deformed complexes: point specializations and the x-line.

The deformed differential is q-homogeneous but only h-filtered; it splits
the chain module by h-parity.  Point homology works q-block by q-block over
the rationals; the line restriction substitutes w_i = v_i x, producing a
complex of graded free Q[x]-modules whose invariant-factor decomposition is
the spectral-sequence report: free summands survive to the generic fibre,
a torsion summand x^d is a differential dying on page d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cube import (
    backward_entries,
    crossing_weights,
    cube_from_diagram,
    forward_entries,
)
from .errors import ConsistencyError, DegenerateDirectionError, DomainError
from .homology import exact_rank, homology_at_position
from .multipoly import MultiPoly, X_RING
from .sparse import SparseMatrix


def undeformed_homology(cube):
    """Bigraded dimensions of the undeformed homology, {(h, q): dim}."""
    entries = forward_entries(cube)
    by_hq = cube.by_hq
    blocks = {}
    for (j, i), coeff in entries.items():
        bits_i, labels_i = cube.generators[i]
        key = (cube.h_of(bits_i), cube.q_of(bits_i, labels_i))
        blocks.setdefault(key, {})[(j, i)] = coeff
    dims = {}
    ranks = {}
    for key, block in blocks.items():
        h, q = key
        rows = cube.by_hq.get((h + 1, q), [])
        cols = cube.by_hq.get((h, q), [])
        row_pos = {g: n for n, g in enumerate(rows)}
        col_pos = {g: n for n, g in enumerate(cols)}
        matrix = SparseMatrix(
            len(rows), len(cols),
            {(row_pos[j], col_pos[i]): Fraction(v) for (j, i), v in block.items()},
        )
        ranks[key] = exact_rank(matrix)
    for (h, q), gens in cube.by_hq.items():
        dim = len(gens) - ranks.get((h, q), 0) - ranks.get((h - 1, q), 0)
        if dim:
            dims[(h, q)] = dim
    return dims


def total_dimension(dims):
    return sum(dims.values())


def graded_euler_characteristic(dims):
    """Sum of (-1)^h q^q dim as a LaurentPoly."""
    from .laurent import LaurentPoly

    total = LaurentPoly.zero()
    for (h, q), d in dims.items():
        total = total + LaurentPoly({q: ((-1) ** h) * d})
    return total


def _numeric_matrix(cube, colours):
    """Deformed differential with rational colours, as one sparse matrix."""
    weights, _ = crossing_weights(cube, {c: Fraction(v) for c, v in colours.items()})
    entries = {}
    for key, coeff in forward_entries(cube).items():
        entries[key] = entries.get(key, Fraction(0)) + Fraction(coeff)
    for c, back in backward_entries(cube).items():
        if not weights[c]:
            continue
        for key, coeff in back.items():
            entries[key] = entries.get(key, Fraction(0)) + weights[c] * coeff
    return {k: v for k, v in entries.items() if v}


def homology_at_point(cube, colours):
    """Exact homology dimensions of (C, D) at rational colour values.

    Substituting numbers for the colours collapses the q-grading (w has
    weight 2); what survives is the h-parity splitting.  The result maps
    out the total dimension and the dimensions of the two parity pieces;
    when all colours are equal the differential is the undeformed one and
    the honest bigraded table is included.
    """
    if set(colours) != set(range(cube.n_components)):
        raise DomainError("colour assignment must cover all components")
    values = {c: Fraction(v) for c, v in colours.items()}
    if len(set(values.values())) <= 1:
        dims = undeformed_homology(cube)
        by_parity = {}
        for (h, q), d in dims.items():
            by_parity[h % 2] = by_parity.get(h % 2, 0) + d
        return {
            "total": total_dimension(dims),
            "by_parity": by_parity,
            "bigraded": dims,
        }
    entries = _numeric_matrix(cube, values)
    blocks = {0: [], 1: []}
    for i, (bits, labels) in enumerate(cube.generators):
        blocks[cube.h_of(bits) % 2].append(i)
    pos = {}
    for p, gens in blocks.items():
        for n, g in enumerate(gens):
            pos[g] = (p, n)
    mats = {0: {}, 1: {}}
    for (j, i), v in entries.items():
        pi, ni = pos[i]
        pj, nj = pos[j]
        if pi == pj:
            raise ConsistencyError("deformed differential is not parity-reversing")
        mats[pi][(nj, ni)] = v
    ranks = {
        p: exact_rank(SparseMatrix(len(blocks[1 - p]), len(blocks[p]), mats[p]))
        for p in (0, 1)
    }
    by_parity = {}
    total = 0
    for p, gens in blocks.items():
        dim = len(gens) - ranks[p] - ranks[1 - p]
        if dim:
            by_parity[p] = dim
            total += dim
    return {"total": total, "by_parity": by_parity, "bigraded": None}


@dataclass
class SpectralSequenceReport:
    """Outcome of restricting the colour family to a line through 0."""

    e1: dict  # (h, q) -> dim of undeformed homology
    betti: list  # (h parity, internal q degree) of free summands
    torsion: list  # (h parity, internal q degree, exponent d)
    direction: tuple

    @property
    def e1_total(self):
        return sum(self.e1.values())

    @property
    def betti_total(self):
        return len(self.betti)

    def torsion_exponents(self):
        return sorted(d for (_, _, d) in self.torsion)

    @property
    def page_of_collapse(self):
        exps = self.torsion_exponents()
        return (exps[-1] + 1) if exps else 1

    def dimension_identity_holds(self):
        return self.betti_total + 2 * len(self.torsion) == self.e1_total


def family_line_analysis(cube, direction):
    """Restrict colours to w_i = v_i x and decompose over Q[x].

    ``direction`` lists one rational per component, pairwise distinct so
    the generic fibre splits into the component homologies.
    """
    direction = tuple(Fraction(v) for v in direction)
    if len(direction) != cube.n_components:
        raise DomainError("direction needs one entry per component")
    if len(set(direction)) != len(direction):
        raise DegenerateDirectionError("direction entries must be pairwise distinct")
    x = MultiPoly.variable(X_RING, "x")
    rational_weights, _ = crossing_weights(
        cube, {c: v for c, v in enumerate(direction)}
    )
    weights = [x * w for w in rational_weights]
    entries = {}
    for key, coeff in forward_entries(cube).items():
        entries[key] = MultiPoly.constant(X_RING, coeff)
    for c, back in backward_entries(cube).items():
        if weights[c].is_zero():
            continue
        for key, coeff in back.items():
            add = weights[c] * coeff
            prev = entries.get(key)
            entries[key] = add if prev is None else prev + add
    entries = {k: v for k, v in entries.items() if not (isinstance(v, MultiPoly) and v.is_zero())}

    blocks = {0: [], 1: []}
    for i, (bits, labels) in enumerate(cube.generators):
        blocks[cube.h_of(bits) % 2].append(i)
    pos = {}
    for p, gens in blocks.items():
        for n, g in enumerate(gens):
            pos[g] = (p, n)
    degrees = {
        p: [cube.q_of(*cube.generators[g]) for g in gens]
        for p, gens in blocks.items()
    }
    mats = {0: {}, 1: {}}  # parity p: matrix of D restricted to C_p -> C_{1-p}
    for (j, i), v in entries.items():
        pi, ni = pos[i]
        pj, nj = pos[j]
        if pi == pj:
            raise ConsistencyError("deformed differential is not parity-reversing")
        mats[pi][(nj, ni)] = v
    d_from = {
        p: SparseMatrix(len(blocks[1 - p]), len(blocks[p]), mats[p]) for p in (0, 1)
    }
    decomp_total = []
    for p in (0, 1):
        piece = homology_at_position(
            d_from[p], d_from[1 - p], degrees[p], h_label=p
        )
        decomp_total.append(piece)
    betti = sorted(decomp_total[0].betti + decomp_total[1].betti)
    torsion = sorted(decomp_total[0].torsion + decomp_total[1].torsion)
    report = SpectralSequenceReport(
        e1=undeformed_homology(cube),
        betti=betti,
        torsion=torsion,
        direction=direction,
    )
    return report


def component_subdiagrams(diagram):
    """PD cubes of the individual components (crossingless ones -> None)."""
    from .cube import cube_from_pd
    from .kauffman import PDCode

    out = []
    if diagram.trace.crossings:
        from .cube import word_to_pd_restricted

        pd = word_to_pd_restricted(diagram)
    else:
        pd = None
    crossed_comps = sorted(
        {r.over_component for r in diagram.trace.crossings}
        | {r.under_component for r in diagram.trace.crossings}
    )
    for comp in range(diagram.n_components):
        if pd is None or comp not in crossed_comps:
            out.append(None)
            continue
        sub = _component_pd(pd, crossed_comps.index(comp))
        out.append(sub)
    return out


def _component_pd(pd, comp_index):
    """Self-crossing PD of one component; None when it has no self-crossings."""
    idx = pd.component_index()
    keep = []
    removed_pass = {}
    for (a, b, c, d) in pd.crossings:
        if idx[a] == comp_index and idx[b] == comp_index:
            keep.append((a, b, c, d))
        else:
            if idx[a] == comp_index:
                removed_pass[a] = c  # strand passes straight under
            if idx[b] == comp_index:
                # over strand passes straight through
                succ = pd.successor_map()
                if succ[d] == b:
                    removed_pass[d] = b
                else:
                    removed_pass[b] = d
    if not keep:
        return None
    # contract passing edges: follow removed_pass chains
    def resolve(e):
        while e in removed_pass:
            e = removed_pass[e]
        return e

    contracted = [tuple(resolve(e) for e in quad) for quad in keep]
    # renumber along orientation
    from .kauffman import PDCode

    succ = pd.successor_map()

    def next_kept(e):
        nxt = succ[e]
        while True:
            present = any(nxt in quad for quad in contracted)
            if present:
                return nxt
            nxt = succ[nxt]

    edges = sorted({e for quad in contracted for e in quad})
    number = {}
    counter = 1
    for start in edges:
        if start in number:
            continue
        e = start
        while e not in number:
            number[e] = counter
            counter += 1
            e = next_kept(e)
    return PDCode([tuple(number[e] for e in quad) for quad in contracted])


def component_kh_dimensions(diagram):
    """Total undeformed homology dimension of each component on its own."""
    from .cube import cube_from_pd

    dims = []
    for sub in component_subdiagrams(diagram):
        if sub is None:
            dims.append(2)  # unknot
            continue
        cube = cube_from_pd(sub)
        dims.append(total_dimension(undeformed_homology(cube)))
    return dims
