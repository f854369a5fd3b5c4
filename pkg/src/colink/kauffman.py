"""Independent bracket-style oracle for unreduced Jones polynomials.

Works directly on a PD code with its own circle tracing and orientation
reconstruction; shares nothing with the tangle evaluator.  State sum:

    J(D) = (-1)^(n-) q^(n+ - 2 n-) sum_v (-q)^|v| (q + 1/q)^(circles(v))

where the 0-smoothing of a positive crossing X(a,b,c,d) joins (a,d),(b,c)
and the 1-smoothing joins (a,b),(c,d), roles swapped for negative crossings.
"""

from __future__ import annotations

from itertools import product

from .errors import DomainError
from .laurent import LaurentPoly


class PDCode:
    """A planar diagram code: list of crossings X(a,b,c,d).

    Convention: edges are numbered consecutively along each oriented
    component; a is the incoming under-edge, the tuple is read
    counterclockwise.  The over-strand enters at d and leaves at b when
    b follows d in the edge numbering of its component, otherwise it runs
    b to d.
    """

    def __init__(self, crossings):
        self.crossings = [tuple(c) for c in crossings]
        for c in self.crossings:
            if len(c) != 4:
                raise DomainError(f"PD crossing {c} is not a 4-tuple")
        self.edges = sorted({e for c in self.crossings for e in c})
        counts = {}
        for c in self.crossings:
            for e in c:
                counts[e] = counts.get(e, 0) + 1
        for e, n in counts.items():
            if n != 2:
                raise DomainError(f"edge {e} appears {n} times, expected 2")
        self._components = None
        self._successor = None

    # -- orientation reconstruction ------------------------------------

    def successor_map(self):
        """edge -> next edge along the orientation.

        Edges are numbered consecutively along each oriented component, so
        the successor of e is e+1 cyclically within its component; the
        under-strand transitions a -> c of every crossing must agree, which
        validates the numbering.
        """
        if self._successor is not None:
            return self._successor
        succ = {}
        for fs in set(self.component_partition().values()):
            cycle = sorted(fs)
            lo, n = cycle[0], len(cycle)
            if cycle != list(range(lo, lo + n)):
                raise DomainError(
                    f"component edges {cycle} are not numbered consecutively"
                )
            for e in cycle:
                succ[e] = e + 1 if e + 1 in fs else lo
        for (a, b, c, d) in self.crossings:
            if succ[a] != c:
                raise DomainError(
                    f"crossing X{(a, b, c, d)}: under strand {a}->{c} "
                    "violates the edge numbering"
                )
        self._successor = succ
        return succ

    def component_partition(self):
        """edge -> frozenset of edges in its link component."""
        if self._components is not None:
            return self._components
        parent = {e: e for e in self.edges}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for (a, b, c, d) in self.crossings:
            union(a, c)
            union(b, d)
        groups = {}
        for e in self.edges:
            groups.setdefault(find(e), []).append(e)
        self._components = {}
        for group in groups.values():
            fs = frozenset(group)
            for e in group:
                self._components[e] = fs
        return self._components

    def n_components(self):
        return len({fs for fs in self.component_partition().values()})

    def component_index(self):
        """edge -> component number, components ordered by least edge."""
        groups = sorted({fs for fs in self.component_partition().values()}, key=min)
        return {e: i for i, fs in enumerate(groups) for e in fs}

    def signs(self):
        """Crossing signs: positive when the over strand runs d -> b.

        The over direction is fixed by matching heads and tails: slot a
        consumes an edge head, slot c produces a tail, and each edge has
        exactly one head and one tail occurrence.  Constraint propagation
        settles the over slots; the successor map breaks residual ties.
        """
        succ = self.successor_map()
        occurrences = {}
        for i, quad in enumerate(self.crossings):
            for slot, e in enumerate(quad):
                occurrences.setdefault(e, []).append((i, slot))
        role = {}  # (crossing, slot) -> 'head' | 'tail'
        for i, quad in enumerate(self.crossings):
            role[(i, 0)] = "head"
            role[(i, 2)] = "tail"
        changed = True
        while changed:
            changed = False
            for e, occs in occurrences.items():
                (o1, o2) = occs
                r1, r2 = role.get(o1), role.get(o2)
                if r1 and not r2:
                    role[o2] = "tail" if r1 == "head" else "head"
                    changed = True
                elif r2 and not r1:
                    role[o1] = "tail" if r2 == "head" else "head"
                    changed = True
            for i, quad in enumerate(self.crossings):
                r1, r3 = role.get((i, 1)), role.get((i, 3))
                if r1 and not r3:
                    role[(i, 3)] = "tail" if r1 == "head" else "head"
                    changed = True
                elif r3 and not r1:
                    role[(i, 1)] = "tail" if r3 == "head" else "head"
                    changed = True
        out = []
        for i, (a, b, c, d) in enumerate(self.crossings):
            r3 = role.get((i, 3))
            if r3 is None:
                r3 = "head" if succ.get(d) == b else "tail"
            out.append(1 if r3 == "head" else -1)
        return out

    def writhe(self):
        return sum(self.signs())

    def crossing_components(self):
        """(over_component, under_component) per crossing."""
        idx = self.component_index()
        return [(idx[b], idx[a]) for (a, b, c, d) in self.crossings]


def _circles(crossings, state):
    """Number of circles after smoothing each crossing by state bits.

    Bit 0 joins (a,b) and (c,d); bit 1 joins (a,d) and (b,c).  The 0-side
    is the Khovanov 0-resolution regardless of the crossing sign (the sign
    enters the invariant only through the n+/n- normalization).
    """
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent.setdefault(x, x)
        parent.setdefault(y, y)
        parent[find(x)] = find(y)

    for (a, b, c, d), bit in zip(crossings, state):
        if bit == 0:
            union(a, b)
            union(c, d)
        else:
            union(a, d)
            union(b, c)
    return len({find(x) for x in parent})


def kauffman_unreduced_jones(pd):
    """Unreduced Jones polynomial of a PD code by direct state sum."""
    if isinstance(pd, (list, tuple)):
        pd = PDCode(pd)
    if not pd.crossings:
        raise DomainError("state sum needs at least one crossing; handle "
                          "crossingless diagrams by circle count")
    signs = pd.signs()
    n_plus = sum(1 for s in signs if s > 0)
    n_minus = len(signs) - n_plus
    delta = LaurentPoly({1: 1, -1: 1})
    total = LaurentPoly.zero()
    for state in product((0, 1), repeat=len(pd.crossings)):
        height = sum(state)
        c = _circles(pd.crossings, state)
        total = total + LaurentPoly({height: (-1) ** height}) * delta ** c
    shift = LaurentPoly.q_power(n_plus - 2 * n_minus, (-1) ** n_minus)
    return shift * total
