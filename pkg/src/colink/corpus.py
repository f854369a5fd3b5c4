"""Bundled test diagrams: unknots, unlinks, Hopf, trefoil, figure-eight,
Whitehead and small connected sums, all with at most 7 crossings.

Knots and links are built as trace closures of braid words; nested cups
below, the braid in the middle (all strands upward), nested caps above.
"""

from __future__ import annotations

from .errors import DomainError
from .tangles import DOWN, UP, Generator, LinkDiagram, SliceObject, TangleWord


def braid_closure(m, braid, strands):
    """Trace closure of a braid word on the given number of strands.

    ``braid`` lists (position, positive) pairs with 1-based positions; all
    braid strands are upward, so positive crossings are x1inv and negative
    ones x1.
    """
    gens = []
    for i in range(strands):
        gens.append(Generator("cup", i, label=1, orient=UP))
    for pos, positive in braid:
        if not 1 <= pos <= strands - 1:
            raise DomainError(f"braid position {pos} out of range")
        gens.append(Generator("x1inv" if positive else "x1", pos - 1))
    for i in range(strands - 1, -1, -1):
        gens.append(Generator("cap", i))
    word = TangleWord(SliceObject(m), tuple(gens))
    return LinkDiagram(word)


def sigma(pos, power):
    """Braid letters sigma_pos^power as a list of (position, positive)."""
    return [(pos, power > 0)] * abs(power)


def unknot(m=2, label=1):
    gens = (Generator("cup", 0, label=label, orient=UP), Generator("cap", 0))
    return LinkDiagram(TangleWord(SliceObject(m), gens))


def unknot_kinked(m=2, positive=True):
    """Unknot with one curl (writhe +1 or -1)."""
    gens = (
        Generator("cup", 0, label=1, orient=UP),
        Generator("x2" if positive else "x3inv", 0),
        Generator("cap", 0),
    )
    return LinkDiagram(TangleWord(SliceObject(m), gens))


def unlink(n=2, m=2):
    gens = []
    for _ in range(n):
        gens.extend([Generator("cup", 0, label=1, orient=UP), Generator("cap", 0)])
    return LinkDiagram(TangleWord(SliceObject(m), tuple(gens)))


def hopf(positive=True, m=2):
    return braid_closure(m, sigma(1, 2 if positive else -2), 2)


def trefoil(positive=True, m=2):
    return braid_closure(m, sigma(1, 3 if positive else -3), 2)


def solomon(m=2):
    """The (2,4) torus link."""
    return braid_closure(m, sigma(1, 4), 2)


def figure_eight(m=2):
    return braid_closure(m, sigma(1, 1) + sigma(2, -1) + sigma(1, 1) + sigma(2, -1), 3)


def whitehead(m=2):
    return braid_closure(
        m, sigma(1, 1) + sigma(2, -1) + sigma(1, 1) + sigma(2, -1) + sigma(1, 1), 3
    )


def granny(m=2):
    return braid_closure(m, sigma(1, 3) + sigma(2, 3), 3)


def square_knot(m=2):
    return braid_closure(m, sigma(1, 3) + sigma(2, -3), 3)


def trefoil_hopf_sum(m=2):
    """Connected sum of a trefoil and a Hopf link (2 components, 5 crossings)."""
    return braid_closure(m, sigma(1, 3) + sigma(2, 2), 3)


CORPUS = {
    "unknot": unknot,
    "unknot_kink_pos": lambda: unknot_kinked(positive=True),
    "unknot_kink_neg": lambda: unknot_kinked(positive=False),
    "unlink2": unlink,
    "hopf_pos": hopf,
    "hopf_neg": lambda: hopf(positive=False),
    "solomon": solomon,
    "trefoil": trefoil,
    "trefoil_neg": lambda: trefoil(positive=False),
    "figure_eight": figure_eight,
    "whitehead": whitehead,
    "granny": granny,
    "square_knot": square_knot,
    "trefoil_hopf_sum": trefoil_hopf_sum,
}

# diagrams whose every component carries at least one crossing (PD exists)
PD_CORPUS = [
    "unknot_kink_pos",
    "unknot_kink_neg",
    "hopf_pos",
    "hopf_neg",
    "solomon",
    "trefoil",
    "trefoil_neg",
    "figure_eight",
    "whitehead",
    "granny",
    "square_knot",
    "trefoil_hopf_sum",
]

MULTI_COMPONENT = ["unlink2", "hopf_pos", "hopf_neg", "solomon", "whitehead",
                   "trefoil_hopf_sum"]


def get(name):
    if name not in CORPUS:
        raise DomainError(f"unknown corpus diagram {name!r}")
    return CORPUS[name]()
