"""Data model for coloured, labeled tangle words.

A slice object records the endpoint data read across a horizontal cut:
endpoint labels (an upward strand of intrinsic label k shows k, a downward
one shows m-k), orientations, and an opaque colour id per strand.  Words are
lists of generators read bottom to top; validation threads the slice through
every generator.

Crossing kinds are keyed by the orientation pattern at the bottom of the
crossing; all plain kinds share one chirality (over-strand from bottom-left)
and the *inv kinds are their reversals:

    x1: (up, up)     x2: (up, down)    x3: (down, up)    x4: (down, down)
    positive crossings: x2, x3, x1inv, x4inv; negative: x1, x4, x2inv, x3inv.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

from .errors import MoveError, NotClosedError, TangleError

UP = 1
DOWN = -1

PLAIN_KINDS = ("x1", "x2", "x3", "x4")
INV_KINDS = ("x1inv", "x2inv", "x3inv", "x4inv")
CROSSING_KINDS = PLAIN_KINDS + INV_KINDS

# bottom orientation pattern per crossing kind
KIND_PATTERN = {
    "x1": (UP, UP),
    "x2": (UP, DOWN),
    "x3": (DOWN, UP),
    "x4": (DOWN, DOWN),
    "x1inv": (UP, UP),
    "x2inv": (DOWN, UP),
    "x3inv": (UP, DOWN),
    "x4inv": (DOWN, DOWN),
}

POSITIVE_KINDS = {"x2", "x3", "x1inv", "x4inv"}


def crossing_sign(kind):
    return 1 if kind in POSITIVE_KINDS else -1


def is_inverse_kind(kind):
    return kind.endswith("inv")


def inverse_kind(kind):
    """The generator kind that composes with ``kind`` to the identity."""
    return kind[:-3] if is_inverse_kind(kind) else kind + "inv"


def kind_for_pattern(pattern, positive):
    """Crossing kind with the given bottom orientation pattern and sign."""
    for kind, pat in KIND_PATTERN.items():
        if pat == pattern and (crossing_sign(kind) > 0) == positive:
            return kind
    raise TangleError(f"no crossing kind for pattern {pattern}")


@dataclass(frozen=True)
class SliceObject:
    m: int
    labels: tuple = ()
    colours: tuple = ()
    orients: tuple = ()

    def __post_init__(self):
        if self.m < 2:
            raise TangleError(f"ambient rank m={self.m} must be >= 2")
        n = len(self.labels)
        if len(self.colours) != n or len(self.orients) != n:
            raise TangleError("labels, colours, orientations must have equal length")
        for k in self.labels:
            if not 1 <= k <= self.m - 1:
                raise TangleError(f"label {k} outside 1..{self.m - 1}")

    def __len__(self):
        return len(self.labels)

    def intrinsic_label(self, i):
        """Label carried by the strand itself (m-k for a downward strand)."""
        k = self.labels[i]
        return k if self.orients[i] == UP else self.m - k

    def swap(self, i):
        def sw(t):
            lst = list(t)
            lst[i], lst[i + 1] = lst[i + 1], lst[i]
            return tuple(lst)

        return SliceObject(self.m, sw(self.labels), sw(self.colours), sw(self.orients))

    def drop_pair(self, i):
        def dp(t):
            return t[:i] + t[i + 2 :]

        return SliceObject(self.m, dp(self.labels), dp(self.colours), dp(self.orients))

    def insert_pair(self, i, labels, colours, orients):
        def ins(t, pair):
            return t[:i] + tuple(pair) + t[i:]

        return SliceObject(
            self.m,
            ins(self.labels, labels),
            ins(self.colours, colours),
            ins(self.orients, orients),
        )


@dataclass(frozen=True)
class Generator:
    """One elementary tangle slice: a crossing, cap, or cup.

    Cup generators carry the data of the arc they create: the endpoint label
    of the left leg, its orientation, and an optional colour id.
    """

    kind: str
    pos: int
    label: int = 1
    colour: object = None
    orient: int = UP

    def width_in(self):
        return {"cap": 2, "cup": 0}.get(self.kind, 2)

    def width_out(self):
        return {"cap": 0, "cup": 2}.get(self.kind, 2)

    def shift(self):
        return self.width_out() - self.width_in()


def apply_generator(obj, gen, index=None):
    """Slice object above ``gen`` applied to ``obj``; raises TangleError."""
    i = gen.pos
    if gen.kind in CROSSING_KINDS:
        if not 0 <= i <= len(obj) - 2:
            raise TangleError(f"crossing position {i} out of range", index)
        pattern = (obj.orients[i], obj.orients[i + 1])
        if pattern != KIND_PATTERN[gen.kind]:
            raise TangleError(
                f"{gen.kind} needs orientation pattern {KIND_PATTERN[gen.kind]},"
                f" slice has {pattern}",
                index,
            )
        return obj.swap(i)
    if gen.kind == "cap":
        if not 0 <= i <= len(obj) - 2:
            raise TangleError(f"cap position {i} out of range", index)
        if obj.labels[i] + obj.labels[i + 1] != obj.m:
            raise TangleError(
                f"cap needs labels summing to m={obj.m}, got "
                f"({obj.labels[i]},{obj.labels[i + 1]})",
                index,
            )
        if obj.colours[i] != obj.colours[i + 1]:
            raise TangleError(
                f"cap needs equal colours, got "
                f"({obj.colours[i]},{obj.colours[i + 1]})",
                index,
            )
        if obj.orients[i] == obj.orients[i + 1]:
            raise TangleError("cap needs opposite orientations", index)
        return obj.drop_pair(i)
    if gen.kind == "cup":
        if not 0 <= i <= len(obj):
            raise TangleError(f"cup position {i} out of range", index)
        a = gen.label
        if not 1 <= a <= obj.m - 1:
            raise TangleError(f"cup label {a} outside 1..{obj.m - 1}", index)
        return obj.insert_pair(
            i,
            (a, obj.m - a),
            (gen.colour, gen.colour),
            (gen.orient, -gen.orient),
        )
    raise TangleError(f"unknown generator kind {gen.kind!r}", index)


@dataclass(frozen=True)
class TangleWord:
    domain: SliceObject
    gens: tuple = ()

    def slices(self):
        """All intermediate slice objects, domain first; validates."""
        out = [self.domain]
        for idx, gen in enumerate(self.gens):
            out.append(apply_generator(out[-1], gen, idx))
        return out

    @property
    def codomain(self):
        return self.slices()[-1]

    def is_closed(self):
        return len(self.domain) == 0 and len(self.codomain) == 0


def validate_word(word):
    """Validate a word, returning its slice list; raises on the first bad gen."""
    return word.slices()


# -- component tracing --------------------------------------------------------


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


@dataclass
class CrossingInfo:
    """Static data of one crossing discovered while tracing a word."""

    word_index: int
    kind: str
    sign: int
    over_component: int
    under_component: int
    intrinsic_labels: tuple


@dataclass
class Trace:
    n_components: int
    component_of_segment: dict
    crossings: list
    component_labels: dict
    component_colour_ids: dict


def trace_word(word):
    """Trace strand segments through a word.

    Returns a :class:`Trace` with the component partition, one record per
    crossing (sign, over/under components), the intrinsic label of each
    component and the colour ids collected from cups.
    """
    slices = word.slices()
    uf = _UnionFind()
    fresh = iter(range(10 ** 9))
    ids = []
    for i in range(len(word.domain)):
        seg = next(fresh)
        uf.add(seg)
        ids.append(seg)
    seg_meta = {}
    for i, seg in enumerate(ids):
        seg_meta[seg] = (word.domain.intrinsic_label(i), word.domain.colours[i])

    crossings = []
    for idx, gen in enumerate(word.gens):
        obj = slices[idx]
        i = gen.pos
        if gen.kind in CROSSING_KINDS:
            over_pos = i if not is_inverse_kind(gen.kind) else i + 1
            under_pos = i + 1 if not is_inverse_kind(gen.kind) else i
            crossings.append(
                CrossingInfo(
                    word_index=idx,
                    kind=gen.kind,
                    sign=crossing_sign(gen.kind),
                    over_component=ids[over_pos],
                    under_component=ids[under_pos],
                    intrinsic_labels=(
                        obj.intrinsic_label(i),
                        obj.intrinsic_label(i + 1),
                    ),
                )
            )
            ids[i], ids[i + 1] = ids[i + 1], ids[i]
        elif gen.kind == "cap":
            uf.union(ids[i], ids[i + 1])
            del ids[i : i + 2]
        elif gen.kind == "cup":
            sa, sb = next(fresh), next(fresh)
            uf.add(sa)
            uf.add(sb)
            uf.union(sa, sb)
            above = slices[idx + 1]
            seg_meta[sa] = (above.intrinsic_label(i), gen.colour)
            seg_meta[sb] = (above.intrinsic_label(i + 1), gen.colour)
            ids[i:i] = [sa, sb]

    roots = sorted({uf.find(s) for s in uf.parent})
    comp_index = {r: n for n, r in enumerate(roots)}
    comp_of = {s: comp_index[uf.find(s)] for s in uf.parent}

    component_labels = {}
    component_colour_ids = {}
    for seg, (label, colour) in seg_meta.items():
        c = comp_of[seg]
        if c in component_labels and component_labels[c] != label:
            raise TangleError(
                f"component {c} carries conflicting labels "
                f"{component_labels[c]} and {label}"
            )
        component_labels[c] = label
        if colour is not None:
            prev = component_colour_ids.get(c)
            if prev is not None and prev != colour:
                raise TangleError(
                    f"component {c} carries conflicting colour ids {prev} and {colour}"
                )
            component_colour_ids[c] = colour

    for rec in crossings:
        rec.over_component = comp_of[rec.over_component]
        rec.under_component = comp_of[rec.under_component]
    return Trace(
        n_components=len(roots),
        component_of_segment=comp_of,
        crossings=crossings,
        component_labels=component_labels,
        component_colour_ids=component_colour_ids,
    )


@dataclass
class LinkDiagram:
    """A closed, validated tangle word with its component structure."""

    word: TangleWord
    trace: Trace = None
    colour_values: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.word.is_closed():
            raise NotClosedError("link diagram needs a closed word")
        if self.trace is None:
            self.trace = trace_word(self.word)
        if self.trace.n_components < 1 and self.word.gens:
            raise TangleError("closed diagram must have at least one component")

    @property
    def m(self):
        return self.word.domain.m

    @property
    def n_components(self):
        return self.trace.n_components

    def with_colours(self, values):
        """Assign colour values (rationals or symbols) per component index."""
        values = dict(values)
        if set(values) != set(range(self.n_components)):
            raise TangleError(
                f"colour assignment must cover components 0..{self.n_components - 1}"
            )
        return LinkDiagram(self.word, self.trace, values)

    def coloured_word(self):
        """The word with every cup carrying its component's colour value.

        Colour values become the slice colour ids, so colour-sensitive moves
        (colour passing) can read them off the word alone.
        """
        # replay the id assignment of trace_word (closed word: cups only)
        comp_of = self.trace.component_of_segment
        fresh = iter(range(10 ** 9))
        ids = []
        new_gens = []
        for gen in self.word.gens:
            if gen.kind == "cup":
                sa, sb = next(fresh), next(fresh)
                comp = comp_of[sa]
                value = self.colour_values.get(comp, comp)
                new_gens.append(replace(gen, colour=value))
                ids[gen.pos : gen.pos] = [sa, sb]
            else:
                if gen.kind == "cap":
                    del ids[gen.pos : gen.pos + 2]
                elif gen.kind in CROSSING_KINDS:
                    ids[gen.pos], ids[gen.pos + 1] = ids[gen.pos + 1], ids[gen.pos]
                new_gens.append(gen)
        word = TangleWord(self.word.domain, tuple(new_gens))
        validate_word(word)
        return word


def trace_components(diagram):
    """Component partition and count of a closed diagram."""
    return diagram.trace.component_of_segment, diagram.trace.n_components


def writhe_by_label(diagram):
    """d_k = (#positive - #negative) crossings between two k-labeled strands."""
    d = {}
    for rec in diagram.trace.crossings:
        a, b = rec.intrinsic_labels
        if a == b:
            d[a] = d.get(a, 0) + rec.sign
    return d


# -- moves --------------------------------------------------------------------

COLOUR_PASS_PARTNER = {
    "x1": "x1",
    "x4": "x4",
    "x2": "x3",
    "x3": "x2",
    "x1inv": "x1inv",
    "x4inv": "x4inv",
    "x2inv": "x3inv",
    "x3inv": "x2inv",
}


def _rebuild(word, gens):
    new = TangleWord(word.domain, tuple(gens))
    validate_word(new)
    return new


def _gens(word):
    return list(word.gens)


def apply_move(word, move, loc, **params):
    """Apply a named rewriting move at word position ``loc``.

    Moves: R0 / R0_insert, R1 / R1_insert, R2 / R2_insert, R3, HX, CP /
    CP_insert.  Raises MoveError if the pattern does not match.
    """
    handlers = {
        "R0": _move_r0,
        "R0_insert": _move_r0_insert,
        "R1": _move_r1,
        "R1_insert": _move_r1_insert,
        "R2": _move_r2,
        "R2_insert": _move_r2_insert,
        "R3": _move_r3,
        "HX": _move_hx,
        "CP": _move_cp,
        "CP_insert": _move_cp_insert,
    }
    if move not in handlers:
        raise MoveError(f"unknown move {move!r}")
    try:
        return handlers[move](word, loc, **params)
    except TangleError as exc:
        raise MoveError(f"{move} at {loc} leaves an invalid word: {exc}") from exc


def _move_r0(word, loc):
    gens = _gens(word)
    if loc + 1 >= len(gens):
        raise MoveError("R0 needs two generators")
    g, h = gens[loc], gens[loc + 1]
    if g.kind != "cup" or h.kind != "cap":
        raise MoveError("R0 pattern is cup then cap")
    if not (h.pos == g.pos - 1 or h.pos == g.pos + 1):
        raise MoveError("cap must hit one leg of the cup")
    del gens[loc : loc + 2]
    return _rebuild(word, gens)


def _move_r0_insert(word, loc, slot, side="left"):
    """Insert a zig-zag through strand ``slot`` of the slice at ``loc``."""
    slices = word.slices()
    obj = slices[loc]
    if not 0 <= slot < len(obj):
        raise MoveError(f"no strand {slot} at word position {loc}")
    gens = _gens(word)
    if side == "left":
        # cup at slot, cap at slot+1: reroutes the strand through a zig-zag
        cup = Generator(
            "cup",
            slot,
            label=obj.m - obj.labels[slot],
            colour=obj.colours[slot],
            orient=obj.orients[slot],
        )
        cap = Generator("cap", slot + 1)
    else:
        cup = Generator(
            "cup",
            slot + 1,
            label=obj.labels[slot],
            colour=obj.colours[slot],
            orient=-obj.orients[slot],
        )
        cap = Generator("cap", slot)
    gens[loc:loc] = [cup, cap]
    return _rebuild(word, gens)


def _move_r1(word, loc):
    gens = _gens(word)
    if loc + 1 >= len(gens):
        raise MoveError("R1 needs two generators")
    g, h = gens[loc], gens[loc + 1]
    if g.kind not in ("x2", "x3", "x2inv", "x3inv") or h.kind != "cap":
        raise MoveError("R1 pattern is an antiparallel crossing then its cap")
    if h.pos != g.pos:
        raise MoveError("cap must sit on the crossing")
    del gens[loc]
    return _rebuild(word, gens)


def _move_r1_insert(word, loc, positive=True):
    gens = _gens(word)
    if loc >= len(gens) or gens[loc].kind != "cap":
        raise MoveError("R1_insert needs a cap at the location")
    cap = gens[loc]
    slices = word.slices()
    obj = slices[loc]
    pattern = (obj.orients[cap.pos], obj.orients[cap.pos + 1])
    kind = kind_for_pattern(pattern, positive)
    if kind not in ("x2", "x3", "x2inv", "x3inv"):
        raise MoveError("cap strands are not antiparallel")
    gens[loc:loc] = [Generator(kind, cap.pos)]
    return _rebuild(word, gens)


def _move_r2(word, loc):
    gens = _gens(word)
    if loc + 1 >= len(gens):
        raise MoveError("R2 needs two generators")
    g, h = gens[loc], gens[loc + 1]
    if (
        g.kind not in CROSSING_KINDS
        or h.kind != inverse_kind(g.kind)
        or h.pos != g.pos
    ):
        raise MoveError("R2 pattern is a crossing then its inverse")
    del gens[loc : loc + 2]
    return _rebuild(word, gens)


def _move_r2_insert(word, loc, slot, positive=True):
    slices = word.slices()
    obj = slices[loc]
    if not 0 <= slot <= len(obj) - 2:
        raise MoveError(f"no adjacent strand pair at {slot}")
    pattern = (obj.orients[slot], obj.orients[slot + 1])
    kind = kind_for_pattern(pattern, positive)
    gens = _gens(word)
    gens[loc:loc] = [Generator(kind, slot), Generator(inverse_kind(kind), slot)]
    return _rebuild(word, gens)


def _move_r3(word, loc):
    gens = _gens(word)
    if loc + 2 >= len(gens):
        raise MoveError("R3 needs three generators")
    g1, g2, g3 = gens[loc], gens[loc + 1], gens[loc + 2]
    kinds_ok = all(g.kind in CROSSING_KINDS for g in (g1, g2, g3))
    same_chirality = len({is_inverse_kind(g.kind) for g in (g1, g2, g3)}) == 1
    if not (kinds_ok and same_chirality):
        raise MoveError("R3 needs three crossings of one chirality")
    i = g1.pos
    if not (g3.pos == i and abs(g2.pos - i) == 1):
        raise MoveError("R3 needs positions i, i±1, i")
    j = g2.pos
    # t_a^i t_b^j t_c^i = t_c^j t_b^i t_a^j with kinds re-read from orientations
    slices = word.slices()
    obj = slices[loc]
    new = [replace(g1, pos=j), replace(g2, pos=i), replace(g3, pos=j)]
    # kinds must be re-derived: orientation patterns move with the strands
    out = []
    cur = obj
    for g, sign in zip(new, [crossing_sign(g3.kind), crossing_sign(g2.kind), crossing_sign(g1.kind)]):
        pattern = (cur.orients[g.pos], cur.orients[g.pos + 1])
        inv = is_inverse_kind(g1.kind)
        kind = kind_for_pattern(pattern, sign > 0)
        out.append(Generator(kind, g.pos))
        cur = cur.swap(g.pos)
    gens[loc : loc + 3] = out
    return _rebuild(word, gens)


def _move_hx(word, loc):
    """Exchange the heights of two adjacent generators with disjoint support."""
    gens = _gens(word)
    if loc + 1 >= len(gens):
        raise MoveError("HX needs two generators")
    g, h = gens[loc], gens[loc + 1]
    if h.pos + h.width_in() <= g.pos:
        gens[loc], gens[loc + 1] = h, replace(g, pos=g.pos + h.shift())
    elif h.pos >= g.pos + g.width_out():
        gens[loc], gens[loc + 1] = replace(h, pos=h.pos - g.shift()), g
    else:
        raise MoveError("generators interact; heights cannot be exchanged")
    return _rebuild(word, gens)


def _colours_at(word, loc, pos):
    obj = word.slices()[loc]
    return obj.colours[pos], obj.colours[pos + 1]


def _move_cp(word, loc):
    gens = _gens(word)
    if loc + 1 >= len(gens):
        raise MoveError("CP needs two generators")
    g, h = gens[loc], gens[loc + 1]
    if (
        g.kind not in CROSSING_KINDS
        or h.pos != g.pos
        or h.kind != COLOUR_PASS_PARTNER[g.kind]
    ):
        raise MoveError("CP pattern is a crossing followed by its same-chirality twin")
    ca, cb = _colours_at(word, loc, g.pos)
    if ca == cb:
        raise MoveError("colour-passing needs distinct colours")
    del gens[loc : loc + 2]
    return _rebuild(word, gens)


def _move_cp_insert(word, loc, slot, positive=True):
    slices = word.slices()
    obj = slices[loc]
    if not 0 <= slot <= len(obj) - 2:
        raise MoveError(f"no adjacent strand pair at {slot}")
    if obj.colours[slot] == obj.colours[slot + 1]:
        raise MoveError("colour-passing needs distinct colours")
    pattern = (obj.orients[slot], obj.orients[slot + 1])
    kind = kind_for_pattern(pattern, positive)
    partner = COLOUR_PASS_PARTNER[kind]
    gens = _gens(word)
    gens[loc:loc] = [Generator(kind, slot), Generator(partner, slot)]
    return _rebuild(word, gens)


# -- randomized rewriting ------------------------------------------------------


def enumerate_moves(word, include_inserts=True, allow_colour_pass=True):
    """All (move, loc, params) applicable to ``word``."""
    moves = []
    gens = word.gens
    slices = word.slices()
    for loc in range(len(gens)):
        for move in ("R0", "R1", "R2"):
            try:
                apply_move(word, move, loc)
                moves.append((move, loc, {}))
            except MoveError:
                pass
        if allow_colour_pass:
            try:
                apply_move(word, "CP", loc)
                moves.append(("CP", loc, {}))
            except MoveError:
                pass
        for move in ("R3", "HX"):
            try:
                apply_move(word, move, loc)
                moves.append((move, loc, {}))
            except MoveError:
                pass
    if include_inserts:
        for loc in range(len(gens) + 1):
            obj = slices[loc]
            for slot in range(len(obj)):
                for side in ("left", "right"):
                    moves.append(("R0_insert", loc, {"slot": slot, "side": side}))
            for slot in range(len(obj) - 1):
                for positive in (True, False):
                    moves.append(("R2_insert", loc, {"slot": slot, "positive": positive}))
                    if allow_colour_pass and obj.colours[slot] != obj.colours[slot + 1]:
                        moves.append(("CP_insert", loc, {"slot": slot, "positive": positive}))
        for loc, gen in enumerate(gens):
            if gen.kind == "cap":
                obj = slices[loc]
                pattern = (obj.orients[gen.pos], obj.orients[gen.pos + 1])
                if UP in pattern and DOWN in pattern:
                    for positive in (True, False):
                        moves.append(("R1_insert", loc, {"positive": positive}))
    return moves


def random_rewrite(word, steps, rng=None, allow_colour_pass=True, max_gens=40):
    """Apply ``steps`` random applicable moves, bounding word growth."""
    rng = rng or random.Random(0)
    current = word
    for _ in range(steps):
        include_inserts = len(current.gens) < max_gens
        options = enumerate_moves(
            current, include_inserts=include_inserts, allow_colour_pass=allow_colour_pass
        )
        if not options:
            break
        move, loc, params = rng.choice(options)
        try:
            current = apply_move(current, move, loc, **params)
        except MoveError:
            continue
    return current
