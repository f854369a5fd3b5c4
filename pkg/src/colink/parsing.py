"""Slice-word text format and PD-code conversion.

Slice-word grammar (one generator per line, 1-based positions):

    m=2
    labels=1,1          # optional (open tangles); omitted for closed words
    colours=0,1         # optional per-component colour table
    cup@1 k=1 o=u
    x1inv@1
    cap@1

PD codes: lines ``X a b c d`` (or ``X(a,b,c,d)``), edges numbered along each
oriented component; converted to a Morse word by a backtracking sweep.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, TangleError
from .kauffman import PDCode
from .tangles import (
    CROSSING_KINDS,
    DOWN,
    UP,
    Generator,
    KIND_PATTERN,
    LinkDiagram,
    SliceObject,
    TangleWord,
    is_inverse_kind,
    validate_word,
)

_PLAIN_FOR = {pat: k for k, pat in KIND_PATTERN.items() if not k.endswith("inv")}
_INV_FOR = {pat: k for k, pat in KIND_PATTERN.items() if k.endswith("inv")}


# -- slice-word text ------------------------------------------------------------


def parse_slice_word(text):
    """Parse the slice-word grammar into a LinkDiagram or open TangleWord."""
    m = None
    labels = ()
    colour_table = None
    gens = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for piece in line.split(";"):
            piece = piece.strip()
            if not piece:
                continue
            if piece.startswith("m="):
                m = int(piece[2:])
            elif piece.startswith("labels="):
                body = piece[len("labels="):].strip()
                labels = tuple(int(x) for x in body.split(",")) if body else ()
            elif piece.startswith("colours="):
                body = piece[len("colours="):].strip()
                colour_table = [_parse_colour(x) for x in body.split(",")] if body else []
            else:
                gens.append(_parse_generator(piece))
    if m is None:
        raise DomainError("slice word needs an m=<int> header")
    if labels:
        raise DomainError("open tangle words are parsed with parse_tangle_word")
    domain = SliceObject(m)
    word = TangleWord(domain, tuple(gens))
    validate_word(word)
    diagram = LinkDiagram(word)
    if colour_table is not None:
        if len(colour_table) != diagram.n_components:
            raise TangleError(
                f"colour table has {len(colour_table)} entries for "
                f"{diagram.n_components} components"
            )
        diagram = diagram.with_colours(dict(enumerate(colour_table)))
    return diagram


def _parse_colour(token):
    token = token.strip()
    try:
        return Fraction(token)
    except ValueError:
        return token  # symbolic colour name


def _parse_generator(piece):
    parts = piece.split()
    head = parts[0]
    if "@" not in head:
        raise DomainError(f"malformed generator {piece!r}")
    kind, pos_s = head.split("@", 1)
    pos = int(pos_s) - 1
    if kind in ("cup", "cap"):
        label = 1
        orient = UP
        for opt in parts[1:]:
            if opt.startswith("k="):
                label = int(opt[2:])
            elif opt.startswith("o="):
                orient = UP if opt[2:] == "u" else DOWN
            else:
                raise DomainError(f"unknown option {opt!r}")
        if kind == "cup":
            return Generator("cup", pos, label=label, orient=orient)
        return Generator("cap", pos)
    if kind in CROSSING_KINDS:
        return Generator(kind, pos)
    raise DomainError(f"unknown generator kind {kind!r}")


def serialize_word(word, colour_table=None):
    """Canonical slice-word text for a word (inverse of parse_slice_word)."""
    lines = [f"m={word.domain.m}"]
    if colour_table is not None:
        lines.append("colours=" + ",".join(str(c) for c in colour_table))
    for gen in word.gens:
        if gen.kind == "cup":
            o = "u" if gen.orient == UP else "d"
            lines.append(f"cup@{gen.pos + 1} k={gen.label} o={o}")
        elif gen.kind == "cap":
            lines.append(f"cap@{gen.pos + 1}")
        else:
            lines.append(f"{gen.kind}@{gen.pos + 1}")
    return "\n".join(lines) + "\n"


# -- word -> PD ------------------------------------------------------------------


def word_to_pd(diagram):
    """PD code of a closed m=2-style diagram (every component must cross).

    Arcs between crossings become PD edges, numbered consecutively along
    each oriented component.
    """
    word = diagram.word
    slices = word.slices()
    arc = 0
    open_arcs = []  # per slice position: (arc id, flow) flow=UP means strand oriented up here
    crossings = []  # (kind, [SW, SE, NE, NW] arc ids)
    joins = {}  # arc -> arc gluings from caps/cups

    def fresh():
        nonlocal arc
        arc += 1
        return arc

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

    for gen, obj in zip(word.gens, slices):
        i = gen.pos
        if gen.kind == "cup":
            a1, a2 = fresh(), fresh()
            union(a1, a2)
            open_arcs[i:i] = [
                (a1, gen.orient),
                (a2, -gen.orient),
            ]
        elif gen.kind == "cap":
            (a1, _), (a2, _) = open_arcs[i], open_arcs[i + 1]
            union(a1, a2)
            del open_arcs[i : i + 2]
        else:
            (sw, fsw), (se, fse) = open_arcs[i], open_arcs[i + 1]
            nw, ne = fresh(), fresh()
            crossings.append((gen.kind, [sw, se, ne, nw], (fsw, fse)))
            # strands physically cross: SW continues to NE, SE to NW
            open_arcs[i] = (nw, fse)
            open_arcs[i + 1] = (ne, fsw)
    if open_arcs:
        raise TangleError("word is not closed")

    # each union-find class of arcs = one PD edge
    edge_of = {}
    for x in list(parent):
        edge_of[x] = find(x)
    for _, quad, _ in crossings:
        for a in quad:
            edge_of.setdefault(a, find(a) if a in parent else a)

    # orient each edge: walk segments, determine successor edges through crossings
    succ = {}
    for kind, (sw, se, ne, nw), (fsw, fse) in crossings:
        esw, ese = edge_of[sw], edge_of[se]
        ene, enw = edge_of[ne], edge_of[nw]
        # SW-NE is one strand, SE-NW the other
        if fsw == UP:
            succ[esw] = ene
        else:
            succ[ene] = esw
        if fse == UP:
            succ[ese] = enw
        else:
            succ[enw] = ese
    edges = sorted(set(edge_of.values()))
    if len(succ) != len(edges):
        raise TangleError(
            "diagram has a crossingless component; it has no PD code"
        )
    # number edges along orientation, components consecutive
    number = {}
    counter = 1
    for start in edges:
        if start in number:
            continue
        e = start
        while e not in number:
            number[e] = counter
            counter += 1
            e = succ[e]
    renumber = {}
    # renumber so each component starts at the smallest available integer and
    # follows succ consecutively (already guaranteed by the walk above)
    pd = []
    for kind, (sw, se, ne, nw), (fsw, fse) in crossings:
        esw, ese = number[edge_of[sw]], number[edge_of[se]]
        ene, enw = number[edge_of[ne]], number[edge_of[nw]]
        if not is_inverse_kind(kind):
            # over strand on SW-NE, under on SE-NW; tuple is ccw from under-in
            if fse == UP:
                quad = (ese, ene, enw, esw)  # ccw from SE
            else:
                quad = (enw, esw, ese, ene)  # ccw from NW
        else:
            # over on SE-NW, under on SW-NE
            if fsw == UP:
                quad = (esw, ese, ene, enw)  # ccw from SW
            else:
                quad = (ene, enw, esw, ese)  # ccw from NE
        pd.append(quad)
    return PDCode(pd)


# -- PD -> word (Morse sweep with backtracking) ----------------------------------


def _crossing_roles(pd):
    """Per crossing: slot roles in/out, with both options when ambiguous.

    Slots 0..3 are the tuple positions (a, b, c, d); slot 0 is always IN,
    slot 2 always OUT; the over pair (1, 3) is resolved by the successor
    map, branching when the over strand is a two-edge cycle.
    """
    succ = pd.successor_map()
    roles = []
    for (a, b, c, d) in pd.crossings:
        options = []
        if succ.get(d) == b:
            options.append({0: True, 2: False, 3: True, 1: False})
        if succ.get(b) == d:
            options.append({0: True, 2: False, 1: True, 3: False})
        if not options:
            raise DomainError(f"cannot orient over strand of X{(a, b, c, d)}")
        roles.append(options)
    return roles


# placements: compass (SW, SE, NE, NW) as rotations of the ccw tuple slots
_ROTATIONS = [(0, 1, 2, 3), (1, 2, 3, 0), (2, 3, 0, 1), (3, 0, 1, 2)]


def pd_to_word(pd, m=2, colour_table=None, budget=200000):
    """Convert a PD code to a closed slice word (labels all 1).

    Backtracking over Morse events: cap completed edges greedily, place
    crossings whose lower ends are open and adjacent, cup edges next to
    where they will be used.
    """
    if isinstance(pd, (list, tuple)):
        pd = PDCode(pd)
    n = len(pd.crossings)
    role_options = _crossing_roles(pd)
    placements = []  # per crossing: (slot_at_SW, .., slot_at_NW, over_sw_ne, roles)
    for idx, quad in enumerate(pd.crossings):
        opts = []
        for roles in role_options[idx]:
            for rot in _ROTATIONS:
                ssw, sse, sne, snw = rot
                over_sw_ne = ssw in (1, 3)  # under diagonal is slots {0, 2}
                opts.append((rot, over_sw_ne, roles))
        placements.append(opts)

    steps = [0]
    piece_counter = [0]
    incidences = {}
    for idx, quad in enumerate(pd.crossings):
        for e in quad:
            incidences.setdefault(e, []).append(idx)
    neighbours = {}
    for idx, quad in enumerate(pd.crossings):
        for e in quad:
            neighbours.setdefault(e, set()).update(quad)
    max_word = 2 * n + 3 * len(pd.edges) + 4
    dead = set()

    def state_key(open_ends, used):
        # canonicalize piece ids by first occurrence
        remap = {}
        key = []
        for (e, f, piece) in open_ends:
            if piece not in remap:
                remap[piece] = len(remap)
            key.append((e, f, remap[piece]))
        return (tuple(key), used)

    def search(open_ends, used, word):
        # open_ends: tuple of (edge, flow, piece); flow UP = oriented upward
        steps[0] += 1
        if steps[0] > budget or len(word) > max_word:
            return None
        if all(used) and not open_ends:
            return word
        key = state_key(open_ends, used)
        if key in dead:
            return None
        # feasibility: every open end must still be consumable, either by an
        # unplaced crossing of its edge or by capping with an opposite end
        counts = {}
        for (e, f, _) in open_ends:
            counts[(e, f)] = counts.get((e, f), 0) + 1
        for (e, f, _) in open_ends:
            if any(not used[i] for i in incidences[e]):
                continue
            if counts.get((e, -f), 0) == 0:
                dead.add(key)
                return None
        # 1. cap an adjacent same-edge pair with opposite flows (distinct
        # pieces only: capping one piece to itself makes a free circle)
        for i in range(len(open_ends) - 1):
            (e1, f1, p1), (e2, f2, p2) = open_ends[i], open_ends[i + 1]
            if e1 == e2 and f1 != f2 and p1 != p2:
                merged = tuple(
                    (e, f, p1 if p == p2 else p) for (e, f, p) in
                    open_ends[:i] + open_ends[i + 2 :]
                )
                res = search(merged, used, word + [Generator("cap", i)])
                if res is not None:
                    return res
        # 2. place a crossing on two adjacent open ends
        for idx in range(n):
            if used[idx]:
                continue
            quad = pd.crossings[idx]
            for rot, over_sw_ne, roles in placements[idx]:
                ssw, sse, sne, snw = rot
                want = (
                    (quad[ssw], UP if roles[ssw] else DOWN),
                    (quad[sse], UP if roles[sse] else DOWN),
                )
                for i in range(len(open_ends) - 1):
                    if open_ends[i][:2] == want[0] and open_ends[i + 1][:2] == want[1]:
                        pattern = (want[0][1], want[1][1])
                        table = _PLAIN_FOR if over_sw_ne else _INV_FOR
                        kind = table[pattern]
                        piece_counter[0] += 2
                        out_nw = (quad[snw], DOWN if roles[snw] else UP,
                                  piece_counter[0] - 1)
                        out_ne = (quad[sne], DOWN if roles[sne] else UP,
                                  piece_counter[0])
                        new_used = used[:idx] + (True,) + used[idx + 1 :]
                        res = search(
                            open_ends[:i] + (out_nw, out_ne) + open_ends[i + 2 :],
                            new_used,
                            word + [Generator(kind, i)],
                        )
                        if res is not None:
                            return res
        # 3. cup an edge, goal-directed: either the first cup of an empty
        # slice, or one that completes the bottom pair of an unused
        # crossing next to an already-open end
        open_count = {}
        for (e, _, _) in open_ends:
            open_count[e] = open_count.get(e, 0) + 1

        def cup_moves():
            seen = set()
            if not open_ends:
                for idx in range(n):
                    if used[idx]:
                        continue
                    quad = pd.crossings[idx]
                    for rot, over_sw_ne, roles in placements[idx]:
                        ssw = rot[0]
                        e = quad[ssw]
                        f = UP if roles[ssw] else DOWN
                        if (e, f, 0) not in seen:
                            seen.add((e, f, 0))
                            yield (0, e, f)
                return
            for idx in range(n):
                if used[idx]:
                    continue
                quad = pd.crossings[idx]
                for rot, over_sw_ne, roles in placements[idx]:
                    ssw, sse = rot[0], rot[1]
                    w0 = (quad[ssw], UP if roles[ssw] else DOWN)
                    w1 = (quad[sse], UP if roles[sse] else DOWN)
                    for i, end in enumerate(open_ends):
                        if end[:2] == w0 and open_count.get(w1[0], 0) == 0:
                            # new cup supplies w1 on its left leg, right of i
                            move = (i + 1, w1[0], w1[1])
                            if move not in seen:
                                seen.add(move)
                                yield move
                        if end[:2] == w1 and open_count.get(w0[0], 0) == 0:
                            # new cup supplies w0 on its right leg, left of i
                            move = (i, w0[0], -w0[1])
                            if move not in seen:
                                seen.add(move)
                                yield move

        for pos, e, left_flow in cup_moves():
            if all(used[i] for i in incidences[e]):
                continue
            piece_counter[0] += 1
            piece = piece_counter[0]
            res = search(
                open_ends[:pos]
                + ((e, left_flow, piece), (e, -left_flow, piece))
                + open_ends[pos:],
                used,
                word
                + [
                    Generator(
                        "cup",
                        pos,
                        label=1 if left_flow == UP else m - 1,
                        orient=left_flow,
                    )
                ],
            )
            if res is not None:
                return res
        dead.add(key)
        return None

    gens = search((), tuple([False] * n), [])
    if gens is None:
        raise DomainError("no Morse presentation found within budget")
    word = TangleWord(SliceObject(m), tuple(gens))
    validate_word(word)
    diagram = LinkDiagram(word)
    if colour_table is not None:
        diagram = diagram.with_colours(dict(enumerate(colour_table)))
    return diagram


def parse_diagram(text, m=2, colour_table=None):
    """Parse slice-word text or PD-code text into a LinkDiagram."""
    stripped = text.strip()
    if stripped.startswith("X") or stripped.startswith("PD"):
        crossings = []
        for line in stripped.splitlines():
            line = line.strip().rstrip(",")
            if not line or line.startswith("PD"):
                continue
            body = line[1:].strip().strip("()[]")
            sep = "," if "," in body else None
            crossings.append(tuple(int(x) for x in body.replace(",", " ").split()))
        return pd_to_word(PDCode(crossings), m=m, colour_table=colour_table)
    return parse_slice_word(text)
