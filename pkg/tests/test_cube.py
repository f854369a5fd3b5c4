from fractions import Fraction

import pytest

from colink import corpus
from colink.cube import (
    backward_entries,
    build_cube,
    cube_from_diagram,
    deformed_differential,
    forward_entries,
)
from colink.errors import ConsistencyError, DomainError
from colink.multipoly import MultiPoly
from colink.sparse import SparseMatrix


def test_unknot_cube():
    cube = build_cube(corpus.unknot())
    assert cube.n == 0
    assert cube.total_rank() == 2


def test_kinked_unknot_cube_vertex_ranks():
    cube = build_cube(corpus.unknot_kinked(positive=True))
    ranks = sorted(
        2 ** (len(circ) + cube.free_circles) for circ in cube.vertices.values()
    )
    assert ranks == [2, 4]
    assert cube.total_rank() == 6


def test_hopf_cube_circle_counts():
    cube = build_cube(corpus.hopf())
    counts = sorted(len(c) for c in cube.vertices.values())
    assert counts == [1, 1, 2, 2]


def test_forward_differential_squares_to_zero():
    for name in ("trefoil", "figure_eight", "whitehead"):
        cube = build_cube(corpus.get(name))
        size = cube.total_rank()
        d = SparseMatrix(
            size, size, {k: Fraction(v) for k, v in forward_entries(cube).items()}
        )
        assert (d * d).is_zero()


def test_deformed_symbolic_square_zero():
    for name in ("hopf_pos", "whitehead", "trefoil_hopf_sum"):
        d = corpus.get(name)
        cube = build_cube(d)
        colours = {i: f"w{i + 1}" for i in range(d.n_components)}
        diff = deformed_differential(cube, colours)
        assert diff.square_is_zero()


def test_knot_deformation_vanishes():
    d = corpus.trefoil()
    cube = build_cube(d)
    diff = deformed_differential(cube, {0: "w1"})
    for w in diff.weights:
        assert w.is_zero() if isinstance(w, MultiPoly) else w == 0


def test_equal_colours_reduce_to_forward():
    d = corpus.get("hopf_pos")
    cube = build_cube(d)
    diff = deformed_differential(cube, {0: Fraction(5), 1: Fraction(5)})
    fw = {k: Fraction(v) for k, v in forward_entries(cube).items()}
    assert diff.matrix == SparseMatrix(cube.total_rank(), cube.total_rank(), fw)


def test_colour_cover_required():
    d = corpus.get("hopf_pos")
    cube = build_cube(d)
    with pytest.raises(DomainError):
        deformed_differential(cube, {0: Fraction(1)})


def test_cube_needs_m2_labels_1():
    with pytest.raises(DomainError):
        cube_from_diagram(corpus.unknot(m=3, label=2))


def test_backward_maps_reverse_gradings():
    cube = build_cube(corpus.get("hopf_pos"))
    for c, back in backward_entries(cube).items():
        for (j, i), _ in back.items():
            bits_i, labels_i = cube.generators[i]
            bits_j, labels_j = cube.generators[j]
            assert cube.h_of(bits_j) == cube.h_of(bits_i) - 1
            assert cube.q_of(bits_j, labels_j) == cube.q_of(bits_i, labels_i) - 2
