from fractions import Fraction

import pytest

from colink import corpus
from colink.cube import build_cube
from colink.errors import DegenerateDirectionError
from colink.evaluator import evaluate_link
from colink.family import (
    component_kh_dimensions,
    family_line_analysis,
    graded_euler_characteristic,
    homology_at_point,
    total_dimension,
    undeformed_homology,
)


def test_unknot_homology():
    cube = build_cube(corpus.unknot())
    for colour in (0, 1, Fraction(7, 3)):
        res = homology_at_point(cube, {0: colour})
        assert res["total"] == 2


def test_hopf_split_property():
    cube = build_cube(corpus.get("hopf_pos"))
    res = homology_at_point(cube, {0: Fraction(0), 1: Fraction(1)})
    assert res["total"] == 4


def test_trefoil_bigraded_matches_euler():
    d = corpus.trefoil()
    cube = build_cube(d)
    res = homology_at_point(cube, {0: Fraction(3)})
    assert res["bigraded"] is not None
    assert total_dimension(res["bigraded"]) == 4
    assert graded_euler_characteristic(res["bigraded"]) == evaluate_link(d)


def test_split_union_degenerates_at_e1():
    cube = build_cube(corpus.unlink(2))
    ss = family_line_analysis(cube, [0, 1])
    assert ss.betti_total == 4
    assert ss.torsion == []
    assert ss.page_of_collapse == 1


def test_hopf_line_no_torsion():
    cube = build_cube(corpus.get("hopf_pos"))
    ss = family_line_analysis(cube, [0, 1])
    assert ss.e1_total == 4
    assert ss.betti_total == 4
    assert ss.torsion == []


def test_whitehead_line_torsion():
    d = corpus.whitehead()
    cube = build_cube(d)
    ss = family_line_analysis(cube, [0, 1])
    assert ss.betti_total == 4
    assert ss.torsion, "expected nonzero torsion"
    assert ss.e1_total == 4 + 2 * len(ss.torsion)
    assert ss.dimension_identity_holds()
    assert ss.page_of_collapse >= 2


def test_direction_must_be_distinct():
    cube = build_cube(corpus.get("hopf_pos"))
    with pytest.raises(DegenerateDirectionError):
        family_line_analysis(cube, [1, 1])


def test_free_rank_matches_two_specializations():
    # free rank of the line module equals the homology dimension at the
    # fibres x = 1 and x = 2
    for name in ("hopf_pos", "solomon", "whitehead"):
        d = corpus.get(name)
        cube = build_cube(d)
        direction = [Fraction(i) for i in range(d.n_components)]
        ss = family_line_analysis(cube, direction)
        for x_value in (1, 2):
            colours = {i: v * x_value for i, v in enumerate(direction)}
            res = homology_at_point(cube, colours)
            assert res["total"] == ss.betti_total, (name, x_value)


def test_component_dimensions():
    assert component_kh_dimensions(corpus.get("hopf_pos")) == [2, 2]
    assert sorted(component_kh_dimensions(corpus.get("trefoil_hopf_sum"))) == [2, 4]
    assert component_kh_dimensions(corpus.unlink(2)) == [2, 2]


def test_rank_inequality_on_corpus():
    for name in corpus.MULTI_COMPONENT:
        d = corpus.get(name)
        cube = build_cube(d)
        kh_total = total_dimension(undeformed_homology(cube))
        prod = 1
        for x in component_kh_dimensions(d):
            prod *= x
        assert prod <= kh_total, name
