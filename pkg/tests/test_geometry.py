import pytest

from colink.errors import BudgetExceededError, DomainError
from colink.geometry import (
    LatticeConfig,
    TowerSpec,
    available_towers,
    count_points,
    load_tower,
    poincare_Y,
    tower_dimension,
    tsym,
)
from colink.laurent import LaurentPoly


def test_poincare_examples():
    assert poincare_Y(2, (1,)) == LaurentPoly({0: 1, 1: 1})
    two = LaurentPoly({0: 1, 1: 1})
    assert poincare_Y(2, (1, 1)) == two * two
    three = LaurentPoly({0: 1, 1: 1, 2: 1})
    assert poincare_Y(3, (1, 2)) == three * three


def test_poincare_degree_is_dimension():
    for m in (2, 3, 4):
        for labels in [(1,), (1, 1), (m - 1,), (1, m - 1)]:
            expected = sum(k * (m - k) for k in labels)
            assert poincare_Y(m, labels).max_degree() == expected


def test_single_grassmannian_tower():
    spec = TowerSpec("g", [(tsym("k"), tsym("m"))])
    assert tower_dimension(spec) == tsym("k*m-k^2")


def test_bundled_towers_match_claims():
    names = available_towers()
    assert "stratum_closure" in names
    for name in names:
        tower = load_tower(name)
        assert tower.matches_claim(), name


def test_complement_codimensions():
    base = load_tower("stratum_closure").dimension()
    threes = {"complement_double_jump"}
    fours = {
        "complement_intersection_jump",
        "complement_kernel_jump",
        "stratum_side_double_jump",
    }
    for name in threes:
        assert base - load_tower(name).dimension() == tsym(3)
    for name in fours:
        assert base - load_tower(name).dimension() == tsym(4)


def test_count_points_examples():
    assert count_points(LatticeConfig(2, 2, (1,))) == 3
    assert count_points(LatticeConfig(2, 2, (1, 1))) == 9
    assert count_points(LatticeConfig(3, 2, (1, 1))) == 16


def test_counts_match_poincare_in_budget():
    configs = [(p, 2, labels) for p in (2, 3, 5)
               for labels in [(1,), (1, 1), (1, 1, 1)]]
    configs += [(p, 3, labels) for p in (2, 3, 5)
                for labels in [(1,), (2,), (1, 2), (2, 1), (1, 1), (2, 2)]]
    for p, m, labels in configs:
        count = count_points(LatticeConfig(p, m, labels))
        assert count == poincare_Y(m, labels).evaluate(p), (p, m, labels)


def test_interpolation_degree_matches_dimension():
    # counts over p = 2, 3, 5 lie on the counting polynomial, whose degree
    # is the claimed dimension
    for m, labels in [(2, (1,)), (2, (1, 1)), (3, (1,)), (2, (1, 1, 1))]:
        poly = poincare_Y(m, labels)
        dim = sum(k * (m - k) for k in labels)
        assert poly.max_degree() == dim
        for p in (2, 3, 5):
            assert count_points(LatticeConfig(p, m, labels)) == poly.evaluate(p)


def test_budget_exceeded():
    with pytest.raises(BudgetExceededError):
        count_points(LatticeConfig(5, 3, (2, 2), budget=5))


def test_bad_field_size():
    with pytest.raises(DomainError):
        LatticeConfig(4, 2, (1,))
